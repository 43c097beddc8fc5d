#pragma once

#include <vector>

#include "lorentz/toys.hpp"

namespace lorentz::toys {

struct LoopResult {
    bool found = false;
    int label = 0;               // the label carried by the whole loop
    std::vector<IVec2> loop;     // closed 4-connected cycle, winding once around the origin
};

/// Search the window [-radius, radius]^2 for a closed 4-connected cycle of
/// cells all carrying one label from `labels`, surrounding the origin. The
/// cycle is found as a shortest path in the winding-lifted grid graph, so a
/// positive result comes with the explicit loop. Loops must be mono-labeled:
/// a mixed {L,B,R} circuit does not block the rotator walk.
LoopResult blocking_loop_check(const RotatorEnv& env, const std::vector<int>& labels, int radius);

/// True when every cell of `cells` lies on the loop or in its interior.
bool contained_in_loop(const std::vector<IVec2>& loop, const std::vector<IVec2>& cells);

}  // namespace lorentz::toys
