#pragma once

#include <string>
#include <vector>

#include "lorentz/skew.hpp"

namespace lorentz::skew {

struct PlaneExit {
    IVec2 cell;       // cell entered (environment frame; the trace starts in cell 0)
    Vec2 crossing;    // crossing point in the entered cell's local frame
    CrossSectionPoint point;
    int collisions;
    double path_length;
};

struct PlaneTrace {
    std::vector<PlaneExit> exits;
    bool truncated = false;
    std::string truncation_reason;
};

/// Independent bookkeeping route for the same dynamics: simulate the billiard
/// across the fixed plane environment, reading each visited cell's state at
/// its own lattice site and accumulating displacements through polygon-edge
/// crossings. The k-th cell displacement must equal S_k of the skew product.
/// The first few visited cells are cross-checked against the windowed
/// scatterers_near materialization.
PlaneTrace full_plane_trace(const CrossSectionPoint& start, const ensemble::Environment& env, long n_exits,
                            const CrossSection& cs, const ExitOptions& opts = {});

}  // namespace lorentz::skew
