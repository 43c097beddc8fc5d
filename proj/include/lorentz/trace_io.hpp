#pragma once

#include <ostream>

#include "lorentz/skew.hpp"

namespace lorentz::skew {

/// One record per exit event: step index, displacement direction as an
/// integer pair, global arc coordinate in J, angle, reflections inside the
/// cell, path length. Header line carries the schema version.
void write_trace_csv(std::ostream& out, const CocycleTrace& trace, const CrossSection& cs);
void write_trace_jsonl(std::ostream& out, const CocycleTrace& trace, const CrossSection& cs);

}  // namespace lorentz::skew
