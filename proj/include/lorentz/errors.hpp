#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

/// Grazing impact: |v.n| at the hit fell below the tangency tolerance. Such
/// trajectories are singular and get discarded by samplers.
struct TangencyError : std::runtime_error {
    explicit TangencyError(const std::string& what) : std::runtime_error(what) {}
};

/// No scatterer intersection within the supplied shapes: either the horizon
/// is infinite or the caller's shape window was too small.
struct EscapeError : std::runtime_error {
    explicit EscapeError(const std::string& what) : std::runtime_error(what) {}
};

/// Trajectory left a cell through a lattice-cell corner (or a cross-section
/// segment endpoint) within tolerance. Singular, discarded like tangencies.
struct CornerCrossingError : std::runtime_error {
    explicit CornerCrossingError(const std::string& what) : std::runtime_error(what) {}
};

/// A shape added by a finite modification intersects or touches a retained one.
struct OverlapError : std::runtime_error {
    explicit OverlapError(const std::string& what) : std::runtime_error(what) {}
};

/// More than the tolerated fraction of sampled traces hit a singularity;
/// points at a geometry or tolerance bug rather than bad luck.
struct ExcessiveSingularityError : std::runtime_error {
    explicit ExcessiveSingularityError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lorentz
