#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lorentz/billiard.hpp"
#include "lorentz/cross_section.hpp"
#include "lorentz/environment.hpp"

namespace lorentz::skew {

struct ExitEvent {
    CrossSectionPoint exit;  // re-based into C_0
    IVec2 direction;         // element of G
    int collisions;
    double path_length;
};

struct ExitOptions {
    billiard::BilliardOptions billiard;
    double corner_tol = 1e-12;
    long max_bounces = 1000000;
};

/// Geometric state on the wall: canonical cross-section coordinates plus the
/// realized ray. The ray is what propagates; (segment, r, phi) are derived
/// views. Rebuilding the ray from the coordinates each step would inject a
/// rounding perturbation that the hyperbolic dynamics amplifies, so the exit
/// chain and the full-plane oracle could not agree to any tolerance.
struct WallState {
    CrossSectionPoint point;
    Ray ray;
};

WallState make_wall_state(const CrossSection& cs, const CrossSectionPoint& x);

/// One cell passage: trace from the wall through reflections inside the cell
/// until the trajectory crosses the cell boundary. Returns both the exit
/// event and the re-based wall state ready for the next cell.
std::pair<ExitEvent, WallState> cell_exit_from(const WallState& state, std::span<const Shape> shapes,
                                               const CrossSection& cs, const ExitOptions& opts = {});

/// Spec-facing form: reconstructs the ray from coordinates.
ExitEvent cell_exit_map(const CrossSectionPoint& x, const ensemble::Omega& w, const ensemble::CellLaw& law,
                        const CrossSection& cs, const ExitOptions& opts = {});

struct SkewState {
    WallState wall;
    ensemble::Environment env;
};

SkewState make_skew_state(const CrossSection& cs, const CrossSectionPoint& x, ensemble::Environment env);

/// F(x, lambda) = (R_{lambda_0} x, sigma_{e(x, lambda_0)} lambda).
std::pair<SkewState, ExitEvent> skew_step(const SkewState& state, const CrossSection& cs,
                                          const ExitOptions& opts = {});

struct CocycleTrace {
    std::vector<IVec2> partial_sums;  // S_0 = 0 .. S_n
    std::vector<ExitEvent> events;
    std::optional<long> first_return;  // smallest k >= 1 with S_k = 0
    bool truncated = false;
    std::string truncation_reason;
};

/// n steps of the skew product, accumulating the displacement cocycle.
/// Truncates at the first singular event with an explicit marker.
CocycleTrace cocycle(SkewState state, long n, const CrossSection& cs, const ExitOptions& opts = {});

}  // namespace lorentz::skew
