#pragma once

#include <optional>
#include <span>
#include <string>

#include "lorentz/cell_law.hpp"
#include "lorentz/shapes.hpp"

namespace lorentz::billiard {

enum class Horizon { Finite, Infinite, Undecided };

struct CorridorReport {
    IVec2 direction;      // primitive lattice direction of the open corridor
    double spacing;       // projection period A / |B g|
    double width;         // open gap width
    double offset_lo;     // gap interval on the projection circle [0, spacing)
    double offset_hi;
};

struct BoundsCertificate {
    double k_min = 0, k_max = 0;
    double tau_min = 0, tau_max = 0;
    Horizon horizon = Horizon::Undecided;
    bool exact_curvature = false;
    bool tau_max_is_escape = false;  // a sampled flight escaped the window
    int n_samples = 0;
    std::optional<CorridorReport> corridor;
};

/// Certify bounds for the random law: exact curvature where the family
/// admits it, corridor detection on worst-case (deflated/inflated) shape
/// projections, free-path bounds by sampling over random realizations.
BoundsCertificate certify_bounds(const ensemble::LawPtr& law, int sample_budget, uint64_t seed);

/// Certify a concrete finite (windowed) configuration. Its horizon is
/// trivially infinite; free paths are sampled inside the window.
BoundsCertificate certify_bounds(std::span<const Shape> shapes, int sample_budget, uint64_t seed);

std::string certificate_to_string(const BoundsCertificate& cert);

}  // namespace lorentz::billiard
