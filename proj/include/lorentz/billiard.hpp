#pragma once

#include <optional>
#include <span>

#include "lorentz/rng.hpp"
#include "lorentz/shapes.hpp"
#include "lorentz/types.hpp"

namespace lorentz::billiard {

/// Boundary coordinates of an outgoing line element: arc length r along the
/// scatterer (counterclockwise, origin at parameter angle 0) and angle
/// phi in (0, pi) measured from the tangent so that the velocity is
/// cos(phi) * tangent + sin(phi) * outward normal.
struct PhasePoint {
    int scatterer;
    double r;
    double phi;
};

struct BilliardOptions {
    double eps_tan = 1e-6;      // tangency tolerance on |v.n| at impact
    double min_advance = 1e-9;  // intersections closer than this are the departure point
};

Ray phase_to_ray(const PhasePoint& x, std::span<const Shape> shapes);

/// Inverse of phase_to_ray at a boundary point with an outgoing velocity.
PhasePoint ray_to_phase(int scatterer, const Vec2& point, const Vec2& outgoing, std::span<const Shape> shapes);

/// Specular reflection. Requires direction . normal < 0.
inline Vec2 reflect(const Vec2& direction, const Vec2& normal) {
    return direction - 2.0 * direction.dot(normal) * normal;
}

struct Hit {
    int scatterer;
    Vec2 point;
    double distance;
};

/// Strictly closest boundary intersection with positive distance, or nullopt.
/// Throws TangencyError when the closest intersection is grazing.
std::optional<Hit> first_intersection(const Ray& ray, std::span<const Shape> shapes,
                                      const BilliardOptions& opts = {});

struct MapResult {
    PhasePoint next;
    double tau;
    Vec2 impact;
};

/// The collision-to-collision map T. The shape list must contain every
/// scatterer within the horizon bound of x. Throws EscapeError if nothing is
/// hit, TangencyError on grazing impact.
MapResult billiard_map(const PhasePoint& x, std::span<const Shape> shapes, const BilliardOptions& opts = {});

/// Density of the invariant measure in (r, phi) coordinates.
inline double mu_density(const PhasePoint& x) { return std::sin(x.phi); }

/// Time reversal (r, phi) -> (r, pi - phi).
inline PhasePoint involution(const PhasePoint& x) { return {x.scatterer, x.r, kPi - x.phi}; }

/// mu-distributed point on the given scatterer.
PhasePoint sample_mu(int scatterer, std::span<const Shape> shapes, HashStream& rng);

}  // namespace lorentz::billiard
