#include "lorentz/billiard.hpp"

#include <limits>

#include "lorentz/errors.hpp"

namespace lorentz::billiard {

Ray phase_to_ray(const PhasePoint& x, std::span<const Shape> shapes) {
    const BoundaryPoint bp = boundary_point(shapes[x.scatterer], x.r);
    const Vec2 v = std::cos(x.phi) * bp.tangent + std::sin(x.phi) * bp.normal;
    return {bp.position, v};
}

PhasePoint ray_to_phase(int scatterer, const Vec2& point, const Vec2& outgoing, std::span<const Shape> shapes) {
    const double r = arc_of_point(shapes[scatterer], point);
    const BoundaryPoint bp = boundary_point(shapes[scatterer], r);
    const double phi = std::atan2(outgoing.dot(bp.normal), outgoing.dot(bp.tangent));
    return {scatterer, r, phi};
}

std::optional<Hit> first_intersection(const Ray& ray, std::span<const Shape> shapes, const BilliardOptions& opts) {
    double best = std::numeric_limits<double>::max();
    int best_idx = -1;
    for (size_t i = 0; i < shapes.size(); ++i) {
        if (auto s = ray_hit(shapes[i], ray, opts.min_advance); s && *s < best) {
            best = *s;
            best_idx = static_cast<int>(i);
        }
    }
    if (best_idx < 0) return std::nullopt;
    const Vec2 point = ray.origin + best * ray.direction;
    const Vec2 n = outward_normal_at(shapes[best_idx], point);
    if (std::abs(ray.direction.dot(n)) < opts.eps_tan)
        throw TangencyError("grazing impact, |v.n| below tolerance");
    return Hit{best_idx, point, best};
}

MapResult billiard_map(const PhasePoint& x, std::span<const Shape> shapes, const BilliardOptions& opts) {
    const Ray ray = phase_to_ray(x, shapes);
    auto hit = first_intersection(ray, shapes, opts);
    if (!hit) throw EscapeError("no collision within provided shapes");
    const Vec2 n = outward_normal_at(shapes[hit->scatterer], hit->point);
    const Vec2 v1 = reflect(ray.direction, n);
    return {ray_to_phase(hit->scatterer, hit->point, v1, shapes), hit->distance, hit->point};
}

PhasePoint sample_mu(int scatterer, std::span<const Shape> shapes, HashStream& rng) {
    const double L = perimeter(shapes[scatterer]);
    const double r = rng.uniform(0.0, L);
    const double phi = std::acos(1.0 - 2.0 * rng.next_unit());
    return {scatterer, r, phi};
}

}  // namespace lorentz::billiard
