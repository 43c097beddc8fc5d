#include "lorentz/skew.hpp"

#include "lorentz/errors.hpp"
#include "lorentz/lattice.hpp"

namespace lorentz::skew {

namespace {

struct RawExit {
    ensemble::WallCrossing crossing;
    Vec2 velocity;
    int collisions;
    double path_length;
};

RawExit trace_to_wall(Ray ray, std::span<const Shape> shapes, const ensemble::Lattice& lat,
                      const ExitOptions& opts) {
    int collisions = 0;
    double path = 0;
    for (long bounce = 0; bounce < opts.max_bounces; ++bounce) {
        auto hit = billiard::first_intersection(ray, shapes, opts.billiard);
        auto wall = ensemble::first_wall_crossing(ray, lat, opts.billiard.min_advance, opts.corner_tol);
        if (!wall) throw EscapeError("trajectory failed to cross the cell boundary");
        if (hit && hit->distance < wall->t) {
            const Vec2 n = outward_normal_at(shapes[hit->scatterer], hit->point);
            ray = {hit->point, billiard::reflect(ray.direction, n)};
            path += hit->distance;
            ++collisions;
            continue;
        }
        path += wall->t;
        return {*wall, ray.direction, collisions, path};
    }
    throw EscapeError("bounce budget exhausted inside one cell");
}

// Re-base a wall crossing into C_0 and express it in cross-section
// coordinates. Shared by the exit chain and the full-plane oracle so both
// perform identical arithmetic.
std::pair<ExitEvent, WallState> finish_exit(const RawExit& raw, const CrossSection& cs,
                                            const ExitOptions& opts) {
    const ensemble::Lattice& lat = cs.lattice();
    const IVec2 direction = lat.edges()[raw.crossing.edge].neighbor;
    const Vec2 q1 = raw.crossing.point - lat.neighbor_offset(raw.crossing.edge);

    const int opposite = lat.direction_index(-direction);
    const auto& opp_edge = lat.edges()[opposite];
    const double u_len = (q1 - opp_edge.a).dot(opp_edge.tangent);
    const auto [segment, r] = cs.locate(opposite, u_len, opts.corner_tol);
    const double phi = cs.phi_of(segment, raw.velocity);

    ExitEvent ev{{segment, r, phi}, direction, raw.collisions, raw.path_length};
    WallState next{ev.exit, Ray{q1, raw.velocity}};
    return {ev, next};
}

}  // namespace

WallState make_wall_state(const CrossSection& cs, const CrossSectionPoint& x) {
    return {x, cs.point_to_ray(x)};
}

std::pair<ExitEvent, WallState> cell_exit_from(const WallState& state, std::span<const Shape> shapes,
                                               const CrossSection& cs, const ExitOptions& opts) {
    const RawExit raw = trace_to_wall(state.ray, shapes, cs.lattice(), opts);
    return finish_exit(raw, cs, opts);
}

ExitEvent cell_exit_map(const CrossSectionPoint& x, const ensemble::Omega& w, const ensemble::CellLaw& law,
                        const CrossSection& cs, const ExitOptions& opts) {
    const auto shapes = law.cell_shapes(w);
    return cell_exit_from(make_wall_state(cs, x), shapes, cs, opts).first;
}

SkewState make_skew_state(const CrossSection& cs, const CrossSectionPoint& x, ensemble::Environment env) {
    return {make_wall_state(cs, x), std::move(env)};
}

std::pair<SkewState, ExitEvent> skew_step(const SkewState& state, const CrossSection& cs,
                                          const ExitOptions& opts) {
    const auto shapes = state.env.law().cell_shapes(state.env.cell_state({0, 0}));
    auto [ev, wall] = cell_exit_from(state.wall, shapes, cs, opts);
    return {SkewState{wall, state.env.shifted(ev.direction)}, ev};
}

CocycleTrace cocycle(SkewState state, long n, const CrossSection& cs, const ExitOptions& opts) {
    CocycleTrace trace;
    trace.partial_sums.reserve(n + 1);
    trace.partial_sums.push_back({0, 0});
    IVec2 sum{0, 0};
    for (long k = 0; k < n; ++k) {
        try {
            auto [next, ev] = skew_step(state, cs, opts);
            state = std::move(next);
            sum = sum + ev.direction;
            trace.partial_sums.push_back(sum);
            trace.events.push_back(ev);
            if (!trace.first_return && sum.is_zero()) trace.first_return = k + 1;
        } catch (const TangencyError& e) {
            trace.truncated = true;
            trace.truncation_reason = e.what();
            break;
        } catch (const CornerCrossingError& e) {
            trace.truncated = true;
            trace.truncation_reason = e.what();
            break;
        }
    }
    return trace;
}

}  // namespace lorentz::skew
