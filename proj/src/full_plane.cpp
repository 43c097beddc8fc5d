#include "lorentz/full_plane.hpp"

#include <cmath>

#include "lorentz/errors.hpp"

namespace lorentz::skew {

namespace {

struct IVec2Hash {
    size_t operator()(IVec2 g) const {
        return static_cast<size_t>(mix64((static_cast<uint64_t>(static_cast<uint32_t>(g.x)) << 32) |
                                         static_cast<uint32_t>(g.y)));
    }
};

// The windowed materialization around `cell` must reproduce the cell's own
// shape list (up to re-basing noise): every cell_shapes entry has a window
// twin within tolerance.
void check_tiling_consistency(const ensemble::Environment& env, IVec2 cell,
                              const std::vector<Shape>& local_shapes) {
    const auto& lat = env.lattice();
    const Vec2 anchor = lat.to_plane(cell);
    const auto window =
        env.scatterers_near(AABox::around(anchor, lat.circumradius() + env.law().max_extent() + 0.1));
    for (const Shape& s : local_shapes) {
        bool found = false;
        for (const auto& p : window) {
            const Shape rebased = translated(p.shape, -anchor);
            if (rebased.index() != s.index()) continue;
            bool close = true;
            for (int d = 0; d < 4 && close; ++d) {
                const double ang = kPi * d / 4;
                const Vec2 u(std::cos(ang), std::sin(ang));
                if (std::abs(support(rebased, u) - support(s, u)) > 1e-12) close = false;
            }
            if (close) {
                found = true;
                break;
            }
        }
        if (!found)
            throw EscapeError("windowed tiling materialization disagrees with the cell's own shapes");
    }
}

}  // namespace

PlaneTrace full_plane_trace(const CrossSectionPoint& start, const ensemble::Environment& env, long n_exits,
                            const CrossSection& cs, const ExitOptions& opts) {
    PlaneTrace trace;
    trace.exits.reserve(n_exits);
    WallState state = make_wall_state(cs, start);
    IVec2 cell{0, 0};
    std::unordered_map<IVec2, std::vector<Shape>, IVec2Hash> shape_cache;
    long checked = 0;
    for (long k = 0; k < n_exits; ++k) {
        auto it = shape_cache.find(cell);
        if (it == shape_cache.end()) {
            auto shapes = env.law().cell_shapes(env.cell_state(cell));
            if (checked < 8) {
                check_tiling_consistency(env, cell, shapes);
                ++checked;
            }
            it = shape_cache.emplace(cell, std::move(shapes)).first;
        }
        try {
            auto [ev, wall] = cell_exit_from(state, it->second, cs, opts);
            cell = cell + ev.direction;
            state = wall;
            trace.exits.push_back({cell, wall.ray.origin, ev.exit, ev.collisions, ev.path_length});
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
