#include "lorentz/environment.hpp"

#include <algorithm>
#include <cmath>

#include "lorentz/errors.hpp"

namespace lorentz::ensemble {

namespace {

// Strict overlap of the (convex) cell polygon translated to anchor with an
// axis-aligned box: separating axis test over box axes and edge normals.
bool cell_overlaps_box(const Lattice& lat, const Vec2& anchor, const AABox& box) {
    const auto& verts = lat.vertices();
    auto project = [&](const Vec2& axis, double& lo, double& hi) {
        lo = std::numeric_limits<double>::max();
        hi = -lo;
        for (const Vec2& v : verts) {
            const double p = (anchor + v).dot(axis);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
    };
    auto box_proj = [&](const Vec2& axis, double& lo, double& hi) {
        const Vec2 corners[4] = {box.lo, {box.hi.x(), box.lo.y()}, box.hi, {box.lo.x(), box.hi.y()}};
        lo = std::numeric_limits<double>::max();
        hi = -lo;
        for (const Vec2& c : corners) {
            const double p = c.dot(axis);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
    };
    std::vector<Vec2> axes = {Vec2(1, 0), Vec2(0, 1)};
    for (const auto& e : lat.edges()) axes.push_back(e.inward);
    for (const Vec2& axis : axes) {
        double alo, ahi, blo, bhi;
        project(axis, alo, ahi);
        box_proj(axis, blo, bhi);
        if (std::min(ahi, bhi) - std::max(alo, blo) <= 1e-12) return false;
    }
    return true;
}

double shape_shape_distance(const Shape& a, const Shape& b) {
    double best = std::numeric_limits<double>::max();
    const int M = 128;
    const double pa = perimeter(a);
    for (int k = 0; k < M; ++k) {
        const Vec2 p = boundary_point(a, pa * k / M).position;
        best = std::min(best, distance_to_point(b, p));
        if (contains(b, p)) return 0.0;
    }
    const double pb = perimeter(b);
    for (int k = 0; k < M; ++k) {
        const Vec2 p = boundary_point(b, pb * k / M).position;
        best = std::min(best, distance_to_point(a, p));
        if (contains(a, p)) return 0.0;
    }
    return best;
}

}  // namespace

Omega Environment::cell_state(IVec2 g) const {
    const IVec2 gc = g + offset_;
    if (auto it = core_->overrides.find(gc); it != core_->overrides.end()) return it->second;
    if (core_->periodic) return core_->periodic->at(gc);
    return core_->law->sample(core_->seed, gc);
}

Environment Environment::shifted(IVec2 eta) const {
    Environment out = *this;
    out.offset_ = offset_ + eta;
    return out;
}

std::vector<PlacedShape> Environment::scatterers_near(const AABox& region) const {
    const Lattice& lat = lattice();
    const AABox search = region.inflated(lat.spacing());
    std::vector<PlacedShape> out;

    // integer bounds of candidate cells from the inverse basis
    const Mat2 inv = lat.basis().inverse();
    double xlo = std::numeric_limits<double>::max(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    const Vec2 corners[4] = {search.lo, {search.hi.x(), search.lo.y()}, search.hi, {search.lo.x(), search.hi.y()}};
    for (const Vec2& c : corners) {
        const Eigen::Vector2d u = inv * c;
        xlo = std::min(xlo, u.x());
        xhi = std::max(xhi, u.x());
        ylo = std::min(ylo, u.y());
        yhi = std::max(yhi, u.y());
    }
    const int margin = 2;
    for (int gy = static_cast<int>(std::floor(ylo)) - margin; gy <= static_cast<int>(std::ceil(yhi)) + margin; ++gy) {
        for (int gx = static_cast<int>(std::floor(xlo)) - margin; gx <= static_cast<int>(std::ceil(xhi)) + margin; ++gx) {
            const IVec2 g{gx, gy};
            const Vec2 anchor = lat.to_plane(g);
            if (!cell_overlaps_box(lat, anchor, search)) continue;
            const Omega w = cell_state(g);
            const auto shapes = core_->law->tiling_shapes(w);
            const IVec2 gc = g + offset_;
            for (size_t i = 0; i < shapes.size(); ++i) {
                if (core_->removed.count({gc, static_cast<int>(i)})) continue;
                out.push_back({translated(shapes[i], anchor), g, static_cast<int>(i)});
            }
        }
    }

    // finite-modification additions, stored in core plane coordinates
    if (!core_->added.empty()) {
        const Vec2 frame_shift = -lat.to_plane(offset_);
        for (size_t j = 0; j < core_->added.size(); ++j) {
            Shape s = translated(core_->added[j], frame_shift);
            const Vec2 c(0.5 * (support(s, Vec2(1, 0)) - support(s, Vec2(-1, 0))),
                         0.5 * (support(s, Vec2(0, 1)) - support(s, Vec2(0, -1))));
            const double reach = std::max(support(s, Vec2(1, 0)) - c.x(), support(s, Vec2(0, 1)) - c.y());
            if (c.x() + reach < search.lo.x() || c.x() - reach > search.hi.x() || c.y() + reach < search.lo.y() ||
                c.y() - reach > search.hi.y())
                continue;
            const IVec2 owner = lat.cell_of(c);
            out.push_back({std::move(s), owner, static_cast<int>(1000000 + j)});
        }
    }
    return out;
}

Environment random_env(LawPtr law, uint64_t seed) {
    Environment env;
    auto core = std::make_shared<Environment::Core>();
    core->law = std::move(law);
    core->seed = seed;
    env.core_ = std::move(core);
    return env;
}

Environment periodic_env(LawPtr law, PeriodicPattern pattern) {
    if (pattern.px < 1 || pattern.py < 1 ||
        pattern.values.size() != static_cast<size_t>(pattern.px) * pattern.py)
        throw ConfigError("periodic pattern does not tile the lattice");
    Environment env;
    auto core = std::make_shared<Environment::Core>();
    core->law = std::move(law);
    core->periodic = std::move(pattern);
    env.core_ = std::move(core);
    return env;
}

Environment finite_modification(const Environment& env, const std::vector<std::pair<IVec2, int>>& removals,
                                const std::vector<Shape>& additions) {
    auto core = std::make_shared<Environment::Core>(*env.core_);
    for (const auto& [g, idx] : removals) core->removed.insert({g + env.offset_, idx});

    Environment retained;  // removals applied, additions not yet
    retained.core_ = std::make_shared<Environment::Core>(*core);
    retained.offset_ = env.offset_;

    // Overlap validation of each addition against retained scatterers (on a
    // window covering it) and against earlier additions.
    for (size_t j = 0; j < additions.size(); ++j) {
        const Shape& s = additions[j];
        const Vec2 c(0.5 * (support(s, Vec2(1, 0)) - support(s, Vec2(-1, 0))),
                     0.5 * (support(s, Vec2(0, 1)) - support(s, Vec2(0, -1))));
        const double reach = std::max(support(s, Vec2(1, 0)) - c.x(), support(s, Vec2(0, 1)) - c.y());
        const auto near = retained.scatterers_near(AABox::around(c, reach + env.law().max_extent() + 1.0));
        for (const PlacedShape& p : near)
            if (shape_shape_distance(p.shape, s) <= 1e-12)
                throw OverlapError("added shape intersects or touches a retained scatterer");
        for (size_t i = 0; i < j; ++i)
            if (shape_shape_distance(additions[i], s) <= 1e-12)
                throw OverlapError("added shapes intersect or touch each other");
    }

    const Vec2 to_core = env.lattice().to_plane(env.offset_);
    for (const Shape& s : additions) core->added.push_back(translated(s, to_core));
    Environment out;
    out.core_ = std::move(core);
    out.offset_ = env.offset_;
    return out;
}

DclgResult d_clg(const Environment& a, const Environment& b, double radius) {
    if (a.law_ptr().get() != b.law_ptr().get())
        throw ConfigError("d_clg requires environments sharing one law");
    const Lattice& lat = a.lattice();
    const int span = static_cast<int>(std::ceil(radius / lat.spacing())) + 2;
    double value = 0;
    for (int gy = -span; gy <= span; ++gy) {
        for (int gx = -span; gx <= span; ++gx) {
            const IVec2 g{gx, gy};
            const double norm = lat.to_plane(g).norm();
            if (norm > radius) continue;
            value += std::exp2(-norm) * a.law().d_omega(a.cell_state(g), b.cell_state(g));
        }
    }

    // Tail: each lattice point's Voronoi cell fits in the annulus inflated by
    // the cell circumradius, so shell k holds at most
    // pi ((k+1+rho)^2 - max(0, k-rho)^2) / A points.
    const double rho = lat.circumradius();
    const double A = lat.cell_area();
    const int k0 = static_cast<int>(std::floor(radius));
    double tail = 0;
    int k = k0;
    for (; k < k0 + 64 && k < static_cast<int>(rho) + 2; ++k) {
        const double lo = std::max(0.0, k - rho);
        const double count = kPi * ((k + 1 + rho) * (k + 1 + rho) - lo * lo) / A;
        tail += count * std::exp2(-k);
    }
    // closed form of sum_{j >= k} (2j+1)(1+2rho) pi/A 2^-j
    const double K = k;
    const double s1 = (2 * K + 2) * std::exp2(-K);  // sum j 2^-j
    const double s0 = 2 * std::exp2(-K);            // sum 2^-j
    tail += (kPi * (1 + 2 * rho) / A) * (2 * s1 + s0);
    return {value, tail * a.law().omega_diameter()};
}

std::string env_to_string(const Environment& env) {
    KvDoc doc;
    doc.add("schema", "lorentz-env/1");
    env.law().to_kv(doc);
    doc.add("seed", static_cast<long long>(env.core_->seed));
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d %d", env.offset_.x, env.offset_.y);
        doc.add("shift_offset", std::string(buf));
    }
    if (env.core_->periodic) {
        const auto& p = *env.core_->periodic;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d %d", p.px, p.py);
        doc.add("periodic_block", std::string(buf));
        for (int iy = 0; iy < p.py; ++iy)
            for (int ix = 0; ix < p.px; ++ix) {
                std::string line = std::to_string(ix) + " " + std::to_string(iy);
                for (double v : p.values[static_cast<size_t>(iy) * p.px + ix]) {
                    char num[40];
                    std::snprintf(num, sizeof num, " %.17g", v);
                    line += num;
                }
                doc.add("periodic_value", line);
            }
    }
    for (const auto& [g, w] : env.core_->overrides) {
        std::string line = std::to_string(g.x) + " " + std::to_string(g.y);
        for (double v : w) {
            char num[40];
            std::snprintf(num, sizeof num, " %.17g", v);
            line += num;
        }
        doc.add("override", line);
    }
    for (const auto& [g, idx] : env.core_->removed) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%d %d %d", g.x, g.y, idx);
        doc.add("removed", std::string(buf));
    }
    for (const Shape& s : env.core_->added) {
        if (std::holds_alternative<Disc>(s)) {
            const auto& d = std::get<Disc>(s);
            char buf[160];
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g", d.center.x(), d.center.y(), d.radius);
            doc.add("added_disc", std::string(buf));
        } else if (std::holds_alternative<Ellipse>(s)) {
            const auto& e = std::get<Ellipse>(s);
            char buf[240];
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g", e.center.x(), e.center.y(), e.a,
                          e.b, e.angle);
            doc.add("added_ellipse", std::string(buf));
        } else {
            throw ConfigError("parametric additions are not file-serializable");
        }
    }
    return doc.to_string();
}

Environment env_from_string(const std::string& text) {
    const KvDoc doc = KvDoc::parse(text);
    if (doc.get_or("schema", "") != "lorentz-env/1") throw ConfigError("unknown environment schema");
    auto core = std::make_shared<Environment::Core>();
    core->law = law_from_kv(doc);
    core->seed = static_cast<uint64_t>(doc.get_int("seed"));

    auto parse_nums = [](const std::string& line) {
        KvDoc tmp;
        tmp.add("v", line);
        return tmp.get_doubles("v");
    };

    if (doc.has("periodic_block")) {
        auto dims = parse_nums(doc.get("periodic_block"));
        PeriodicPattern p;
        p.px = static_cast<int>(dims.at(0));
        p.py = static_cast<int>(dims.at(1));
        p.values.assign(static_cast<size_t>(p.px) * p.py, {});
        for (const std::string& line : doc.get_all("periodic_value")) {
            auto nums = parse_nums(line);
            const int ix = static_cast<int>(nums.at(0)), iy = static_cast<int>(nums.at(1));
            p.values.at(static_cast<size_t>(iy) * p.px + ix) = Omega(nums.begin() + 2, nums.end());
        }
        core->periodic = std::move(p);
    }
    for (const std::string& line : doc.get_all("override")) {
        auto nums = parse_nums(line);
        core->overrides[{static_cast<int>(nums.at(0)), static_cast<int>(nums.at(1))}] =
            Omega(nums.begin() + 2, nums.end());
    }
    for (const std::string& line : doc.get_all("removed")) {
        auto nums = parse_nums(line);
        core->removed.insert({{static_cast<int>(nums.at(0)), static_cast<int>(nums.at(1))},
                              static_cast<int>(nums.at(2))});
    }
    for (const std::string& line : doc.get_all("added_disc")) {
        auto nums = parse_nums(line);
        core->added.push_back(Disc{Vec2(nums.at(0), nums.at(1)), nums.at(2)});
    }
    for (const std::string& line : doc.get_all("added_ellipse")) {
        auto nums = parse_nums(line);
        core->added.push_back(Ellipse{Vec2(nums.at(0), nums.at(1)), nums.at(2), nums.at(3), nums.at(4)});
    }

    Environment env;
    env.core_ = std::move(core);
    auto off = parse_nums(doc.get_or("shift_offset", "0 0"));
    env = env.shifted({static_cast<int>(off.at(0)), static_cast<int>(off.at(1))});
    return env;
}

}  // namespace lorentz::ensemble
