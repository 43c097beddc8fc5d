#include "lorentz/cell_law.hpp"

#include <algorithm>
#include <cmath>

#include "lorentz/errors.hpp"

namespace lorentz::ensemble {

namespace {

// Wrap band [center - w, center + w] into [0, spacing) intervals.
void add_band(std::vector<std::pair<double, double>>& out, double center, double w, double spacing) {
    if (w <= 0) return;
    if (2 * w >= spacing) {
        out.emplace_back(0.0, spacing);
        return;
    }
    double lo = wrap(center - w, spacing);
    double hi = lo + 2 * w;
    if (hi <= spacing) {
        out.emplace_back(lo, hi);
    } else {
        out.emplace_back(lo, spacing);
        out.emplace_back(0.0, hi - spacing);
    }
}

std::vector<std::pair<double, double>> merge_intervals(std::vector<std::pair<double, double>> v) {
    std::sort(v.begin(), v.end());
    std::vector<std::pair<double, double>> out;
    for (auto& iv : v) {
        if (!out.empty() && iv.first <= out.back().second) {
            out.back().second = std::max(out.back().second, iv.second);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

std::vector<std::pair<double, double>> intersect_sets(const std::vector<std::pair<double, double>>& a,
                                                      const std::vector<std::pair<double, double>>& b) {
    std::vector<std::pair<double, double>> out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            const double lo = std::max(x.first, y.first);
            const double hi = std::min(x.second, y.second);
            if (lo < hi) out.emplace_back(lo, hi);
        }
    }
    return merge_intervals(std::move(out));
}

double shape_proj_center(const Shape& s, const Vec2& perp) {
    return std::visit(
        [&perp](const auto& sh) -> double {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) return sh.center.dot(perp);
            else if constexpr (std::is_same_v<T, Ellipse>) return sh.center.dot(perp);
            else return 0.5 * (support(Shape(sh), perp) - support(Shape(sh), -perp));
        },
        s);
}

double shape_proj_halfwidth(const Shape& s, const Vec2& perp) {
    const double c = shape_proj_center(s, perp);
    return support(s, perp) - c;
}

// -------------------------------------------------------------- disc law --

class DiscLaw final : public CellLaw {
  public:
    DiscLaw(LatticeKind kind, double radius, double center_radius, double tau_min, double tau_max)
        : lat_(&Lattice::of(kind)), radius_(radius), center_radius_(center_radius), tau_min_(tau_min),
          tau_max_bound_(tau_max) {
        if (radius <= 0 || center_radius < 0) throw ConfigError("disc law: invalid radii");
    }

    std::string name() const override { return "disc"; }
    const Lattice& lattice() const override { return *lat_; }

    Omega sample(uint64_t seed, IVec2 cell) const override {
        if (center_radius_ == 0) return {0.0, 0.0};
        HashStream rng(seed, cell_stream(cell));
        const Vec2 c = rng.in_disc(center_radius_);
        return {c.x(), c.y()};
    }

    double d_omega(const Omega& a, const Omega& b) const override {
        return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
    }
    double omega_diameter() const override { return 2 * center_radius_; }

    std::vector<Shape> cell_shapes(const Omega& w) const override {
        return {Disc{Vec2(w.at(0), w.at(1)), radius_}};
    }
    std::vector<Shape> tiling_shapes(const Omega& w) const override { return cell_shapes(w); }

    std::vector<std::pair<double, double>> covered_intervals(const Vec2&, double spacing,
                                                             bool deflated) const override {
        std::vector<std::pair<double, double>> out;
        const double w = deflated ? radius_ - center_radius_ : radius_ + center_radius_;
        add_band(out, 0.0, w, spacing);
        return merge_intervals(std::move(out));
    }

    double min_width_deflated() const override { return std::max(0.0, 2 * (radius_ - center_radius_)); }
    double max_extent() const override { return radius_ + center_radius_; }
    size_t n_random_tiling_shapes() const override { return 1; }
    std::optional<std::pair<double, double>> exact_curvature_bounds() const override {
        return std::pair{1.0 / radius_, 1.0 / radius_};
    }
    double declared_tau_min() const override { return tau_min_; }
    double tau_max_bound() const override { return tau_max_bound_; }
    int param_count() const override { return 2; }

    void to_kv(KvDoc& doc) const override {
        doc.add("law", "disc");
        doc.add("lattice", lat_->kind() == LatticeKind::Hex ? "hex" : "square");
        doc.add("radius", radius_);
        doc.add("center_radius", center_radius_);
        doc.add("tau_min", tau_min_);
        doc.add("tau_max_bound", tau_max_bound_);
    }

  private:
    const Lattice* lat_;
    double radius_, center_radius_, tau_min_, tau_max_bound_;
};

// ----------------------------------------------------- ellipse+corner law --

class EllipseCornerLaw final : public CellLaw {
  public:
    EllipseCornerLaw(double corner_radius, double center_radius, double a_lo, double a_hi, double b_lo,
                     double b_hi, double tau_min, double tau_max)
        : lat_(&Lattice::square()), corner_radius_(corner_radius), center_radius_(center_radius), a_lo_(a_lo),
          a_hi_(a_hi), b_lo_(b_lo), b_hi_(b_hi), tau_min_(tau_min), tau_max_bound_(tau_max) {
        if (a_lo > a_hi || b_lo > b_hi || a_lo <= 0 || b_lo <= 0 || corner_radius <= 0)
            throw ConfigError("ellipse law: invalid parameter box");
    }

    std::string name() const override { return "ellipse_corner"; }
    const Lattice& lattice() const override { return *lat_; }

    Omega sample(uint64_t seed, IVec2 cell) const override {
        HashStream rng(seed, cell_stream(cell));
        const Vec2 c = rng.in_disc(center_radius_);
        const double a = rng.uniform(a_lo_, a_hi_);
        const double b = rng.uniform(b_lo_, b_hi_);
        return {c.x(), c.y(), a, b};
    }

    double d_omega(const Omega& a, const Omega& b) const override {
        double d = 0;
        for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
        return d;
    }
    double omega_diameter() const override {
        return std::max({2 * center_radius_, a_hi_ - a_lo_, b_hi_ - b_lo_});
    }

    std::vector<Shape> cell_shapes(const Omega& w) const override {
        std::vector<Shape> out = {Ellipse{Vec2(w.at(0), w.at(1)), w.at(2), w.at(3), 0.0}};
        for (double sx : {-0.5, 0.5})
            for (double sy : {-0.5, 0.5}) out.push_back(Disc{Vec2(sx, sy), corner_radius_});
        return out;
    }

    std::vector<Shape> tiling_shapes(const Omega& w) const override {
        return {Ellipse{Vec2(w.at(0), w.at(1)), w.at(2), w.at(3), 0.0},
                Disc{Vec2(-0.5, -0.5), corner_radius_}};
    }

    std::vector<Shape> fixed_wall_blockers() const override {
        std::vector<Shape> out;
        for (double sx : {-0.5, 0.5})
            for (double sy : {-0.5, 0.5}) out.push_back(Disc{Vec2(sx, sy), corner_radius_});
        return out;
    }

    std::vector<std::pair<double, double>> covered_intervals(const Vec2& perp, double spacing,
                                                             bool deflated) const override {
        std::vector<std::pair<double, double>> out;
        const double wa = deflated ? a_lo_ : a_hi_;
        const double wb = deflated ? b_lo_ : b_hi_;
        const double we = std::sqrt(wa * wa * perp.x() * perp.x() + wb * wb * perp.y() * perp.y()) +
                          (deflated ? -center_radius_ : center_radius_);
        add_band(out, 0.0, we, spacing);
        add_band(out, Vec2(-0.5, -0.5).dot(perp), corner_radius_, spacing);
        return merge_intervals(std::move(out));
    }

    double min_width_deflated() const override {
        return std::max(2 * corner_radius_, 2 * (std::min(a_lo_, b_lo_) - center_radius_));
    }
    size_t n_random_tiling_shapes() const override { return 1; }
    double max_extent() const override {
        return std::max(std::sqrt(0.5) + corner_radius_, center_radius_ + std::max(a_hi_, b_hi_));
    }
    double declared_tau_min() const override { return tau_min_; }
    double tau_max_bound() const override { return tau_max_bound_; }
    int param_count() const override { return 4; }

    void to_kv(KvDoc& doc) const override {
        doc.add("law", "ellipse_corner");
        doc.add("lattice", "square");
        doc.add("corner_radius", corner_radius_);
        doc.add("center_radius", center_radius_);
        doc.add_pair("a_range", a_lo_, a_hi_);
        doc.add_pair("b_range", b_lo_, b_hi_);
        doc.add("tau_min", tau_min_);
        doc.add("tau_max_bound", tau_max_bound_);
    }

  private:
    const Lattice* lat_;
    double corner_radius_, center_radius_, a_lo_, a_hi_, b_lo_, b_hi_, tau_min_, tau_max_bound_;
};

// ------------------------------------------------------------- empty law --

class EmptyLaw final : public CellLaw {
  public:
    explicit EmptyLaw(LatticeKind kind) : lat_(&Lattice::of(kind)) {}
    std::string name() const override { return "empty"; }
    const Lattice& lattice() const override { return *lat_; }
    Omega sample(uint64_t, IVec2) const override { return {}; }
    double d_omega(const Omega&, const Omega&) const override { return 0; }
    double omega_diameter() const override { return 0; }
    std::vector<Shape> cell_shapes(const Omega&) const override { return {}; }
    std::vector<Shape> tiling_shapes(const Omega&) const override { return {}; }
    std::vector<std::pair<double, double>> covered_intervals(const Vec2&, double, bool) const override {
        return {};
    }
    double min_width_deflated() const override { return 0; }
    double max_extent() const override { return 0; }
    size_t n_random_tiling_shapes() const override { return 0; }
    double declared_tau_min() const override { return 0.1; }
    double tau_max_bound() const override { return 0; }
    int param_count() const override { return 0; }
    void to_kv(KvDoc& doc) const override {
        doc.add("law", "empty");
        doc.add("lattice", lat_->kind() == LatticeKind::Hex ? "hex" : "square");
    }

  private:
    const Lattice* lat_;
};

// ------------------------------------------------------------ finite law --

class FiniteLaw final : public CellLaw {
  public:
    FiniteLaw(LatticeKind kind, std::vector<std::vector<Shape>> configs, std::vector<double> weights,
              double tau_min, double tau_max)
        : lat_(&Lattice::of(kind)), configs_(std::move(configs)), weights_(std::move(weights)),
          tau_min_(tau_min), tau_max_bound_(tau_max) {
        if (configs_.empty() || configs_.size() != weights_.size())
            throw ConfigError("finite law: configs/weights mismatch");
    }

    std::string name() const override { return "finite"; }
    const Lattice& lattice() const override { return *lat_; }

    Omega sample(uint64_t seed, IVec2 cell) const override {
        HashStream rng(seed, cell_stream(cell));
        return {static_cast<double>(rng.pick_weighted(weights_.data(), static_cast<int>(weights_.size())))};
    }

    double d_omega(const Omega& a, const Omega& b) const override { return a[0] == b[0] ? 0.0 : 1.0; }
    double omega_diameter() const override { return configs_.size() > 1 ? 1.0 : 0.0; }

    std::vector<Shape> cell_shapes(const Omega& w) const override {
        return configs_.at(static_cast<size_t>(w.at(0)));
    }
    std::vector<Shape> tiling_shapes(const Omega& w) const override { return cell_shapes(w); }

    std::vector<std::pair<double, double>> covered_intervals(const Vec2& perp, double spacing,
                                                             bool deflated) const override {
        std::vector<std::pair<double, double>> acc;
        bool first = true;
        for (const auto& config : configs_) {
            std::vector<std::pair<double, double>> cur;
            for (const Shape& s : config)
                add_band(cur, shape_proj_center(s, perp), shape_proj_halfwidth(s, perp), spacing);
            cur = merge_intervals(std::move(cur));
            if (first) {
                acc = cur;
                first = false;
            } else if (deflated) {
                acc = intersect_sets(acc, cur);
            } else {
                for (auto& iv : cur) acc.push_back(iv);
                acc = merge_intervals(std::move(acc));
            }
        }
        return acc;
    }

    double min_width_deflated() const override {
        // A single adversarial cell can always present its thinnest config.
        double best = std::numeric_limits<double>::max();
        for (const auto& config : configs_) {
            double widest = 0;
            for (const Shape& s : config) widest = std::max(widest, min_width(s));
            best = std::min(best, widest);
        }
        return best == std::numeric_limits<double>::max() ? 0.0 : best;
    }

    double max_extent() const override {
        double m = 0;
        for (const auto& config : configs_)
            for (const Shape& s : config)
                for (int i = 0; i < 64; ++i) {
                    const double ang = 2 * kPi * i / 64;
                    m = std::max(m, support(s, Vec2(std::cos(ang), std::sin(ang))));
                }
        return m;
    }

    size_t n_random_tiling_shapes() const override { return static_cast<size_t>(-1); }
    double declared_tau_min() const override { return tau_min_; }
    double tau_max_bound() const override { return tau_max_bound_; }
    int param_count() const override { return 1; }
    void to_kv(KvDoc&) const override { throw ConfigError("finite laws are not file-serializable"); }

  private:
    const Lattice* lat_;
    std::vector<std::vector<Shape>> configs_;
    std::vector<double> weights_;
    double tau_min_, tau_max_bound_;
};

}  // namespace

LawPtr make_disc_law(LatticeKind kind, double radius, double center_radius, double tau_min,
                     double tau_max_bound) {
    return std::make_shared<DiscLaw>(kind, radius, center_radius, tau_min, tau_max_bound);
}

LawPtr make_ellipse_corner_law(double corner_radius, double center_radius, double a_lo, double a_hi,
                               double b_lo, double b_hi, double tau_min, double tau_max_bound) {
    return std::make_shared<EllipseCornerLaw>(corner_radius, center_radius, a_lo, a_hi, b_lo, b_hi, tau_min,
                                              tau_max_bound);
}

LawPtr make_empty_law(LatticeKind kind) { return std::make_shared<EmptyLaw>(kind); }

LawPtr make_finite_law(LatticeKind kind, std::vector<std::vector<Shape>> configs, std::vector<double> weights,
                       double tau_min, double tau_max_bound) {
    return std::make_shared<FiniteLaw>(kind, std::move(configs), std::move(weights), tau_min, tau_max_bound);
}

LawPtr shipped_hex_disc_law() { return make_disc_law(LatticeKind::Hex, 0.46, 0.02, 0.04, 6.0); }

LawPtr shipped_square_ellipse_law() {
    return make_ellipse_corner_law(0.36, 0.015, 0.30, 0.33, 0.18, 0.21, 0.05, 8.0);
}

LawPtr law_from_kv(const KvDoc& doc) {
    const std::string law = doc.get("law");
    const std::string lat = doc.get_or("lattice", "square");
    const LatticeKind kind = lat == "hex" ? LatticeKind::Hex : LatticeKind::Square;
    if (law == "disc")
        return make_disc_law(kind, doc.get_double("radius"), doc.get_double("center_radius"),
                             doc.get_double("tau_min"), doc.get_double("tau_max_bound"));
    if (law == "ellipse_corner") {
        auto a = doc.get_doubles("a_range");
        auto b = doc.get_doubles("b_range");
        return make_ellipse_corner_law(doc.get_double("corner_radius"), doc.get_double("center_radius"),
                                       a.at(0), a.at(1), b.at(0), b.at(1), doc.get_double("tau_min"),
                                       doc.get_double("tau_max_bound"));
    }
    if (law == "empty") return make_empty_law(kind);
    throw ConfigError("unknown law kind: " + law);
}

std::vector<ValidityIssue> law_validity_issues(const CellLaw& law, int n_samples, uint64_t seed) {
    std::vector<ValidityIssue> issues;
    const Lattice& lat = law.lattice();
    const double margin = law.declared_tau_min() / 2;
    for (int i = 0; i < n_samples; ++i) {
        const IVec2 cell{i, -i - 1};
        const Omega w = law.sample(seed, cell);
        const auto shapes = law.tiling_shapes(w);
        for (size_t s = 0; s < std::min(shapes.size(), law.n_random_tiling_shapes()); ++s) {
            for (const WallEdge& e : lat.edges()) {
                // signed distance from the shape to the wall line, measured inward
                const double dist = -support(shapes[s], -e.inward) - e.a.dot(e.inward);
                if (dist < margin - 1e-12)
                    issues.push_back({cell, "random scatterer closer than tau_min/2 to the cell boundary"});
            }
        }
        const auto all = law.cell_shapes(w);
        for (size_t p = 0; p < all.size(); ++p)
            for (size_t q = p + 1; q < all.size(); ++q) {
                bool overlap = false;
                for (int k = 0; k < 64 && !overlap; ++k) {
                    const double r = perimeter(all[p]) * k / 64;
                    if (contains(all[q], boundary_point(all[p], r).position)) overlap = true;
                }
                if (overlap) issues.push_back({cell, "in-cell scatterers overlap"});
            }
    }
    return issues;
}

}  // namespace lorentz::ensemble
