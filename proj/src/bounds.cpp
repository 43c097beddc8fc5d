#include "lorentz/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lorentz/billiard.hpp"
#include "lorentz/environment.hpp"
#include "lorentz/errors.hpp"

namespace lorentz::billiard {

namespace {

struct Gap {
    double width = 0;
    double lo = 0, hi = 0;
};

// Largest uncovered gap on the projection circle [0, spacing).
Gap largest_gap(const std::vector<std::pair<double, double>>& covered, double spacing) {
    if (covered.empty()) return {spacing, 0, spacing};
    Gap best;
    for (size_t i = 0; i < covered.size(); ++i) {
        const double hi = covered[i].second;
        const double next_lo = (i + 1 < covered.size()) ? covered[i + 1].first : covered[0].first + spacing;
        if (next_lo - hi > best.width) best = {next_lo - hi, hi, next_lo};
    }
    if (covered[0].first > best.width) best = {covered[0].first, 0, covered[0].first};
    return best;
}

int gcd_int(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }

struct CorridorScan {
    Horizon horizon;
    std::optional<CorridorReport> corridor;
};

CorridorScan scan_corridors(const ensemble::CellLaw& law) {
    const auto& lat = law.lattice();
    const double A = lat.cell_area();
    const double w = law.min_width_deflated();

    if (law.max_extent() == 0)
        return {Horizon::Infinite, CorridorReport{{1, 0}, A / lat.to_plane({1, 0}).norm(),
                                                  A / lat.to_plane({1, 0}).norm(), 0,
                                                  A / lat.to_plane({1, 0}).norm()}};

    const double cap = (w > 0) ? A / w : 64.0;
    const bool complete = cap <= 64.0;
    const double cap_eff = std::min(cap, 64.0);

    bool any_uncertain = false;
    std::optional<CorridorReport> open_corridor;

    const int N = static_cast<int>(std::ceil(cap_eff * 2)) + 1;
    for (int gy = 0; gy <= N; ++gy) {
        for (int gx = -N; gx <= N; ++gx) {
            if (gy == 0 && gx <= 0) continue;          // half plane: +-g are one corridor
            if (gcd_int(gx, gy) != 1) continue;        // primitive directions only
            const Vec2 bg = lat.to_plane({gx, gy});
            if (bg.norm() >= cap_eff) continue;
            const double spacing = A / bg.norm();
            const Vec2 perpdir = perp(bg).normalized();
            const Gap defl = largest_gap(law.covered_intervals(perpdir, spacing, true), spacing);
            if (defl.width <= 1e-12) continue;  // blocked in every realization
            const Gap infl = largest_gap(law.covered_intervals(perpdir, spacing, false), spacing);
            if (infl.width > 1e-12) {
                if (!open_corridor || infl.width > open_corridor->width)
                    open_corridor = CorridorReport{{gx, gy}, spacing, infl.width, infl.lo, infl.hi};
            } else {
                any_uncertain = true;
            }
        }
    }
    if (open_corridor) return {Horizon::Infinite, open_corridor};
    if (any_uncertain || !complete) return {Horizon::Undecided, std::nullopt};
    return {Horizon::Finite, std::nullopt};
}

}  // namespace

BoundsCertificate certify_bounds(const ensemble::LawPtr& law_ptr, int sample_budget, uint64_t seed) {
    const ensemble::CellLaw& law = *law_ptr;
    BoundsCertificate cert;

    if (auto k = law.exact_curvature_bounds()) {
        cert.k_min = k->first;
        cert.k_max = k->second;
        cert.exact_curvature = true;
    } else {
        cert.k_min = std::numeric_limits<double>::max();
        cert.k_max = 0;
        for (int i = 0; i < 64; ++i) {
            const auto w = law.sample(seed, {i, i + 1});
            for (const Shape& s : law.cell_shapes(w)) {
                const auto [lo, hi] = curvature_range(s);
                cert.k_min = std::min(cert.k_min, lo);
                cert.k_max = std::max(cert.k_max, hi);
            }
        }
        cert.exact_curvature = false;
    }

    const auto scan = scan_corridors(law);
    cert.horizon = scan.horizon;
    cert.corridor = scan.corridor;

    // Free-path bounds by sampling mu-random departures in random
    // realizations. A pairwise-gap scan lower-bounds tau_min as well.
    const auto& lat = law.lattice();
    const double window_radius = std::max(2.0 * lat.spacing(), law.tau_max_bound() + lat.spacing());
    cert.tau_min = std::numeric_limits<double>::max();
    const BilliardOptions opts;
    int made = 0;
    for (int k = 0; k < sample_budget; ++k) {
        auto env = ensemble::random_env(law_ptr, seed + 1000003ull * k);
        const auto placed = env.scatterers_near(AABox::around(Vec2(0, 0), window_radius));
        if (placed.empty()) {
            cert.tau_max_is_escape = true;
            break;
        }
        std::vector<Shape> shapes;
        shapes.reserve(placed.size());
        int central = -1;
        for (size_t i = 0; i < placed.size(); ++i) {
            shapes.push_back(placed[i].shape);
            if (placed[i].cell == IVec2{0, 0} && central < 0) central = static_cast<int>(i);
        }
        if (central < 0) continue;
        HashStream rng(seed ^ 0x5eedull, k);
        try {
            const PhasePoint x = sample_mu(central, shapes, rng);
            const auto step = billiard_map(x, shapes, opts);
            cert.tau_min = std::min(cert.tau_min, step.tau);
            cert.tau_max = std::max(cert.tau_max, step.tau);
            ++made;
        } catch (const TangencyError&) {
        } catch (const EscapeError&) {
            cert.tau_max_is_escape = true;
        }
    }
    // Worst-case pairwise gaps between a sampled cell and its neighbors.
    for (int k = 0; k < std::min(sample_budget, 64); ++k) {
        const auto w0 = law.sample(seed, {3 * k, -k});
        const auto own = law.cell_shapes(w0);
        for (size_t i = 0; i < own.size(); ++i)
            for (size_t j = i + 1; j < own.size(); ++j) {
                double d = std::numeric_limits<double>::max();
                const double per = perimeter(own[i]);
                for (int m = 0; m < 64; ++m)
                    d = std::min(d, distance_to_point(own[j], boundary_point(own[i], per * m / 64).position));
                cert.tau_min = std::min(cert.tau_min, d);
            }
    }
    cert.n_samples = made;
    if (cert.tau_min == std::numeric_limits<double>::max()) cert.tau_min = 0;
    return cert;
}

BoundsCertificate certify_bounds(std::span<const Shape> shapes, int sample_budget, uint64_t seed) {
    BoundsCertificate cert;
    cert.horizon = Horizon::Infinite;  // a finite configuration cannot block the plane
    cert.k_min = std::numeric_limits<double>::max();
    cert.k_max = 0;
    cert.exact_curvature = true;
    for (const Shape& s : shapes) {
        const auto [lo, hi] = curvature_range(s);
        cert.k_min = std::min(cert.k_min, lo);
        cert.k_max = std::max(cert.k_max, hi);
        if (std::holds_alternative<Parametric>(s)) cert.exact_curvature = false;
    }
    if (shapes.empty()) {
        cert.k_min = 0;
        return cert;
    }
    cert.tau_min = std::numeric_limits<double>::max();
    HashStream rng(seed, 0xb017dull);
    const BilliardOptions opts;
    int made = 0;
    for (int k = 0; k < sample_budget; ++k) {
        const int idx = static_cast<int>(rng.next_u64() % shapes.size());
        try {
            const PhasePoint x = sample_mu(idx, shapes, rng);
            const auto step = billiard_map(x, shapes, opts);
            cert.tau_min = std::min(cert.tau_min, step.tau);
            cert.tau_max = std::max(cert.tau_max, step.tau);
            ++made;
        } catch (const TangencyError&) {
        } catch (const EscapeError&) {
            cert.tau_max_is_escape = true;
        }
    }
    cert.n_samples = made;
    if (cert.tau_min == std::numeric_limits<double>::max()) cert.tau_min = 0;
    return cert;
}

std::string certificate_to_string(const BoundsCertificate& cert) {
    std::ostringstream out;
    out << "curvature: [" << cert.k_min << ", " << cert.k_max << "] ("
        << (cert.exact_curvature ? "exact" : "sampled") << ")\n";
    out << "free path: [" << cert.tau_min << ", " << cert.tau_max << "] sampled over " << cert.n_samples
        << " departures" << (cert.tau_max_is_escape ? " (escapes observed)" : "") << "\n";
    out << "horizon: "
        << (cert.horizon == Horizon::Finite ? "finite"
                                            : cert.horizon == Horizon::Infinite ? "infinite" : "undecided")
        << "\n";
    if (cert.corridor) {
        out << "corridor: direction (" << cert.corridor->direction.x << ", " << cert.corridor->direction.y
            << ") width " << cert.corridor->width << " offset [" << cert.corridor->offset_lo << ", "
            << cert.corridor->offset_hi << ") of period " << cert.corridor->spacing << "\n";
    }
    return out.str();
}

}  // namespace lorentz::billiard
