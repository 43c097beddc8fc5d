#include "lorentz/cross_section.hpp"

#include <algorithm>
#include <cmath>

#include "lorentz/errors.hpp"

namespace lorentz::skew {

namespace {

// Interval of edge arc coordinates covered by a convex shape, or empty.
std::pair<double, double> chord_interval(const Shape& s, const Vec2& a, const Vec2& tangent, double len) {
    if (const Disc* d = std::get_if<Disc>(&s)) {
        const Vec2 rel = a - d->center;
        const double b = rel.dot(tangent);
        const double c = rel.squaredNorm() - d->radius * d->radius;
        const double disc = b * b - c;
        if (disc <= 0) return {0, -1};
        const double sq = std::sqrt(disc);
        return {std::max(0.0, -b - sq), std::min(len, -b + sq)};
    }
    // generic convex shape: bisect the indicator along the edge
    const int M = 512;
    int first_in = -1, last_in = -1;
    for (int i = 0; i <= M; ++i) {
        if (contains(s, a + (len * i / M) * tangent)) {
            if (first_in < 0) first_in = i;
            last_in = i;
        }
    }
    if (first_in < 0) return {0, -1};
    auto refine = [&](double inside, double outside) {
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (inside + outside);
            if (contains(s, a + mid * tangent))
                inside = mid;
            else
                outside = mid;
        }
        return 0.5 * (inside + outside);
    };
    double lo = (first_in == 0) ? 0.0 : refine(len * first_in / M, len * (first_in - 1) / M);
    double hi = (last_in == M) ? len : refine(len * last_in / M, len * (last_in + 1) / M);
    return {lo, hi};
}

}  // namespace

CrossSection CrossSection::build(const ensemble::CellLaw& law) {
    CrossSection cs;
    cs.lat_ = &law.lattice();
    const auto blockers = law.fixed_wall_blockers();
    double arc = 0;
    const auto& edges = cs.lat_->edges();
    for (size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        std::vector<std::pair<double, double>> covered;
        for (const Shape& s : blockers) {
            auto iv = chord_interval(s, e.a, e.tangent, e.length);
            if (iv.second > iv.first) covered.push_back(iv);
        }
        std::sort(covered.begin(), covered.end());
        double cursor = 0;
        auto emit = [&](double lo, double hi) {
            if (hi - lo <= 1e-12) return;
            WallSegment seg;
            seg.edge = static_cast<int>(k);
            seg.lo = lo;
            seg.hi = hi;
            seg.a = e.a + lo * e.tangent;
            seg.tangent = e.tangent;
            seg.inward = e.inward;
            seg.length = hi - lo;
            seg.arc_offset = arc;
            arc += seg.length;
            cs.segments_.push_back(seg);
        };
        for (const auto& [lo, hi] : covered) {
            emit(cursor, lo);
            cursor = std::max(cursor, hi);
        }
        emit(cursor, e.length);
    }
    cs.total_ = arc;
    if (cs.segments_.empty()) throw ConfigError("law leaves no transparent wall on the cell boundary");
    return cs;
}

std::pair<int, double> CrossSection::locate(int edge, double u_len, double tol) const {
    for (size_t i = 0; i < segments_.size(); ++i) {
        const WallSegment& s = segments_[i];
        if (s.edge != edge) continue;
        if (u_len > s.lo - tol && u_len < s.hi + tol) {
            const double r = u_len - s.lo;
            if (r < tol || r > s.length - tol)
                throw CornerCrossingError("crossing at a cross-section segment endpoint");
            return {static_cast<int>(i), r};
        }
    }
    // geometrically impossible for a valid crossing: the blocker would have
    // been hit first
    throw CornerCrossingError("crossing point not on the transparent wall");
}

Ray CrossSection::point_to_ray(const CrossSectionPoint& x) const {
    const WallSegment& s = segments_.at(x.segment);
    const Vec2 pos = s.a + x.r * s.tangent;
    const Vec2 v = std::cos(x.phi) * s.tangent + std::sin(x.phi) * s.inward;
    return {pos, v};
}

double CrossSection::phi_of(int segment, const Vec2& v) const {
    const WallSegment& s = segments_.at(segment);
    return std::atan2(v.dot(s.inward), v.dot(s.tangent));
}

double CrossSection::global_arc(const CrossSectionPoint& x) const {
    return segments_.at(x.segment).arc_offset + x.r;
}

CrossSectionPoint sample_mu1(const CrossSection& cs, HashStream& rng) {
    const double u = rng.next_unit() * cs.total_length();
    const auto& segs = cs.segments();
    int idx = static_cast<int>(segs.size()) - 1;
    for (size_t i = 0; i < segs.size(); ++i) {
        if (u < segs[i].arc_offset + segs[i].length) {
            idx = static_cast<int>(i);
            break;
        }
    }
    double r = u - segs[idx].arc_offset;
    r = std::min(std::max(r, 1e-12), segs[idx].length - 1e-12);
    const double phi = std::acos(1.0 - 2.0 * rng.next_unit());
    return {idx, r, phi};
}

}  // namespace lorentz::skew
