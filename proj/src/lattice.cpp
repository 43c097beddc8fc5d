#include "lorentz/lattice.hpp"

#include <cmath>
#include <limits>

#include "lorentz/errors.hpp"

namespace lorentz::ensemble {

Lattice::Lattice(LatticeKind kind, Mat2 basis, std::vector<Vec2> vertices)
    : kind_(kind), basis_(basis), vertices_(std::move(vertices)) {
    inv_basis_ = basis_.inverse();
    area_ = std::abs(basis_.determinant());
    spacing_ = std::min(basis_.col(0).norm(), basis_.col(1).norm());

    circumradius_ = 0;
    for (const Vec2& v : vertices_) circumradius_ = std::max(circumradius_, v.norm());

    // Candidate neighbor directions: everything at plane distance <= one
    // cell diameter; an edge claims the one whose half-offset is its midpoint.
    std::vector<IVec2> candidates;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
            if (i || j) candidates.push_back({i, j});

    const int n = static_cast<int>(vertices_.size());
    inradius_ = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i) {
        WallEdge e;
        e.a = vertices_[i];
        e.b = vertices_[(i + 1) % n];
        e.length = (e.b - e.a).norm();
        e.tangent = (e.b - e.a) / e.length;
        e.inward = perp(e.tangent);
        const Vec2 mid = 0.5 * (e.a + e.b);
        inradius_ = std::min(inradius_, mid.norm());
        e.neighbor = {0, 0};
        for (IVec2 g : candidates) {
            if ((0.5 * to_plane(g) - mid).norm() < 1e-9) {
                e.neighbor = g;
                break;
            }
        }
        if (e.neighbor.is_zero()) throw ConfigError("cell polygon edge has no matching neighbor direction");
        edges_.push_back(e);
        neighbors_.push_back(e.neighbor);
        offsets_.push_back(to_plane(e.neighbor));
    }
}

const Lattice& Lattice::square() {
    static const Lattice lat = [] {
        Mat2 b;
        b << 1, 0, 0, 1;
        std::vector<Vec2> verts = {{0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}};
        return Lattice(LatticeKind::Square, b, verts);
    }();
    return lat;
}

const Lattice& Lattice::hex() {
    static const Lattice lat = [] {
        Mat2 b;
        b << 1, 0.5, 0, std::sqrt(3.0) / 2;
        std::vector<Vec2> verts;
        const double R = 1.0 / std::sqrt(3.0);
        for (int k = 0; k < 6; ++k) {
            const double ang = (-30.0 + 60.0 * k) * kPi / 180.0;
            verts.emplace_back(R * std::cos(ang), R * std::sin(ang));
        }
        return Lattice(LatticeKind::Hex, b, verts);
    }();
    return lat;
}

const Lattice& Lattice::of(LatticeKind kind) { return kind == LatticeKind::Square ? square() : hex(); }

IVec2 Lattice::cell_of(const Vec2& p) const {
    const Eigen::Vector2d x = inv_basis_ * p;
    const int cx = static_cast<int>(std::lround(x.x()));
    const int cy = static_cast<int>(std::lround(x.y()));
    IVec2 best{cx, cy};
    double best_d = std::numeric_limits<double>::max();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const IVec2 g{cx + i, cy + j};
            const double d = (p - to_plane(g)).squaredNorm();
            if (d < best_d - 1e-15 || (std::abs(d - best_d) <= 1e-15 && g < best)) {
                best_d = d;
                best = g;
            }
        }
    }
    return best;
}

bool Lattice::cell_contains(const Vec2& p, double tol) const {
    for (const WallEdge& e : edges_)
        if ((p - e.a).dot(e.inward) < -tol) return false;
    return true;
}

int Lattice::direction_index(IVec2 g) const {
    for (size_t k = 0; k < neighbors_.size(); ++k)
        if (neighbors_[k] == g) return static_cast<int>(k);
    return -1;
}

std::optional<WallCrossing> first_wall_crossing(const Ray& ray, const Lattice& lat, double min_t,
                                                double corner_tol) {
    const auto& edges = lat.edges();
    double best_t = std::numeric_limits<double>::max();
    int best_edge = -1;
    double best_u = 0;
    for (size_t i = 0; i < edges.size(); ++i) {
        const WallEdge& e = edges[i];
        const Vec2 seg = e.b - e.a;
        const double denom = cross2(ray.direction, seg);
        if (std::abs(denom) < 1e-15) continue;
        const Vec2 ao = e.a - ray.origin;
        const double t = cross2(ao, seg) / denom;
        const double u = cross2(ao, ray.direction) / denom;
        if (t <= min_t) continue;
        const double u_len = u * e.length;
        if (u_len < -corner_tol || u_len > e.length + corner_tol) continue;
        if (t < best_t) {
            best_t = t;
            best_edge = static_cast<int>(i);
            best_u = u_len;
        }
    }
    if (best_edge < 0) return std::nullopt;
    const WallEdge& e = edges[best_edge];
    if (best_u < corner_tol || best_u > e.length - corner_tol)
        throw CornerCrossingError("trajectory exits through a cell corner");
    return WallCrossing{best_edge, best_t, best_u, ray.origin + best_t * ray.direction};
}

}  // namespace lorentz::ensemble
