#pragma once

#include <optional>
#include <vector>

#include "lorentz/shapes.hpp"
#include "lorentz/types.hpp"

namespace lorentz::ensemble {

enum class LatticeKind { Square, Hex };

struct WallEdge {
    Vec2 a, b;       // polygon edge, counterclockwise
    Vec2 tangent;    // unit, a -> b
    Vec2 inward;     // unit inward normal
    double length;
    IVec2 neighbor;  // primitive direction of the cell across this edge
};

/// Co-compact lattice together with its fundamental cell polygon (Voronoi
/// cell, centered at the origin) and the edge-sharing neighbor set G.
class Lattice {
  public:
    static const Lattice& square();
    static const Lattice& hex();
    static const Lattice& of(LatticeKind kind);

    LatticeKind kind() const { return kind_; }
    const Mat2& basis() const { return basis_; }
    double cell_area() const { return area_; }
    double spacing() const { return spacing_; }
    double circumradius() const { return circumradius_; }
    double inradius() const { return inradius_; }

    Vec2 to_plane(IVec2 g) const { return basis_ * Eigen::Vector2d(g.x, g.y); }
    /// Cached plane offset of neighbors()[k]; bitwise identical across uses.
    const Vec2& neighbor_offset(int k) const { return offsets_[k]; }

    IVec2 cell_of(const Vec2& p) const;
    bool cell_contains(const Vec2& p, double tol = 1e-12) const;

    const std::vector<Vec2>& vertices() const { return vertices_; }
    const std::vector<WallEdge>& edges() const { return edges_; }
    const std::vector<IVec2>& neighbors() const { return neighbors_; }
    int direction_index(IVec2 g) const;

  private:
    Lattice(LatticeKind kind, Mat2 basis, std::vector<Vec2> vertices);

    LatticeKind kind_;
    Mat2 basis_;
    Mat2 inv_basis_;
    double area_, spacing_, circumradius_, inradius_;
    std::vector<Vec2> vertices_;
    std::vector<WallEdge> edges_;
    std::vector<IVec2> neighbors_;
    std::vector<Vec2> offsets_;
};

struct WallCrossing {
    int edge;
    double t;       // ray parameter
    double u_len;   // arc position along the edge, in [0, length]
    Vec2 point;
};

/// First crossing of the cell polygon boundary at ray parameter > min_t.
/// Throws CornerCrossingError when the crossing lies within corner_tol of a
/// polygon vertex.
std::optional<WallCrossing> first_wall_crossing(const Ray& ray, const Lattice& lat, double min_t,
                                                double corner_tol = 1e-12);

}  // namespace lorentz::ensemble
