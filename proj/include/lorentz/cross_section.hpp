#pragma once

#include <utility>
#include <vector>

#include "lorentz/cell_law.hpp"
#include "lorentz/lattice.hpp"
#include "lorentz/rng.hpp"

namespace lorentz::skew {

/// One open interval of the transparent wall: the part of a cell polygon
/// edge not covered by fixed scatterers. Endpoints are excluded.
struct WallSegment {
    int edge;          // index into lattice().edges()
    double lo, hi;     // sub-interval of the edge, in edge arc units
    Vec2 a;            // plane point at local r = 0
    Vec2 tangent;      // unit, along increasing r
    Vec2 inward;       // unit inward normal of the cell
    double length;
    double arc_offset;  // start of this segment in the global arc coordinate of J
};

/// Point of the cross-section: velocity points inward, so the geometric ray
/// is cos(phi) * tangent + sin(phi) * inward.
struct CrossSectionPoint {
    int segment;
    double r;    // local arc coordinate in (0, length)
    double phi;  // in (0, pi)
};

/// The set J: the scatterer-free part of the cell boundary as a disjoint
/// union of open intervals with global arc coordinates.
class CrossSection {
  public:
    static CrossSection build(const ensemble::CellLaw& law);

    const ensemble::Lattice& lattice() const { return *lat_; }
    const std::vector<WallSegment>& segments() const { return segments_; }
    double total_length() const { return total_; }

    /// Map a wall crossing (edge, arc along the full edge) to a segment-local
    /// coordinate. Throws CornerCrossingError within tol of a segment
    /// endpoint (polygon corners and fixed-scatterer trim points alike).
    std::pair<int, double> locate(int edge, double u_len, double tol = 1e-12) const;

    Ray point_to_ray(const CrossSectionPoint& x) const;
    /// phi of a velocity v at a point of the given segment (v must point inward).
    double phi_of(int segment, const Vec2& v) const;

    double global_arc(const CrossSectionPoint& x) const;

  private:
    const ensemble::Lattice* lat_ = nullptr;
    std::vector<WallSegment> segments_;
    double total_ = 0;
};

/// mu_1-distributed cross-section point: position uniform over J, angle with
/// density sin(phi)/2.
CrossSectionPoint sample_mu1(const CrossSection& cs, HashStream& rng);

}  // namespace lorentz::skew
