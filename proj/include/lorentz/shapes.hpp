#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lorentz/types.hpp"

namespace lorentz {

struct Ray {
    Vec2 origin;
    Vec2 direction;  // unit within 1e-12
};

struct Disc {
    Vec2 center;
    double radius;
};

/// Axis-aligned semiaxes (a along local x, b along local y) rotated by `angle`.
struct Ellipse {
    Vec2 center;
    double a;
    double b;
    double angle;
};

/// Closed strictly convex C^3 curve reconstructed from uniformly spaced
/// boundary samples by trigonometric interpolation (so derivatives are exact
/// for the interpolant). Carries a precomputed arc-length table; evaluation
/// state is shared, copies are cheap.
class Parametric {
  public:
    /// `samples` must trace the boundary counterclockwise at parameters
    /// j/N, j = 0..N-1. Throws std::invalid_argument if the interpolated
    /// curve is not strictly convex.
    explicit Parametric(std::vector<Vec2> samples);

    Vec2 point(double t) const;   // t in [0,1)
    Vec2 deriv(double t) const;   // d xi / dt
    Vec2 deriv2(double t) const;

    double perimeter() const;
    double arc_of_param(double t) const;
    double param_of_arc(double r) const;
    double curvature_at_param(double t) const;

    const std::vector<Vec2>& samples() const;
    Parametric translated_by(const Vec2& v) const;

  private:
    struct Data;
    std::shared_ptr<const Data> d_;
    Parametric(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
};

using Shape = std::variant<Disc, Ellipse, Parametric>;

struct BoundaryPoint {
    Vec2 position;
    Vec2 tangent;  // unit, counterclockwise
    Vec2 normal;   // unit, outward
    double curvature;
};

double perimeter(const Shape& s);

/// Boundary data at arc-length coordinate r in [0, perimeter). r = 0 sits at
/// parameter angle 0 in the shape's own frame; r increases counterclockwise.
BoundaryPoint boundary_point(const Shape& s, double r);

/// Arc coordinate of the boundary point nearest to q (exact when q lies on
/// the boundary).
double arc_of_point(const Shape& s, const Vec2& q);

/// Smallest ray parameter strictly greater than min_dist at which the ray
/// meets the boundary; nullopt if it misses.
std::optional<double> ray_hit(const Shape& s, const Ray& ray, double min_dist);

bool contains(const Shape& s, const Vec2& p);

/// Unit outward normal at a boundary point q.
Vec2 outward_normal_at(const Shape& s, const Vec2& q);

/// max over the shape of q . dir for unit dir.
double support(const Shape& s, const Vec2& dir);

/// Distance from p to the shape (0 inside).
double distance_to_point(const Shape& s, const Vec2& p);

Shape translated(const Shape& s, const Vec2& v);

/// Exact for discs and ellipses, sampled for parametric shapes.
std::pair<double, double> curvature_range(const Shape& s);

/// Smallest width of the shape over all directions.
double min_width(const Shape& s);

std::string shape_to_kv(const Shape& s);
Shape shape_from_kv(const std::string& text);

}  // namespace lorentz
