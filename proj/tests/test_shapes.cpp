#include <doctest.h>

#include <cmath>

#include "lorentz/rng.hpp"
#include "lorentz/shapes.hpp"

using namespace lorentz;

namespace {

// boundary samples of an ellipse at uniform parameter spacing
std::vector<Vec2> ellipse_samples(const Ellipse& e, int n) {
    std::vector<Vec2> pts;
    for (int j = 0; j < n; ++j) {
        const double t = 2 * kPi * j / n;
        pts.push_back(e.center + rotated(Vec2(e.a * std::cos(t), e.b * std::sin(t)), e.angle));
    }
    return pts;
}

}  // namespace

TEST_CASE("disc boundary point and curvature") {
    Shape unit = Disc{Vec2(0, 0), 1.0};
    auto bp = boundary_point(unit, 0.0);
    CHECK(bp.position.x() == doctest::Approx(1.0));
    CHECK(bp.position.y() == doctest::Approx(0.0));
    CHECK(bp.curvature == doctest::Approx(1.0));
    CHECK(bp.tangent.dot(bp.normal) == doctest::Approx(0.0));
    // counterclockwise: moving along r increases the angle
    auto bp2 = boundary_point(unit, 0.1);
    CHECK(std::atan2(bp2.position.y(), bp2.position.x()) > 0);

    Shape big = Disc{Vec2(0, 0), 2.0};
    for (double r : {0.0, 1.0, 7.0}) CHECK(boundary_point(big, r).curvature == doctest::Approx(0.5));
}

TEST_CASE("ellipse curvature at the major axis end") {
    Shape e = Ellipse{Vec2(0, 0), 2.0, 1.0, 0.0};
    // closed form a/b^2 at parameter angle 0, where r = 0 sits
    auto bp = boundary_point(e, 0.0);
    CHECK(bp.curvature == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(bp.position.x() == doctest::Approx(2.0));

    // cross-check by finite differences of the arc-length parametrization
    const double h = 1e-5;
    auto p0 = boundary_point(e, perimeter(e) - h).position;
    auto p1 = bp.position;
    auto p2 = boundary_point(e, h).position;
    const Vec2 d1 = (p2 - p0) / (2 * h);
    const Vec2 d2 = (p2 - 2 * p1 + p0) / (h * h);
    const double kappa = cross2(d1, d2) / std::pow(d1.norm(), 3.0);
    CHECK(kappa == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("ellipse perimeter matches the complete elliptic integral") {
    const double a = 2.0, b = 1.0;
    Shape e = Ellipse{Vec2(0.3, -0.7), a, b, 0.4};
    const double k = std::sqrt(1 - b * b / (a * a));
    CHECK(perimeter(e) == doctest::Approx(4 * a * std::comp_ellint_2(k)).epsilon(1e-12));
}

TEST_CASE("arc coordinate round trip") {
    HashStream rng(7, 1);
    std::vector<Shape> shapes = {Disc{Vec2(0.2, 0.1), 0.8}, Ellipse{Vec2(-1, 2), 1.3, 0.6, 0.9}};
    for (const Shape& s : shapes) {
        const double L = perimeter(s);
        for (int i = 0; i < 50; ++i) {
            const double r = rng.uniform(0, L);
            const auto bp = boundary_point(s, r);
            CHECK(arc_of_point(s, bp.position) == doctest::Approx(r).epsilon(1e-9));
            CHECK(bp.tangent.norm() == doctest::Approx(1.0));
            CHECK(bp.normal.norm() == doctest::Approx(1.0));
            CHECK(bp.curvature > 0);
            // outward: stepping along the normal leaves the shape
            CHECK(!contains(s, bp.position + 1e-6 * bp.normal));
        }
    }
}

TEST_CASE("parametric shape reproduces the ellipse it was sampled from") {
    const Ellipse e{Vec2(0.1, 0.2), 1.1, 0.7, 0.3};
    Shape exact = e;
    Shape para = Parametric(ellipse_samples(e, 64));

    CHECK(perimeter(para) == doctest::Approx(perimeter(exact)).epsilon(1e-10));
    auto [klo, khi] = curvature_range(para);
    auto [klo_e, khi_e] = curvature_range(exact);
    CHECK(klo == doctest::Approx(klo_e).epsilon(1e-6));
    CHECK(khi == doctest::Approx(khi_e).epsilon(1e-6));

    HashStream rng(13, 0);
    for (int i = 0; i < 40; ++i) {
        const double ang = rng.uniform(0, 2 * kPi);
        const Vec2 dir(std::cos(ang), std::sin(ang));
        const Ray ray{Vec2(3.0 * std::cos(ang + 2), 3.0 * std::sin(ang + 2)), dir};
        auto h1 = ray_hit(exact, ray, 0.0);
        auto h2 = ray_hit(para, ray, 0.0);
        REQUIRE(h1.has_value() == h2.has_value());
        if (h1) CHECK(*h1 == doctest::Approx(*h2).epsilon(1e-8));
    }
    for (int i = 0; i < 20; ++i) {
        const Vec2 p(rng.uniform(-2, 2), rng.uniform(-2, 2));
        CHECK(contains(para, p) == contains(exact, p));
        CHECK(support(para, Vec2(std::cos(i), std::sin(i))) ==
              doctest::Approx(support(exact, Vec2(std::cos(i), std::sin(i)))).epsilon(1e-8));
    }
}

TEST_CASE("non-convex parametric curves are rejected at construction") {
    std::vector<Vec2> pts;
    for (int j = 0; j < 64; ++j) {
        const double t = 2 * kPi * j / 64;
        const double rad = 1.0 + 0.5 * std::cos(5 * t);  // strongly wavy: concave arcs
        pts.emplace_back(rad * std::cos(t), rad * std::sin(t));
    }
    CHECK_THROWS_AS(Parametric(pts), std::invalid_argument);
}

TEST_CASE("mildly perturbed convex curve is accepted and sane") {
    std::vector<Vec2> pts;
    for (int j = 0; j < 128; ++j) {
        const double t = 2 * kPi * j / 128;
        const double rad = 1.0 + 0.05 * std::cos(3 * t);
        pts.emplace_back(rad * std::cos(t), rad * std::sin(t));
    }
    Shape s = Parametric(pts);
    const double L = perimeter(s);
    CHECK(L > 2 * kPi * 0.9);
    const auto bp = boundary_point(s, 0.37 * L);
    CHECK(arc_of_point(s, bp.position) == doctest::Approx(0.37 * L).epsilon(1e-8));
    auto [klo, khi] = curvature_range(s);
    CHECK(klo > 0);
    CHECK(khi < 3.0);
}

TEST_CASE("shape kv serialization round-trips") {
    std::vector<Shape> shapes = {Disc{Vec2(0.25, -0.125), 0.46},
                                 Ellipse{Vec2(0.01, 0.02), 0.32, 0.2, 0.1}};
    for (const Shape& s : shapes) {
        const Shape back = shape_from_kv(shape_to_kv(s));
        for (int d = 0; d < 8; ++d) {
            const Vec2 u(std::cos(kPi * d / 4), std::sin(kPi * d / 4));
            CHECK(support(back, u) == support(s, u));  // exact: 17-digit round trip
        }
    }
    const Shape para = Parametric(ellipse_samples(Ellipse{Vec2(0, 0), 1.0, 0.8, 0.0}, 32));
    const Shape back = shape_from_kv(shape_to_kv(para));
    CHECK(perimeter(back) == doctest::Approx(perimeter(para)).epsilon(1e-14));
}

TEST_CASE("translated shapes move their support") {
    Shape s = Ellipse{Vec2(0, 0), 1.0, 0.5, 0.2};
    Shape t = translated(s, Vec2(2, -1));
    CHECK(support(t, Vec2(1, 0)) == doctest::Approx(support(s, Vec2(1, 0)) + 2));
    CHECK(support(t, Vec2(0, 1)) == doctest::Approx(support(s, Vec2(0, 1)) - 1));
}
