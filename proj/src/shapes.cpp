#include "lorentz/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lorentz/kv.hpp"

namespace lorentz {

namespace {

// ---------------------------------------------------------------- ellipse --

double ellipse_speed(const Ellipse& e, double t) {
    const double st = std::sin(t), ct = std::cos(t);
    return std::sqrt(e.a * e.a * st * st + e.b * e.b * ct * ct);
}

// Arc length from parameter 0, using incomplete elliptic integrals on the
// first quadrant and symmetry elsewhere.
double ellipse_arc_quadrant(const Ellipse& e, double u) {
    if (e.b >= e.a) {
        const double k = std::sqrt(1.0 - (e.a / e.b) * (e.a / e.b));
        return e.b * std::ellint_2(k, u);
    }
    const double k = std::sqrt(1.0 - (e.b / e.a) * (e.b / e.a));
    return e.a * (std::comp_ellint_2(k) - std::ellint_2(k, kPi / 2 - u));
}

double ellipse_arc(const Ellipse& e, double t) {
    t = wrap(t, 2 * kPi);
    const double quarter = ellipse_arc_quadrant(e, kPi / 2);
    const int q = std::min(3, static_cast<int>(t / (kPi / 2)));
    const double u = t - q * (kPi / 2);
    switch (q) {
        case 0: return ellipse_arc_quadrant(e, u);
        case 1: return 2 * quarter - ellipse_arc_quadrant(e, kPi / 2 - u);
        case 2: return 2 * quarter + ellipse_arc_quadrant(e, u);
        default: return 4 * quarter - ellipse_arc_quadrant(e, kPi / 2 - u);
    }
}

double ellipse_param_of_arc(const Ellipse& e, double r) {
    const double total = 4 * ellipse_arc_quadrant(e, kPi / 2);
    r = wrap(r, total);
    double lo = 0, hi = 2 * kPi;
    double t = 2 * kPi * r / total;
    for (int it = 0; it < 60; ++it) {
        const double f = ellipse_arc(e, t) - r;
        if (f > 0)
            hi = t;
        else
            lo = t;
        const double step = f / ellipse_speed(e, t);
        double next = t - step;
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
        if (std::abs(next - t) < 1e-15) { t = next; break; }
        t = next;
    }
    return t;
}

Vec2 ellipse_local(const Ellipse& e, const Vec2& q) { return rotated(q - e.center, -e.angle); }

// ------------------------------------------------------------- parametric --

// Integral of the cubic Hermite basis over [0, x], x in [0, 1].
struct HermiteAccum {
    double i00, i10, i01, i11;
    explicit HermiteAccum(double x) {
        const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
        i00 = 0.5 * x4 - x3 + x;
        i10 = 0.25 * x4 - (2.0 / 3.0) * x3 + 0.5 * x2;
        i01 = -0.5 * x4 + x3;
        i11 = 0.25 * x4 - x3 / 3.0;
    }
};

}  // namespace

struct Parametric::Data {
    int n = 0;                           // number of input samples
    std::vector<double> ax, bx, ay, by;  // trig coefficients, index 0..n/2
    std::vector<Vec2> samples;

    // dense evaluation grid over the parameter circle [0, 1)
    static constexpr int kGrid = 2048;
    std::vector<Vec2> gp, gd;       // point and first derivative at grid nodes
    std::vector<double> gs, gds;    // speed and its derivative at grid nodes
    std::vector<double> arc;        // arc-length prefix at grid nodes, arc[0] = 0
    double total = 0;

    Vec2 eval(double t, int order) const {
        // order 0: point, 1: first, 2: second derivative
        const int half = n / 2;
        double sx = 0, sy = 0;
        if (order == 0) {
            sx = 0.5 * ax[0];
            sy = 0.5 * ay[0];
        }
        const double base = 2 * kPi * t;
        for (int k = 1; k <= half; ++k) {
            const double w = 2 * kPi * k;
            const double c = std::cos(k * base), s = std::sin(k * base);
            double cax = ax[k], cbx = bx[k], cay = ay[k], cby = by[k];
            if (k == half) { cax *= 0.5; cay *= 0.5; cbx = 0; cby = 0; }
            switch (order) {
                case 0:
                    sx += cax * c + cbx * s;
                    sy += cay * c + cby * s;
                    break;
                case 1:
                    sx += w * (-cax * s + cbx * c);
                    sy += w * (-cay * s + cby * c);
                    break;
                default:
                    sx += w * w * (-cax * c - cbx * s);
                    sy += w * w * (-cay * c - cby * s);
                    break;
            }
        }
        return Vec2(sx, sy);
    }

    double arc_at(double t) const {
        t = wrap(t, 1.0);
        const double h = 1.0 / kGrid;
        const int k = std::min(kGrid - 1, static_cast<int>(t * kGrid));
        const double x = (t - k * h) / h;
        const int k1 = (k + 1) % kGrid;
        HermiteAccum I(x);
        const double seg = h * (gs[k] * I.i00 + h * gds[k] * I.i10 +
                                gs[k1] * I.i01 + h * gds[k1] * I.i11);
        return arc[k] + seg;
    }

    double speed_at(double t) const {
        Vec2 d = eval(t, 1);
        return d.norm();
    }

    double param_at_arc(double r) const {
        r = wrap(r, total);
        const auto it = std::upper_bound(arc.begin(), arc.end(), r);
        int k = static_cast<int>(it - arc.begin()) - 1;
        k = std::clamp(k, 0, kGrid - 1);
        const double h = 1.0 / kGrid;
        double lo = k * h, hi = (k + 1) * h;
        double t = lo + (hi - lo) * 0.5;
        for (int i = 0; i < 60; ++i) {
            const double f = arc_at(t) - r;
            if (f > 0)
                hi = t;
            else
                lo = t;
            double next = t - f / speed_at(t);
            if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
            if (std::abs(next - t) < 1e-16) { t = next; break; }
            t = next;
        }
        return t;
    }
};

Parametric::Parametric(std::vector<Vec2> samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("parametric shape needs an even number (>= 8) of samples");
    auto d = std::make_shared<Data>();
    d->n = n;
    d->samples = samples;
    const int half = n / 2;
    d->ax.assign(half + 1, 0.0);
    d->bx.assign(half + 1, 0.0);
    d->ay.assign(half + 1, 0.0);
    d->by.assign(half + 1, 0.0);
    for (int k = 0; k <= half; ++k) {
        double cx = 0, sx = 0, cy = 0, sy = 0;
        for (int j = 0; j < n; ++j) {
            const double ang = 2 * kPi * k * j / n;
            const double c = std::cos(ang), s = std::sin(ang);
            cx += samples[j].x() * c;
            sx += samples[j].x() * s;
            cy += samples[j].y() * c;
            sy += samples[j].y() * s;
        }
        d->ax[k] = 2.0 * cx / n;
        d->bx[k] = 2.0 * sx / n;
        d->ay[k] = 2.0 * cy / n;
        d->by[k] = 2.0 * sy / n;
    }

    const int M = Data::kGrid;
    d->gp.resize(M);
    d->gd.resize(M);
    d->gs.resize(M);
    d->gds.resize(M);
    d->arc.resize(M);
    for (int i = 0; i < M; ++i) {
        const double t = static_cast<double>(i) / M;
        d->gp[i] = d->eval(t, 0);
        d->gd[i] = d->eval(t, 1);
        Vec2 dd = d->eval(t, 2);
        const double sp = d->gd[i].norm();
        if (sp < 1e-9) throw std::invalid_argument("parametric curve has a near-stationary point");
        const double curv = cross2(d->gd[i], dd) / (sp * sp * sp);
        if (curv <= 1e-9) throw std::invalid_argument("parametric curve is not strictly convex (counterclockwise)");
        d->gs[i] = sp;
        d->gds[i] = d->gd[i].dot(dd) / sp;
    }
    const double h = 1.0 / M;
    double acc = 0;
    for (int i = 0; i < M; ++i) {
        d->arc[i] = acc;
        const int i1 = (i + 1) % M;
        HermiteAccum I(1.0);
        acc += h * (d->gs[i] * I.i00 + h * d->gds[i] * I.i10 + d->gs[i1] * I.i01 + h * d->gds[i1] * I.i11);
    }
    d->total = acc;
    d_ = std::move(d);
}

Vec2 Parametric::point(double t) const { return d_->eval(wrap(t, 1.0), 0); }
Vec2 Parametric::deriv(double t) const { return d_->eval(wrap(t, 1.0), 1); }
Vec2 Parametric::deriv2(double t) const { return d_->eval(wrap(t, 1.0), 2); }
double Parametric::perimeter() const { return d_->total; }
double Parametric::arc_of_param(double t) const { return d_->arc_at(t); }
double Parametric::param_of_arc(double r) const { return d_->param_at_arc(r); }
const std::vector<Vec2>& Parametric::samples() const { return d_->samples; }

double Parametric::curvature_at_param(double t) const {
    Vec2 d1 = deriv(t), d2 = deriv2(t);
    const double sp = d1.norm();
    return cross2(d1, d2) / (sp * sp * sp);
}

Parametric Parametric::translated_by(const Vec2& v) const {
    auto d = std::make_shared<Data>(*d_);
    d->ax[0] += 2 * v.x();  // constant term is ax[0]/2
    d->ay[0] += 2 * v.y();
    for (auto& p : d->samples) p += v;
    for (auto& p : d->gp) p += v;
    return Parametric(std::move(d));
}

// ------------------------------------------------------------ dispatchers --

double perimeter(const Shape& s) {
    return std::visit(
        [](const auto& sh) -> double {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) return 2 * kPi * sh.radius;
            else if constexpr (std::is_same_v<T, Ellipse>) return 4 * ellipse_arc_quadrant(sh, kPi / 2);
            else return sh.perimeter();
        },
        s);
}

BoundaryPoint boundary_point(const Shape& s, double r) {
    return std::visit(
        [r](const auto& sh) -> BoundaryPoint {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                const double theta = r / sh.radius;
                const Vec2 n(std::cos(theta), std::sin(theta));
                return {sh.center + sh.radius * n, perp(n), n, 1.0 / sh.radius};
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const double t = ellipse_param_of_arc(sh, r);
                const double st = std::sin(t), ct = std::cos(t);
                const Vec2 pos = sh.center + rotated(Vec2(sh.a * ct, sh.b * st), sh.angle);
                Vec2 tan = rotated(Vec2(-sh.a * st, sh.b * ct), sh.angle).normalized();
                const double den = sh.a * sh.a * st * st + sh.b * sh.b * ct * ct;
                const double curv = sh.a * sh.b / (den * std::sqrt(den));
                return {pos, tan, -perp(tan), curv};
            } else {
                const double t = sh.param_of_arc(r);
                Vec2 tan = sh.deriv(t).normalized();
                return {sh.point(t), tan, -perp(tan), sh.curvature_at_param(t)};
            }
        },
        s);
}

namespace {

// Nearest parameter on a parametric curve, by coarse grid scan plus local
// Newton on (xi(t) - q) . xi'(t) = 0.
double parametric_nearest_param(const Parametric& sh, const Vec2& q) {
    double best_t = 0, best_d = std::numeric_limits<double>::max();
    const int coarse = 128;
    for (int i = 0; i < coarse; ++i) {
        const double t = static_cast<double>(i) / coarse;
        const double dist = (sh.point(t) - q).squaredNorm();
        if (dist < best_d) { best_d = dist; best_t = t; }
    }
    double t = best_t;
    for (int it = 0; it < 30; ++it) {
        const Vec2 p = sh.point(t), d1 = sh.deriv(t), d2 = sh.deriv2(t);
        const double g = (p - q).dot(d1);
        const double dg = d1.squaredNorm() + (p - q).dot(d2);
        if (dg == 0) break;
        const double step = g / dg;
        t = wrap(t - step, 1.0);
        if (std::abs(step) < 1e-15) break;
    }
    return t;
}

}  // namespace

double arc_of_point(const Shape& s, const Vec2& q) {
    return std::visit(
        [&q](const auto& sh) -> double {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                const Vec2 rel = q - sh.center;
                return wrap(std::atan2(rel.y(), rel.x()), 2 * kPi) * sh.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const Vec2 l = ellipse_local(sh, q);
                const double t = wrap(std::atan2(l.y() / sh.b, l.x() / sh.a), 2 * kPi);
                return ellipse_arc(sh, t);
            } else {
                return sh.arc_of_param(parametric_nearest_param(sh, q));
            }
        },
        s);
}

std::optional<double> ray_hit(const Shape& s, const Ray& ray, double min_dist) {
    return std::visit(
        [&](const auto& sh) -> std::optional<double> {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                const Vec2 oc = ray.origin - sh.center;
                const double b = oc.dot(ray.direction);
                const double c = oc.squaredNorm() - sh.radius * sh.radius;
                const double disc = b * b - c;
                if (disc < 0) return std::nullopt;
                const double sq = std::sqrt(disc);
                if (-b - sq > min_dist) return -b - sq;
                if (-b + sq > min_dist) return -b + sq;
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const Vec2 ol = ellipse_local(sh, ray.origin);
                const Vec2 dl = rotated(ray.direction, -sh.angle);
                const Vec2 o2(ol.x() / sh.a, ol.y() / sh.b);
                const Vec2 d2(dl.x() / sh.a, dl.y() / sh.b);
                const double A = d2.squaredNorm();
                const double B = o2.dot(d2);
                const double C = o2.squaredNorm() - 1.0;
                const double disc = B * B - A * C;
                if (disc < 0) return std::nullopt;
                const double sq = std::sqrt(disc);
                const double s1 = (-B - sq) / A, s2 = (-B + sq) / A;
                if (s1 > min_dist) return s1;
                if (s2 > min_dist) return s2;
                return std::nullopt;
            } else {
                // Signed offset of the curve from the ray's line; strictly
                // convex curves have exactly two parameters with tangent
                // parallel to the ray, splitting the circle into two arcs on
                // which the offset is monotone.
                const Vec2 o = ray.origin, d = ray.direction;
                auto f = [&](double t) { return cross2(d, sh.point(t) - o); };
                auto fp = [&](double t) { return cross2(d, sh.deriv(t)); };
                const int M = 256;
                std::vector<double> turning;
                double prev = fp(0);
                for (int i = 1; i <= M; ++i) {
                    const double t = static_cast<double>(i) / M;
                    const double cur = fp(t);
                    if ((prev <= 0 && cur > 0) || (prev >= 0 && cur < 0)) {
                        double lo = static_cast<double>(i - 1) / M, hi = t;
                        for (int it = 0; it < 80; ++it) {
                            const double mid = 0.5 * (lo + hi);
                            if ((fp(lo) <= 0) == (fp(mid) <= 0))
                                lo = mid;
                            else
                                hi = mid;
                        }
                        turning.push_back(0.5 * (lo + hi));
                    }
                    prev = cur;
                }
                if (turning.size() != 2) return std::nullopt;  // degenerate direction
                double best = std::numeric_limits<double>::max();
                for (int arc = 0; arc < 2; ++arc) {
                    double lo = turning[arc];
                    double hi = (arc == 0) ? turning[1] : turning[0] + 1.0;
                    if (f(lo) == 0 || f(hi) == 0 || (f(lo) < 0) != (f(hi) < 0)) {
                        for (int it = 0; it < 90; ++it) {
                            const double mid = 0.5 * (lo + hi);
                            if ((f(lo) <= 0) == (f(mid) <= 0))
                                lo = mid;
                            else
                                hi = mid;
                        }
                        const double t = wrap(0.5 * (lo + hi), 1.0);
                        const double sray = (sh.point(t) - o).dot(d);
                        if (sray > min_dist) best = std::min(best, sray);
                    }
                }
                if (best == std::numeric_limits<double>::max()) return std::nullopt;
                return best;
            }
        },
        s);
}

bool contains(const Shape& s, const Vec2& p) {
    return std::visit(
        [&p](const auto& sh) -> bool {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                return (p - sh.center).squaredNorm() < sh.radius * sh.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const Vec2 l = ellipse_local(sh, p);
                const double u = l.x() / sh.a, v = l.y() / sh.b;
                return u * u + v * v < 1.0;
            } else {
                const double t = parametric_nearest_param(sh, p);
                const Vec2 n = -perp(sh.deriv(t).normalized());
                return (p - sh.point(t)).dot(n) < 0;
            }
        },
        s);
}

Vec2 outward_normal_at(const Shape& s, const Vec2& q) {
    return std::visit(
        [&q](const auto& sh) -> Vec2 {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                return (q - sh.center).normalized();
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const Vec2 l = ellipse_local(sh, q);
                const Vec2 grad(l.x() / (sh.a * sh.a), l.y() / (sh.b * sh.b));
                return rotated(grad, sh.angle).normalized();
            } else {
                const double t = parametric_nearest_param(sh, q);
                return -perp(sh.deriv(t).normalized());
            }
        },
        s);
}

double support(const Shape& s, const Vec2& dir) {
    return std::visit(
        [&dir](const auto& sh) -> double {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                return sh.center.dot(dir) + sh.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const Vec2 dl = rotated(dir, -sh.angle);
                return sh.center.dot(dir) + std::sqrt(sh.a * sh.a * dl.x() * dl.x() + sh.b * sh.b * dl.y() * dl.y());
            } else {
                double best_t = 0, best = -std::numeric_limits<double>::max();
                const int coarse = 128;
                for (int i = 0; i < coarse; ++i) {
                    const double t = static_cast<double>(i) / coarse;
                    const double v = sh.point(t).dot(dir);
                    if (v > best) { best = v; best_t = t; }
                }
                double t = best_t;
                for (int it = 0; it < 30; ++it) {
                    const double g = sh.deriv(t).dot(dir);
                    const double dg = sh.deriv2(t).dot(dir);
                    if (dg >= 0) break;  // not at a max bracket
                    const double step = g / dg;
                    t = wrap(t - step, 1.0);
                    if (std::abs(step) < 1e-15) break;
                }
                return sh.point(t).dot(dir);
            }
        },
        s);
}

double distance_to_point(const Shape& s, const Vec2& p) {
    if (contains(s, p)) return 0.0;
    return std::visit(
        [&p](const auto& sh) -> double {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                return std::max(0.0, (p - sh.center).norm() - sh.radius);
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                // Newton on the nearest-point condition in parameter space.
                const Vec2 l = ellipse_local(sh, p);
                double t = std::atan2(l.y() * sh.a, l.x() * sh.b);
                for (int it = 0; it < 50; ++it) {
                    const Vec2 xi(sh.a * std::cos(t), sh.b * std::sin(t));
                    const Vec2 d1(-sh.a * std::sin(t), sh.b * std::cos(t));
                    const Vec2 d2(-sh.a * std::cos(t), -sh.b * std::sin(t));
                    const double g = (xi - l).dot(d1);
                    const double dg = d1.squaredNorm() + (xi - l).dot(d2);
                    if (dg == 0) break;
                    const double step = g / dg;
                    t -= step;
                    if (std::abs(step) < 1e-14) break;
                }
                return (Vec2(sh.a * std::cos(t), sh.b * std::sin(t)) - l).norm();
            } else {
                const double t = parametric_nearest_param(sh, p);
                return (sh.point(t) - p).norm();
            }
        },
        s);
}

Shape translated(const Shape& s, const Vec2& v) {
    return std::visit(
        [&v](const auto& sh) -> Shape {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) return Disc{sh.center + v, sh.radius};
            else if constexpr (std::is_same_v<T, Ellipse>) return Ellipse{sh.center + v, sh.a, sh.b, sh.angle};
            else return sh.translated_by(v);
        },
        s);
}

std::pair<double, double> curvature_range(const Shape& s) {
    return std::visit(
        [](const auto& sh) -> std::pair<double, double> {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                return {1.0 / sh.radius, 1.0 / sh.radius};
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const double mn = std::min(sh.a, sh.b), mx = std::max(sh.a, sh.b);
                return {mn / (mx * mx), mx / (mn * mn)};
            } else {
                double lo = std::numeric_limits<double>::max(), hi = 0;
                const int M = 1024;
                for (int i = 0; i < M; ++i) {
                    const double c = sh.curvature_at_param(static_cast<double>(i) / M);
                    lo = std::min(lo, c);
                    hi = std::max(hi, c);
                }
                return {lo, hi};
            }
        },
        s);
}

double min_width(const Shape& s) {
    return std::visit(
        [&s](const auto& sh) -> double {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                return 2 * sh.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                return 2 * std::min(sh.a, sh.b);
            } else {
                double best = std::numeric_limits<double>::max();
                const int M = 256;
                for (int i = 0; i < M; ++i) {
                    const double ang = kPi * i / M;
                    const Vec2 u(std::cos(ang), std::sin(ang));
                    best = std::min(best, support(s, u) + support(s, -u));
                }
                return best;
            }
        },
        s);
}

std::string shape_to_kv(const Shape& s) {
    KvDoc doc;
    std::visit(
        [&doc](const auto& sh) {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, Disc>) {
                doc.add("kind", "disc");
                doc.add_pair("center", sh.center.x(), sh.center.y());
                doc.add("radius", sh.radius);
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                doc.add("kind", "ellipse");
                doc.add_pair("center", sh.center.x(), sh.center.y());
                doc.add_pair("semiaxes", sh.a, sh.b);
                doc.add("orientation", sh.angle);
            } else {
                doc.add("kind", "parametric");
                for (const Vec2& p : sh.samples()) doc.add_pair("sample", p.x(), p.y());
            }
        },
        s);
    return doc.to_string();
}

Shape shape_from_kv(const std::string& text) {
    KvDoc doc = KvDoc::parse(text);
    const std::string kind = doc.get("kind");
    if (kind == "disc") {
        auto c = doc.get_doubles("center");
        return Disc{Vec2(c.at(0), c.at(1)), doc.get_double("radius")};
    }
    if (kind == "ellipse") {
        auto c = doc.get_doubles("center");
        auto ab = doc.get_doubles("semiaxes");
        return Ellipse{Vec2(c.at(0), c.at(1)), ab.at(0), ab.at(1), doc.get_double("orientation")};
    }
    if (kind == "parametric") {
        std::vector<Vec2> pts;
        for (const std::string& line : doc.get_all("sample")) {
            KvDoc tmp;
            tmp.add("v", line);
            auto xy = tmp.get_doubles("v");
            pts.emplace_back(xy.at(0), xy.at(1));
        }
        return Parametric(std::move(pts));
    }
    throw ConfigError("unknown shape kind: " + kind);
}

}  // namespace lorentz
