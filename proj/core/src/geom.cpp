#include "searrt/geom.hpp"

#include <algorithm>
#include <numbers>

namespace searrt::geom {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Angle Angle::radians(double raw) {
    if (!std::isfinite(raw)) {
        throw std::invalid_argument("normalize_angle: non-finite angle");
    }
    double r = std::fmod(raw, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // fmod rounding at the seam
    return Angle(r);
}

Angle normalize_angle(double raw) {
    return Angle::radians(raw);
}

double wrap_signed(double raw) {
    const double r = normalize_angle(raw).value();
    return r > std::numbers::pi ? r - kTwoPi : r;
}

bool ArcInterval::contains(Angle theta, double tol) const {
    if (full_circle()) return true;
    double off = theta.value() - start.value();
    if (off < 0.0) off += kTwoPi;
    return off <= span + tol || off >= kTwoPi - tol;
}

double polar_ellipse_radius(double a, double b, double theta) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("polar_ellipse_radius: axes must be positive");
    }
    const double c = b * std::cos(theta);
    const double s = a * std::sin(theta);
    return a * b / std::sqrt(c * c + s * s);
}

double polar_ellipse_radius(double a, double b, Angle theta) {
    return polar_ellipse_radius(a, b, theta.value());
}

std::optional<double> required_turning_radius(double radius_of_acceptance,
                                              Angle leg_in, Angle leg_out) {
    if (!(radius_of_acceptance > 0.0)) {
        throw std::invalid_argument("required_turning_radius: radius_of_acceptance must be positive");
    }
    const double phi =
        normalize_angle(leg_in.value() - leg_out.value() + std::numbers::pi).value();
    constexpr double eps = 1e-12;
    if (std::abs(phi - std::numbers::pi) < eps) {
        return std::nullopt;  // straight-through
    }
    if (phi < eps || kTwoPi - phi < eps) {
        throw InfeasibleGeometryError("required_turning_radius: full course reversal");
    }
    return std::abs(radius_of_acceptance * std::tan(phi / 2.0));
}

double segment_point_distance(const Point& a, const Point& b, const Point& p) {
    const Point ab = b - a;
    const double len2 = ab.north * ab.north + ab.east * ab.east;
    if (len2 <= 0.0) return p.distance_to(a);
    const Point ap = p - a;
    double t = (ap.north * ab.north + ap.east * ab.east) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return p.distance_to(a + ab * t);
}

Angle bearing(const Point& from, const Point& to) {
    const Point d = to - from;
    if (d.north == 0.0 && d.east == 0.0) {
        throw std::invalid_argument("bearing: coincident points");
    }
    return normalize_angle(std::atan2(d.east, d.north));
}

}  // namespace searrt::geom
