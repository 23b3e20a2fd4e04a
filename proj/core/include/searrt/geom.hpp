#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace searrt::geom {

/// Position in the local flat North-East frame, meters.
struct Point {
    double north = 0.0;
    double east = 0.0;

    Point operator+(const Point& o) const { return {north + o.north, east + o.east}; }
    Point operator-(const Point& o) const { return {north - o.north, east - o.east}; }
    Point operator*(double s) const { return {north * s, east * s}; }

    double norm() const { return std::hypot(north, east); }
    double distance_to(const Point& o) const { return std::hypot(north - o.north, east - o.east); }
    bool finite() const { return std::isfinite(north) && std::isfinite(east); }
};

/// Angle normalized to [0, 2pi). Headings and bearings are measured
/// clockwise from North (marine convention).
class Angle {
public:
    Angle() = default;

    static Angle radians(double raw);

    /// Value in [0, 2pi).
    double value() const { return rad_; }

    /// Value remapped to (-pi, pi].
    double signed_value() const {
        constexpr double pi = 3.14159265358979323846;
        return rad_ > pi ? rad_ - 2.0 * pi : rad_;
    }

    Angle operator+(double delta) const { return Angle::radians(rad_ + delta); }

private:
    explicit Angle(double normalized) : rad_(normalized) {}
    double rad_ = 0.0;
};

/// Wrap any finite angle into [0, 2pi). Throws std::invalid_argument on
/// NaN/infinity. Idempotent.
Angle normalize_angle(double raw);

/// Wrap into (-pi, pi].
double wrap_signed(double raw);

/// Closed angular interval on the circle, from `start` sweeping clockwise
/// by `span` radians (span in (0, 2pi]).
struct ArcInterval {
    Angle start;
    double span = 2.0 * 3.14159265358979323846;

    bool contains(Angle theta, double tol = 1e-9) const;
    Angle midpoint() const { return start + span / 2.0; }
    bool full_circle() const { return span >= 2.0 * 3.14159265358979323846 - 1e-12; }
};

/// Radius of an origin-centered axis-aligned ellipse at polar angle theta
/// measured from the a-axis: a*b / sqrt((b cos t)^2 + (a sin t)^2).
double polar_ellipse_radius(double a, double b, double theta);
double polar_ellipse_radius(double a, double b, Angle theta);

struct InfeasibleGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Turning radius required at a waypoint with radius of acceptance
/// `radius_of_acceptance` to transition from a leg with tangential angle
/// `leg_in` onto a leg with tangential angle `leg_out` (both clockwise
/// from North). Returns nullopt when the legs are collinear and
/// co-directed (straight-through, no turn needed). Throws
/// InfeasibleGeometryError on a full reversal (required radius zero).
std::optional<double> required_turning_radius(double radius_of_acceptance,
                                              Angle leg_in, Angle leg_out);

/// Distance from point p to the segment [a, b].
double segment_point_distance(const Point& a, const Point& b, const Point& p);

/// Bearing (clockwise from North) of `to` as seen from `from`.
Angle bearing(const Point& from, const Point& to);

}  // namespace searrt::geom
