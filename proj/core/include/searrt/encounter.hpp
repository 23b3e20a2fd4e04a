#pragma once

#include <stdexcept>

#include "searrt/geom.hpp"

namespace searrt::encounter {

using geom::Angle;
using geom::ArcInterval;
using geom::Point;

struct VesselState {
    Point position;
    double speed = 0.0;  // m/s, >= 0
    Angle heading;       // clockwise from North
    double length = 1.0;  // m, > 0

    /// Velocity in the North-East frame.
    Point velocity() const {
        return {speed * std::cos(heading.value()), speed * std::sin(heading.value())};
    }
    Point position_at(double t) const { return position + velocity() * t; }
};

/// Elliptical comfort zone around a vessel.
struct ShipDomain {
    double a_sd = 0.0;  // major axis, m
    double b_sd = 0.0;  // minor axis, m

    static ShipDomain from_length(double length) {
        if (!(length > 0.0)) throw std::invalid_argument("ShipDomain: length must be positive");
        return {8.0 * length, 3.2 * length};
    }
};

enum class EncounterKind {
    HeadOn,
    CrossingGiveWay,
    CrossingStandOn,
    OvertakingOwn,
    OvertakenByTarget,
    NoRisk,
};

const char* to_string(EncounterKind k);

struct EncounterAssessment {
    EncounterKind kind = EncounterKind::NoRisk;
    double cpa = 0.0;   // m
    double tcpa = 0.0;  // s, positive when closest approach lies ahead
    Angle relative_bearing;  // bearing of own ship as seen from the target

    /// True when own ship must maneuver (rules 13-15 give-way roles).
    bool requires_action() const {
        return kind == EncounterKind::HeadOn || kind == EncounterKind::CrossingGiveWay ||
               kind == EncounterKind::OvertakingOwn;
    }
};

/// Rule-permitted search region for the path deviation: an annulus around
/// the target's position at closest approach, restricted to the compliant
/// arc (half for head-on/crossing, full for overtaking).
struct CompliantRegion {
    Point center;
    double r_min = 0.0;
    double r_max = 0.0;
    ArcInterval allowed_arc;
    Point goal_point;

    bool contains(const Point& p, double tol = 1e-9) const;
};

struct DegenerateGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoActionRequiredError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Relative-speed threshold below which CPA geometry is degenerate.
inline constexpr double kMinRelativeSpeed = 1e-6;  // m/s

/// Time of closest approach under constant velocities; positive when the
/// approach lies in the future. Throws DegenerateGeometryError when the
/// relative speed is below kMinRelativeSpeed.
double tcpa(const VesselState& own, const VesselState& target);

/// Distance at closest approach; for diverging vessels (tcpa < 0) the
/// current separation is reported.
double cpa(const VesselState& own, const VesselState& target);

/// Comfort-zone test: true iff own ship at `own_position` lies inside or
/// on the domain ellipse centered at the target and aligned with its heading.
bool domain_violated(const Point& own_position, const VesselState& target,
                     const ShipDomain& domain);

/// Repeated domain checks against one constant-velocity target, with the
/// heading trig and axis scales hoisted out of the per-step loop.
class DomainTrack {
public:
    DomainTrack(const VesselState& target, const ShipDomain& domain)
        : p0_(target.position),
          sh_(std::sin(target.heading.value())),
          ch_(std::cos(target.heading.value())),
          vn_(target.speed * ch_),
          ve_(target.speed * sh_),
          inv_sa2_(4.0 / (domain.a_sd * domain.a_sd)),
          inv_sb2_(4.0 / (domain.b_sd * domain.b_sd)) {}

    /// Same predicate as domain_violated with the target advanced to time t.
    bool violated(const Point& own_position, double t) const {
        const double de = own_position.east - (p0_.east + ve_ * t);
        const double dn = own_position.north - (p0_.north + vn_ * t);
        const double along = de * sh_ + dn * ch_;
        const double across = de * ch_ - dn * sh_;
        return along * along * inv_sa2_ + across * across * inv_sb2_ <= 1.0;
    }

private:
    Point p0_;
    double sh_, ch_, vn_, ve_, inv_sa2_, inv_sb2_;
};

/// Signed angle in (-pi, pi] from the observer's heading to the line of
/// sight towards `observed`; positive to starboard.
double relative_bearing(const VesselState& observer, const Point& observed);

/// Classify the encounter per rules 13-15 with risk gates CPA < d_act and
/// 0 < TCPA < t_act.
EncounterAssessment classify_encounter(const VesselState& own, const VesselState& target,
                                       double d_act, double t_act);

/// Build the compliant sampling region for an encounter that requires own
/// ship action. Throws NoActionRequiredError for stand-on/no-risk kinds.
CompliantRegion compliant_region(const VesselState& own, const VesselState& target,
                                 const EncounterAssessment& assessment, double d_act,
                                 double t_act);

}  // namespace searrt::encounter
