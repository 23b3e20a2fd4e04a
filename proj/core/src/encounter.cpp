#include "searrt/encounter.hpp"

#include <algorithm>
#include <numbers>

namespace searrt::encounter {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double deg(double d) { return d * kPi / 180.0; }
}  // namespace

const char* to_string(EncounterKind k) {
    switch (k) {
        case EncounterKind::HeadOn: return "head-on";
        case EncounterKind::CrossingGiveWay: return "crossing-give-way";
        case EncounterKind::CrossingStandOn: return "crossing-stand-on";
        case EncounterKind::OvertakingOwn: return "overtaking-own";
        case EncounterKind::OvertakenByTarget: return "overtaken-by-target";
        case EncounterKind::NoRisk: return "no-risk";
    }
    return "unknown";
}

bool CompliantRegion::contains(const Point& p, double tol) const {
    const double r = p.distance_to(center);
    const double rtol = tol * std::max(1.0, r_max);
    if (r < r_min - rtol || r > r_max + rtol) return false;
    if (r <= rtol) return true;  // at the center only when r_min ~ 0
    return allowed_arc.contains(geom::bearing(center, p), tol);
}

double tcpa(const VesselState& own, const VesselState& target) {
    const Point dp = target.position - own.position;
    const Point dv = target.velocity() - own.velocity();
    const double dv2 = dv.north * dv.north + dv.east * dv.east;
    if (std::sqrt(dv2) < kMinRelativeSpeed) {
        throw DegenerateGeometryError("tcpa: vessels share one velocity vector");
    }
    // argmin over t of |dp + dv t|
    return -(dp.north * dv.north + dp.east * dv.east) / dv2;
}

double cpa(const VesselState& own, const VesselState& target) {
    const double t = std::max(0.0, tcpa(own, target));
    return target.position_at(t).distance_to(own.position_at(t));
}

bool domain_violated(const Point& own_position, const VesselState& target,
                     const ShipDomain& domain) {
    const double de = own_position.east - target.position.east;
    const double dn = own_position.north - target.position.north;
    const double psi = target.heading.value();
    const double along = de * std::sin(psi) + dn * std::cos(psi);
    const double across = de * std::cos(psi) - dn * std::sin(psi);
    const double sa = domain.a_sd / 2.0;
    const double sb = domain.b_sd / 2.0;
    return (along * along) / (sa * sa) + (across * across) / (sb * sb) <= 1.0;
}

double relative_bearing(const VesselState& observer, const Point& observed) {
    const Angle los = geom::bearing(observer.position, observed);
    return geom::wrap_signed(los.value() - observer.heading.value());
}

EncounterAssessment classify_encounter(const VesselState& own, const VesselState& target,
                                       double d_act, double t_act) {
    if (!(d_act > 0.0) || !(t_act > 0.0)) {
        throw std::invalid_argument("classify_encounter: d_act and t_act must be positive");
    }
    EncounterAssessment a;
    a.tcpa = tcpa(own, target);
    a.cpa = cpa(own, target);
    const double beta = relative_bearing(target, own.position);
    a.relative_bearing = Angle::radians(beta);

    if (!(a.tcpa > 0.0) || a.tcpa >= t_act || a.cpa >= d_act) {
        a.kind = EncounterKind::NoRisk;
        return a;
    }
    if (std::abs(beta) > deg(112.5)) {
        a.kind = own.speed > target.speed ? EncounterKind::OvertakingOwn
                                          : EncounterKind::OvertakenByTarget;
    } else if (std::abs(beta) <= deg(3.5)) {
        a.kind = EncounterKind::HeadOn;
    } else if (beta > 0.0) {
        // Own ship on the target's starboard side: target gives way.
        a.kind = EncounterKind::CrossingStandOn;
    } else {
        a.kind = EncounterKind::CrossingGiveWay;
    }
    return a;
}

CompliantRegion compliant_region(const VesselState& own, const VesselState& target,
                                 const EncounterAssessment& assessment, double d_act,
                                 double t_act) {
    if (!assessment.requires_action()) {
        throw NoActionRequiredError(std::string("compliant_region: no action required for ") +
                                    to_string(assessment.kind));
    }
    CompliantRegion region;
    region.center = target.position_at(assessment.tcpa);
    region.r_min = d_act;
    const double reach = own.speed * t_act;
    const double enclose = 1.2 * (own.position.distance_to(region.center) + d_act);
    region.r_max = std::max(reach, enclose);

    const double psi_tv = target.heading.value();
    switch (assessment.kind) {
        case EncounterKind::HeadOn:
            // Port half-plane of the target's course line.
            region.allowed_arc = {Angle::radians(psi_tv - kPi), kPi};
            break;
        case EncounterKind::CrossingGiveWay:
            // Half-plane astern of the target's beam line.
            region.allowed_arc = {Angle::radians(psi_tv + kPi / 2.0), kPi};
            break;
        default:  // OvertakingOwn
            region.allowed_arc = {Angle::radians(0.0), 2.0 * kPi};
            break;
    }

    // Goal: exit of the nominal route (own heading ray) from the outer circle.
    const Point dir = {std::cos(own.heading.value()), std::sin(own.heading.value())};
    const Point rel = own.position - region.center;
    const double b = rel.north * dir.north + rel.east * dir.east;
    const double c = rel.north * rel.north + rel.east * rel.east - region.r_max * region.r_max;
    const double disc = b * b - c;  // start is inside the outer circle, so disc > 0
    const double t_exit = -b + std::sqrt(std::max(0.0, disc));
    region.goal_point = own.position + dir * t_exit;
    return region;
}

}  // namespace searrt::encounter
