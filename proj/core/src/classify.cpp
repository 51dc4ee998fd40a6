#include "fptzone/classify.hpp"

#include <cmath>
#include <sstream>

#include "fptzone/errors.hpp"

namespace fptzone {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

const char* zone_name(Zone z) {
    switch (z) {
        case Zone::Red: return "Red";
        case Zone::Yellow: return "Yellow";
        case Zone::Green: return "Green";
        case Zone::TwilightMeanUnknown: return "TwilightMeanUnknown";
        case Zone::TwilightFinitenessUnknown: return "TwilightFinitenessUnknown";
        case Zone::Dark: return "Dark";
    }
    return "Dark";
}

std::optional<Zone> zone_from_name(const std::string& name) {
    for (Zone z : {Zone::Red, Zone::Yellow, Zone::Green, Zone::TwilightMeanUnknown,
                   Zone::TwilightFinitenessUnknown, Zone::Dark}) {
        if (name == zone_name(z)) return z;
    }
    return std::nullopt;
}

bool RiskZone::asserts_crossing_certain() const {
    return zone == Zone::Red || zone == Zone::Yellow || zone == Zone::TwilightMeanUnknown;
}
bool RiskZone::asserts_finite_mean() const { return zone == Zone::Red; }
bool RiskZone::asserts_infinite_mean() const {
    return zone == Zone::Yellow || zone == Zone::Green || zone == Zone::TwilightFinitenessUnknown;
}
bool RiskZone::asserts_positive_survival() const { return zone == Zone::Green; }

RiskZone classify(const AsymptoticLimits& limits) {
    if (!limits.partial_order_ok()) {
        throw InconsistentLimits("limits violate their partial order; refusing to assign a zone");
    }
    RiskZone out;
    out.heuristic = limits.provenance == AsymptoticLimits::Provenance::Probed;

    // R1: domination of a strictly supercritical sqrt reference in liminf.
    for (const auto& [eps, v] : limits.ibar) {
        if (eps > 0.0 && v >= 1.0) {
            out.zone = Zone::Red;
            out.basis = {"R1: ibar(eps) = " + fmt(v) + " >= 1 at eps = " + fmt(eps) +
                         "; the barrier eventually dominates a strictly supercritical sqrt "
                         "reference, so crossing is certain and the mean passage time is finite"};
            return out;
        }
    }
    // R2: certain crossing with a strictly subcritical sqrt ceiling.
    if (limits.i_minus >= 1.0 && limits.sbar0 < 1.0) {
        out.zone = Zone::Yellow;
        out.basis = {"R2: i_minus = " + fmt(limits.i_minus) + " >= 1 and sbar0 = " +
                     fmt(limits.sbar0) +
                     " < 1; crossing is certain but the mean passage time is infinite"};
        return out;
    }
    // R3: the barrier falls below the lower iterated-logarithm envelope.
    if (limits.s_minus < 1.0) {
        out.zone = Zone::Green;
        out.basis = {"R3: s_minus = " + fmt(limits.s_minus) +
                     " < 1; survival for all time has positive probability (and the mean "
                     "passage time is infinite)"};
        return out;
    }
    // R4: certain crossing via the upper envelope, mean undecided.
    if (limits.s_plus > 1.0 && limits.ibar_at0() < 1.0) {
        out.zone = Zone::TwilightMeanUnknown;
        out.basis = {"R4: s_plus = " + fmt(limits.s_plus) + " > 1 while ibar(0) = " +
                     fmt(limits.ibar_at0()) +
                     " < 1; crossing is certain but the mean passage time is undecided"};
        return out;
    }
    // R5: certain crossing via the lower envelope, sqrt ceiling too high to
    // conclude an infinite mean.
    if (limits.i_minus >= 1.0) {
        out.zone = Zone::TwilightMeanUnknown;
        out.basis = {"R5: i_minus = " + fmt(limits.i_minus) + " >= 1 with sbar0 = " +
                     fmt(limits.sbar0) +
                     " >= 1; crossing is certain but the mean passage time is undecided"};
        return out;
    }
    // R6: infinite mean known, certainty of crossing not.
    if (limits.s_minus >= 1.0 && limits.i_minus < 1.0 && limits.sbar0 < 1.0) {
        out.zone = Zone::TwilightFinitenessUnknown;
        out.basis = {"R6: s_minus = " + fmt(limits.s_minus) + " >= 1, i_minus = " +
                     fmt(limits.i_minus) + " < 1, sbar0 = " + fmt(limits.sbar0) +
                     " < 1; the mean passage time is infinite but certainty of crossing is "
                     "undecided"};
        return out;
    }
    out.zone = Zone::Dark;
    out.basis = {"R7: no decision rule applies; neither certainty of crossing nor the mean "
                 "passage time is decided by the limits"};
    return out;
}

RiskZone classify_definite(double limit, std::optional<double> sbar0) {
    if (std::isnan(limit) || limit < 0.0) {
        throw InvalidParams("a definite limit must be a value in [0, inf]");
    }
    RiskZone out;
    out.heuristic = false;
    if (limit < 1.0) {
        out.zone = Zone::Green;
        out.basis = {"definite limit " + fmt(limit) +
                     " < 1; survival for all time has positive probability"};
        return out;
    }
    if (sbar0 && *sbar0 < 1.0) {
        out.zone = Zone::Yellow;
        out.basis = {"definite limit " + fmt(limit) + " >= 1 with sbar0 = " + fmt(*sbar0) +
                     " < 1; crossing is certain and the mean passage time is infinite"};
        return out;
    }
    out.zone = Zone::TwilightMeanUnknown;
    out.basis = {"definite limit " + fmt(limit) +
                 " >= 1; crossing is certain but the mean passage time is undecided"};
    return out;
}

RiskZone classify_spec(const BarrierSpec& spec, const ProbeGrid& grid) {
    if (spec.profile()) {
        return classify(limits_from_profile(*spec.profile(), spec.params()));
    }
    return classify(probe_limits(spec, grid));
}

}  // namespace fptzone
