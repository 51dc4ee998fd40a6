#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fptzone/asymptotics.hpp"
#include "fptzone/barrier.hpp"

namespace fptzone {

// Flag zones, ordered from worst to best knowledge of default:
//
//   Red       crossing is certain and the mean passage time is finite
//   Yellow    crossing is certain but the mean passage time is infinite
//   Green     survival for all time has positive probability (mean infinite)
//   TwilightMeanUnknown        crossing certain, mean undecided
//   TwilightFinitenessUnknown  mean infinite, certainty of crossing undecided
//   Dark      neither certainty of crossing nor the mean is decided
//
// Every zone is compatible with P(crossing) > 0; no zone asserts that
// crossing is impossible.
enum class Zone {
    Red,
    Yellow,
    Green,
    TwilightMeanUnknown,
    TwilightFinitenessUnknown,
    Dark,
};

const char* zone_name(Zone z);
std::optional<Zone> zone_from_name(const std::string& name);

struct RiskZone {
    Zone zone = Zone::Dark;
    std::vector<std::string> basis;  // the decision rule that fired, with its criterion
    bool heuristic = false;          // true when derived from probed (grid) limits

    bool asserts_crossing_certain() const;
    bool asserts_finite_mean() const;
    bool asserts_infinite_mean() const;
    bool asserts_positive_survival() const;
};

// Translates a declared tail profile into the six comparison limits for the
// given parameters. Throws UnsupportedProfile for malformed profiles
// (oscillating envelopes out of order, zero-coefficient power terms, ...).
AsymptoticLimits limits_from_profile(const AsymptoticProfile& profile, const GbmParams& params);

// Estimates the six limits by evaluating the barrier-to-reference log ratios
// on a finite grid and taking inf/sup over the grid tail. The result is a
// heuristic: provenance is set to Probed and everything downstream carries a
// heuristic flag. Throws DegenerateGrid when the grid violates ProbeGrid's
// documented requirements.
AsymptoticLimits probe_limits(const BarrierSpec& spec, const ProbeGrid& grid = ProbeGrid{});

// Applies the decision rules in precedence order (first match wins):
//
//   R1  ibar(eps) >= 1 for some tested eps > 0        -> Red
//   R2  i_minus >= 1 and sbar0 < 1                    -> Yellow
//   R3  s_minus < 1                                   -> Green
//   R4  s_plus > 1 and ibar(0) < 1                    -> TwilightMeanUnknown
//   R5  i_minus >= 1 (and sbar0 >= 1)                 -> TwilightMeanUnknown
//   R6  s_minus >= 1, i_minus < 1, sbar0 < 1          -> TwilightFinitenessUnknown
//   R7  otherwise                                     -> Dark
//
// Boundary ties resolve toward the weaker claim, as written above. Throws
// InconsistentLimits when the limits violate their partial order.
RiskZone classify(const AsymptoticLimits& limits);

// Special case for barriers whose ratio to the iterated-logarithm references
// has a definite limit (liminf = limsup = limit): limit < 1 means survival
// has positive probability (Green); limit >= 1 means crossing is certain
// (Yellow when a limsup sbar0 < 1 is also supplied, otherwise the mean stays
// undecided).
RiskZone classify_definite(double limit, std::optional<double> sbar0 = std::nullopt);

// Convenience: declared profile when present, probed limits otherwise.
RiskZone classify_spec(const BarrierSpec& spec, const ProbeGrid& grid = ProbeGrid{});

}  // namespace fptzone
