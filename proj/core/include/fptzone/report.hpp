#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fptzone/barrier.hpp"
#include "fptzone/bounds.hpp"
#include "fptzone/classify.hpp"
#include "fptzone/simulate.hpp"

namespace fptzone {

// Reads a barrier document:
//   {"mu": 0.0, "sigma": 1.0, "v0": 1.0, "k": 0.5,
//    "tilde": "2*sqrt(t)",            // expression in the barrier DSL
//    "ln_a": "0.01*t",                // optional currency adjustment
//    "profile": {...}}                // optional declared tail behaviour
// profile: {"kind": "simple", "term": {"kind": "sqrt_t", "c": 2.0}}
//        | {"kind": "oscillating", "lower": {...}, "upper": {...}}
//        | {"kind": "custom_limits", "limits": {"i_minus": "inf", ...,
//           "ibar": [[0.0, "inf"], [0.5, 1.2], ...]}}
// Extended reals are numbers or the string "inf".
// Throws InputError on malformed documents.
BarrierSpec parse_barrier_spec(const std::string& json_text);

// Inverse of parse_barrier_spec up to canonicalization (the anchor fold
// happens at construction, so the emitted document re-parses to an equal
// spec).
std::string render_barrier_spec(const BarrierSpec& spec);

std::string render_zone_report(const BarrierSpec& spec, const RiskZone& zone,
                               const AsymptoticLimits& limits);

// Bound list plus skip notes; +inf values encode as the string "inf".
// crossing_prob carries the everywhere-defined crossing probability of
// linear-drift barriers when the caller computed one.
std::string render_bound_reports(const BarrierSpec& spec, const std::vector<BoundReport>& bounds,
                                 const std::vector<std::string>& notes,
                                 std::optional<double> crossing_prob = std::nullopt);

std::string render_simulation_report(const BarrierSpec& spec, const FptSampleSet& samples,
                                     const FptEstimate& est);

// One row per path: path_id,crossed,time
std::string render_samples_csv(const FptSampleSet& samples);

std::string render_consistency_report(const BarrierSpec& spec, const ConsistencyReport& rep);

// Single-line {"error": code, "detail": message} for stderr.
std::string render_error(const std::string& code, const std::string& detail);

}  // namespace fptzone
