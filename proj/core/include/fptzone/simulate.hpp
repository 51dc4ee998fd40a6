#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fptzone/barrier.hpp"
#include "fptzone/classify.hpp"

namespace fptzone {

struct SimConfig {
    std::size_t n_paths = 10000;
    double dt = 1e-3;
    double horizon = 100.0;
    std::uint64_t seed = 1;
    bool bridge_correction = true;
    bool antithetic = false;

    // ConfigError on non-positive sizes, dt > horizon, or an odd path count
    // with antithetic pairing.
    void validate() const;
};

struct PathOutcome {
    bool crossed = false;
    double time = 0.0;  // crossing time, or the horizon when censored
};

// Monte Carlo crossing-time samples. Outcomes are indexed by path, so results
// are bit-identical for a given (spec, config) regardless of thread count;
// wall_time_seconds is timing metadata and excluded from that contract.
struct FptSampleSet {
    SimConfig config;
    std::vector<PathOutcome> outcomes;
    double wall_time_seconds = 0.0;

    std::size_t n_censored() const;
    std::vector<double> crossing_times() const;  // strictly positive, <= horizon
};

struct TailFit {
    double slope = 0.0;     // least-squares slope of ln S(t) against ln t
    double residual = 0.0;  // root-mean-square fit residual
    std::size_t n_points = 0;
};

struct FptEstimate {
    std::size_t n_paths = 0;
    std::size_t n_censored = 0;
    double horizon = 0.0;
    double survival = 0.0;  // fraction censored at the horizon
    double survival_se = 0.0;
    double survival_lo95 = 0.0;  // Wilson 95% interval
    double survival_hi95 = 0.0;
    double truncated_mean = 0.0;  // mean of min(tau, horizon)
    double truncated_mean_se = 0.0;
    // Present when at least 8 crossings fall in [horizon/10, horizon].
    std::optional<TailFit> tail;
};

// First passage of the value process through the barrier, simulated in W
// space: exact Gaussian increments per step, direct crossing at the first
// grid point with W <= (tilde_eff(t) - q)/sigma, and (when enabled) a
// Brownian-bridge correction between grid points that are both strictly
// above the barrier, firing with probability exp(-2 d0 d1 / h) and placing
// the crossing at the interval midpoint. Each step consumes exactly one
// normal and one uniform from the path's private stream, so matched seeds
// stay aligned across bridge on/off and across barrier pairs.
//
// n_threads = 0 runs single-threaded; any value gives identical results.
FptSampleSet simulate_fpt(const BarrierSpec& spec, const SimConfig& config, int n_threads = 0);

// Estimator summaries; DegenerateSamples below 100 paths.
FptEstimate estimate(const FptSampleSet& samples);

struct DominanceReport {
    std::size_t n_paths = 0;
    std::size_t violations = 0;  // paths whose hi crossing lands in a later grid interval
    double max_excess = 0.0;     // largest tau_hi - tau_lo among violations
};

// Drives both barriers with common random numbers (shared increment and
// bridge draws) and counts violations of tau_hi <= tau_lo. The detector
// resolves crossings to one grid interval (bridge hits sit at interval
// midpoints, direct hits at the right endpoint), so times are compared at
// interval resolution: a bridge hit and a direct hit in the same step tie.
// With shared draws a higher barrier can never fire later at that
// resolution. Requires the same process parameters (mu, sigma, v0) on both
// specs, and checks B_hi(t) >= B_lo(t) on 1024 grid points over
// [0, horizon] before running; NotDominated when the check fails.
DominanceReport pathwise_dominance_check(const BarrierSpec& spec_hi, const BarrierSpec& spec_lo,
                                         const SimConfig& config);

enum class CheckStatus { Pass, Fail, Inconclusive };

const char* check_status_name(CheckStatus s);

struct ZoneCriterion {
    std::string name;
    CheckStatus status = CheckStatus::Inconclusive;
    std::string detail;
};

// Diagnostic cross-check of a claimed zone against simulation at escalating
// horizons; never overrides the classifier.
struct ConsistencyReport {
    Zone zone = Zone::Dark;
    std::vector<double> horizons;
    std::vector<FptEstimate> estimates;
    std::vector<ZoneCriterion> criteria;

    bool all_pass() const;          // every criterion passed
    bool any_inconclusive() const;  // at least one criterion is undecidable
};

// Runs one simulation per horizon (sub-seeds derived from config.seed) and
// grades the zone's decidable claims:
//   Red:    truncated mean stabilizes (relative change < 5% on the last
//           horizon pair) and final survival <= 0.01.
//   Yellow: survival strictly decreasing and < 0.05 at the last horizon;
//           truncated mean still growing (relative change >= 5%); tail
//           slope within [-0.7, -0.3].
//   Green:  survival plateau (last two horizons within 2 combined standard
//           errors) at a strictly positive level (> 2 standard errors).
//   Twilight/Dark: one inconclusive criterion; nothing is decidable.
// Horizons must be ascending with at least two entries (ConfigError).
ConsistencyReport zone_consistency_check(const BarrierSpec& spec, const RiskZone& zone,
                                         const SimConfig& config,
                                         const std::vector<double>& horizons);

}  // namespace fptzone
