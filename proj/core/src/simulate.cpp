#include "fptzone/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "fptzone/errors.hpp"
#include "fptzone/rng.hpp"

namespace fptzone {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Uniform grid in t with the horizon appended as a (possibly partial) last
// step; t[0] = 0.
std::vector<double> time_grid(double dt, double horizon) {
    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(horizon / dt) + 2);
    ts.push_back(0.0);
    for (std::size_t j = 1;; ++j) {
        double t = static_cast<double>(j) * dt;
        if (t >= horizon * (1.0 - 1e-12)) break;
        ts.push_back(t);
    }
    ts.push_back(horizon);
    return ts;
}

struct PrecomputedBarrier {
    std::vector<double> ts;
    std::vector<double> bhat;    // W-space barrier on the grid
    std::vector<double> sqrt_h;  // per-step increment scale
};

PrecomputedBarrier precompute(const BarrierSpec& spec, const SimConfig& cfg) {
    PrecomputedBarrier g;
    g.ts = time_grid(cfg.dt, cfg.horizon);
    WspaceBarrier wb = to_wspace(spec);
    g.bhat.resize(g.ts.size());
    g.sqrt_h.resize(g.ts.size());
    for (std::size_t j = 0; j < g.ts.size(); ++j) {
        g.bhat[j] = wb(g.ts[j]);
        g.sqrt_h[j] = j == 0 ? 0.0 : std::sqrt(g.ts[j] - g.ts[j - 1]);
    }
    return g;
}

// One path. Every step consumes exactly one normal and one uniform, whether
// or not the bridge check runs, so streams stay aligned across configurations
// that share a seed.
PathOutcome run_path(std::size_t i, const SimConfig& cfg, const PrecomputedBarrier& g) {
    const std::uint64_t stream = cfg.antithetic ? (i & ~std::uint64_t{1}) : i;
    const bool flip = cfg.antithetic && (i & 1);
    PathRng rng(cfg.seed, stream);

    PathOutcome out;
    out.crossed = false;
    out.time = cfg.horizon;

    double w = 0.0;
    for (std::size_t j = 1; j < g.ts.size(); ++j) {
        double z = rng.normal();
        double u = rng.uniform01();
        if (flip) z = -z;
        const double w_prev = w;
        w += g.sqrt_h[j] * z;

        if (w <= g.bhat[j]) {
            out.crossed = true;
            out.time = g.ts[j];
            return out;
        }
        if (cfg.bridge_correction) {
            const double h = g.ts[j] - g.ts[j - 1];
            const double d0 = w_prev - g.bhat[j - 1];
            const double d1 = w - g.bhat[j];
            const double e2 = 2.0 * d0 * d1 / h;
            // exp(-40) is below the smallest value uniform01 can produce, so
            // skipping the exp there cannot change any outcome
            if (e2 < 40.0 && u < std::exp(-e2)) {
                out.crossed = true;
                out.time = 0.5 * (g.ts[j - 1] + g.ts[j]);
                return out;
            }
        }
    }
    return out;
}

void run_range(std::size_t lo, std::size_t hi, const SimConfig& cfg, const PrecomputedBarrier& g,
               std::vector<PathOutcome>& out) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = run_path(i, cfg, g);
}

double relative_change(double a, double b) {
    const double denom = std::max(std::abs(a), 1e-300);
    return std::abs(b - a) / denom;
}

ZoneCriterion grade(std::string name, bool pass, std::string detail) {
    return {std::move(name), pass ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)};
}

}  // namespace

void SimConfig::validate() const {
    if (n_paths == 0) throw ConfigError("n_paths must be at least 1");
    if (!std::isfinite(dt) || !(dt > 0.0)) throw ConfigError("dt must be positive and finite");
    if (!std::isfinite(horizon) || !(horizon > 0.0)) {
        throw ConfigError("horizon must be positive and finite");
    }
    if (dt > horizon) throw ConfigError("dt must not exceed the horizon");
    if (antithetic && (n_paths % 2) != 0) {
        throw ConfigError("antithetic pairing requires an even n_paths");
    }
}

std::size_t FptSampleSet::n_censored() const {
    std::size_t n = 0;
    for (const auto& o : outcomes) {
        if (!o.crossed) ++n;
    }
    return n;
}

std::vector<double> FptSampleSet::crossing_times() const {
    std::vector<double> ts;
    ts.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        if (o.crossed) ts.push_back(o.time);
    }
    return ts;
}

FptSampleSet simulate_fpt(const BarrierSpec& spec, const SimConfig& config, int n_threads) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const PrecomputedBarrier grid = precompute(spec, config);

    FptSampleSet set;
    set.config = config;
    set.outcomes.resize(config.n_paths);

    if (n_threads <= 1) {
        run_range(0, config.n_paths, config, grid, set.outcomes);
    } else {
        const std::size_t workers =
            std::min<std::size_t>(static_cast<std::size_t>(n_threads), config.n_paths);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (config.n_paths + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(config.n_paths, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi, std::cref(config), std::cref(grid),
                              std::ref(set.outcomes));
        }
        for (auto& th : pool) th.join();
    }

    set.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return set;
}

FptEstimate estimate(const FptSampleSet& samples) {
    const std::size_t n = samples.outcomes.size();
    if (n < 100) throw DegenerateSamples("estimators need at least 100 paths");

    FptEstimate e;
    e.n_paths = n;
    e.horizon = samples.config.horizon;
    e.n_censored = samples.n_censored();

    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(e.n_censored) / nn;
    e.survival = p;
    e.survival_se = std::sqrt(p * (1.0 - p) / nn);

    // Wilson 95% interval
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    e.survival_lo95 = std::max(0.0, center - half);
    e.survival_hi95 = std::min(1.0, center + half);

    double sum = 0.0, sum2 = 0.0;
    for (const auto& o : samples.outcomes) {
        const double x = std::min(o.time, e.horizon);
        sum += x;
        sum2 += x * x;
    }
    e.truncated_mean = sum / nn;
    const double var = std::max(0.0, (sum2 - nn * e.truncated_mean * e.truncated_mean) / (nn - 1.0));
    e.truncated_mean_se = std::sqrt(var / nn);

    // tail decay: least squares of ln S against ln t over the last decade of
    // observed crossings, dropping the S = 0 endpoint
    std::vector<double> times = samples.crossing_times();
    std::sort(times.begin(), times.end());
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t < e.horizon / 10.0 || t > e.horizon) continue;
        const double s = (nn - static_cast<double>(i + 1)) / nn;
        if (s <= 0.0) continue;
        lx.push_back(std::log(t));
        ly.push_back(std::log(s));
    }
    if (lx.size() >= 8) {
        const double m = static_cast<double>(lx.size());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= m;
        my /= m;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        if (sxx > 0.0) {
            TailFit fit;
            fit.slope = sxy / sxx;
            fit.n_points = lx.size();
            const double b0 = my - fit.slope * mx;
            double ss = 0.0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                const double r = ly[i] - (b0 + fit.slope * lx[i]);
                ss += r * r;
            }
            fit.residual = std::sqrt(ss / m);
            e.tail = fit;
        }
    }
    return e;
}

DominanceReport pathwise_dominance_check(const BarrierSpec& spec_hi, const BarrierSpec& spec_lo,
                                         const SimConfig& config) {
    config.validate();
    const GbmParams& ph = spec_hi.params();
    const GbmParams& pl = spec_lo.params();
    if (ph.mu != pl.mu || ph.sigma != pl.sigma || ph.v0 != pl.v0) {
        throw InvalidParams("dominance check requires identical process parameters");
    }

    // ln B_hi(t) >= ln B_lo(t) on a 1024-point grid; the shared drift cancels
    for (int i = 0; i <= 1024; ++i) {
        const double t = config.horizon * static_cast<double>(i) / 1024.0;
        const double lhs = std::log(ph.k) + spec_hi.tilde_effective(t);
        const double rhs = std::log(pl.k) + spec_lo.tilde_effective(t);
        if (lhs < rhs - 1e-12 * (1.0 + std::abs(rhs))) {
            throw NotDominated("upper barrier falls below the lower one at t = " + fmt(t));
        }
    }

    const FptSampleSet hi = simulate_fpt(spec_hi, config);
    const FptSampleSet lo = simulate_fpt(spec_lo, config);

    DominanceReport rep;
    rep.n_paths = config.n_paths;
    // interval index of a crossing: midpoints and the right endpoint of the
    // same step must compare equal, so ceil with a half-ulp guard
    auto interval_of = [&](double time) {
        return static_cast<std::uint64_t>(std::ceil(time / config.dt - 1e-9));
    };
    for (std::size_t i = 0; i < config.n_paths; ++i) {
        const double tau_hi = hi.outcomes[i].time;
        const double tau_lo = lo.outcomes[i].time;
        if (interval_of(tau_hi) > interval_of(tau_lo)) {
            ++rep.violations;
            rep.max_excess = std::max(rep.max_excess, tau_hi - tau_lo);
        }
    }
    return rep;
}

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

bool ConsistencyReport::all_pass() const {
    for (const auto& c : criteria) {
        if (c.status != CheckStatus::Pass) return false;
    }
    return !criteria.empty();
}

bool ConsistencyReport::any_inconclusive() const {
    for (const auto& c : criteria) {
        if (c.status == CheckStatus::Inconclusive) return true;
    }
    return false;
}

ConsistencyReport zone_consistency_check(const BarrierSpec& spec, const RiskZone& zone,
                                         const SimConfig& config,
                                         const std::vector<double>& horizons) {
    config.validate();
    if (horizons.size() < 2) throw ConfigError("consistency check needs at least two horizons");
    for (std::size_t i = 0; i + 1 < horizons.size(); ++i) {
        if (!(horizons[i] < horizons[i + 1])) {
            throw ConfigError("consistency horizons must be strictly ascending");
        }
    }

    ConsistencyReport rep;
    rep.zone = zone.zone;
    rep.horizons = horizons;

    for (std::size_t i = 0; i < horizons.size(); ++i) {
        SimConfig cfg = config;
        cfg.horizon = horizons[i];
        cfg.seed = config.seed ^ (0x9E3779B97F4A7C15ULL * (i + 1));
        rep.estimates.push_back(estimate(simulate_fpt(spec, cfg)));
    }

    const FptEstimate& last = rep.estimates.back();
    const FptEstimate& prev = rep.estimates[rep.estimates.size() - 2];

    switch (zone.zone) {
        case Zone::Red: {
            const double rel = relative_change(prev.truncated_mean, last.truncated_mean);
            rep.criteria.push_back(grade(
                "truncated mean stabilizes", rel < 0.05,
                "relative change " + fmt(rel) + " on horizons " + fmt(prev.horizon) + " -> " +
                    fmt(last.horizon)));
            rep.criteria.push_back(grade("survival vanishes", last.survival <= 0.01,
                                         "final survival " + fmt(last.survival)));
            break;
        }
        case Zone::Yellow: {
            bool decreasing = true;
            for (std::size_t i = 0; i + 1 < rep.estimates.size(); ++i) {
                if (!(rep.estimates[i + 1].survival < rep.estimates[i].survival)) {
                    decreasing = false;
                }
            }
            rep.criteria.push_back(grade("survival decays toward zero",
                                         decreasing && last.survival < 0.05,
                                         "final survival " + fmt(last.survival) +
                                             (decreasing ? ", strictly decreasing"
                                                         : ", not strictly decreasing")));
            const double rel = relative_change(prev.truncated_mean, last.truncated_mean);
            rep.criteria.push_back(grade("truncated mean keeps growing", rel >= 0.05,
                                         "relative change " + fmt(rel)));
            if (last.tail) {
                const double s = last.tail->slope;
                rep.criteria.push_back(grade("tail slope in [-0.7, -0.3]",
                                             s >= -0.7 && s <= -0.3, "slope " + fmt(s)));
            } else {
                rep.criteria.push_back({"tail slope in [-0.7, -0.3]", CheckStatus::Inconclusive,
                                        "too few tail crossings for a fit"});
            }
            break;
        }
        case Zone::Green: {
            const double gap = std::abs(last.survival - prev.survival);
            const double se = std::sqrt(last.survival_se * last.survival_se +
                                        prev.survival_se * prev.survival_se);
            rep.criteria.push_back(grade("survival plateaus", gap <= 2.0 * se,
                                         "gap " + fmt(gap) + " vs 2se " + fmt(2.0 * se)));
            rep.criteria.push_back(
                grade("plateau strictly positive", last.survival > 2.0 * last.survival_se,
                      "survival " + fmt(last.survival) + " vs 2se " + fmt(2.0 * last.survival_se)));
            break;
        }
        default: {
            rep.criteria.push_back({"zone is undecidable", CheckStatus::Inconclusive,
                                    "no decidable claims to verify; estimates reported for "
                                    "diagnostics only"});
            break;
        }
    }
    return rep;
}

}  // namespace fptzone
