#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fptzone/asymptotics.hpp"
#include "fptzone/barrier.hpp"
#include "fptzone/classify.hpp"
#include "fptzone/errors.hpp"
#include "growth_internal.hpp"

namespace fptzone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Total order of growth rates used for dominance comparisons:
//   1 < t^p (p < 1/2) < sqrt(t) < sqrt(2 t ln ln t) < t^p (1/2 < p < 1) < t < superlinear
int growth_rank(const GrowthTerm& g) {
    switch (g.kind) {
        case GrowthKind::Constant: return 0;
        case GrowthKind::Power:
            if (g.p < 0.5) return 1;
            if (g.p == 0.5) return 2;
            if (g.p < 1.0) return 4;
            if (g.p == 1.0) return 5;
            return 6;
        case GrowthKind::SqrtT: return 2;
        case GrowthKind::SqrtTLogLog: return 3;
        case GrowthKind::Linear: return 5;
        case GrowthKind::Superlinear: return 6;
    }
    return 0;
}

bool is_scaled_kind(GrowthKind k) {
    return k == GrowthKind::Power || k == GrowthKind::SqrtT ||
           k == GrowthKind::SqrtTLogLog || k == GrowthKind::Linear;
}

// A zero coefficient on a scaled term means the term vanishes; treat it as
// the constant 0 so rank comparisons see the true growth.
GrowthTerm normalized(const GrowthTerm& g) {
    if (is_scaled_kind(g.kind) && g.c == 0.0) return GrowthTerm{GrowthKind::Constant, 0.0, 0.0};
    return g;
}

void validate_term(const GrowthTerm& g) {
    if (g.kind == GrowthKind::Power && !(g.p > 0.0)) {
        throw UnsupportedProfile("power profile requires a positive exponent");
    }
    if (g.kind != GrowthKind::Superlinear && !std::isfinite(g.c)) {
        throw UnsupportedProfile("profile coefficient must be finite");
    }
    if (g.kind == GrowthKind::Power && !std::isfinite(g.p)) {
        throw UnsupportedProfile("power profile exponent must be finite");
    }
}

// Sign of the limit of upper(t) - lower(t); +1, 0, or -1.
int envelope_order(const GrowthTerm& lower, const GrowthTerm& upper) {
    GrowthTerm lo = normalized(lower), up = normalized(upper);
    int rl = growth_rank(lo), ru = growth_rank(up);
    auto coeff = [](const GrowthTerm& g) {
        return g.kind == GrowthKind::Superlinear ? 1.0 : (g.c > 0.0 ? 1.0 : (g.c < 0.0 ? -1.0 : 0.0));
    };
    if (ru > rl) return coeff(up) >= 0.0 ? (coeff(up) > 0.0 ? 1 : 0) : -1;
    if (rl > ru) return coeff(lo) <= 0.0 ? (coeff(lo) < 0.0 ? 1 : 0) : -1;
    if (lo.kind == GrowthKind::Superlinear && up.kind == GrowthKind::Superlinear) return 0;
    double d = up.c - lo.c;
    return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
}

AsymptoticLimits limits_from_terms(const GrowthTerm& lower, const GrowthTerm& upper,
                                   const GbmParams& params) {
    const double sigma = params.sigma;
    AsymptoticLimits out;
    // liminf quantities follow the lower envelope, limsup quantities the upper.
    out.i_minus = detail::growth_ratio_limit(lower, GrowthKind::SqrtTLogLog, -sigma);
    out.s_minus = detail::growth_ratio_limit(upper, GrowthKind::SqrtTLogLog, -sigma);
    out.i_plus = detail::growth_ratio_limit(lower, GrowthKind::SqrtTLogLog, sigma);
    out.s_plus = detail::growth_ratio_limit(upper, GrowthKind::SqrtTLogLog, sigma);
    for (double eps : default_epsilon_grid(sigma)) {
        out.ibar.emplace_back(eps,
                              detail::growth_ratio_limit(lower, GrowthKind::SqrtT, sigma + eps));
    }
    out.sbar0 = detail::growth_ratio_limit(upper, GrowthKind::SqrtT, sigma);
    out.provenance = AsymptoticLimits::Provenance::Declared;
    return out;
}

}  // namespace

// The faster-growing side wins; a tie in growth rate compares coefficients,
// and equal coefficients give limit 1.
double detail::growth_ratio_limit(const GrowthTerm& term, GrowthKind ref_kind, double rc) {
    GrowthTerm g = normalized(term);
    int ra = growth_rank(g);
    int rr = growth_rank(GrowthTerm{ref_kind, 0.0, rc});

    if (ra > rr) {
        if (g.kind == GrowthKind::Superlinear) return kInf;
        return g.c > 0.0 ? kInf : 0.0;
    }
    if (ra < rr) {
        return rc > 0.0 ? 0.0 : kInf;
    }
    double d = g.c - rc;
    if (d > 0.0) return kInf;
    if (d < 0.0) return 0.0;
    return 1.0;
}

double AsymptoticLimits::ibar_at0() const {
    for (const auto& [eps, v] : ibar) {
        if (eps == 0.0) return v;
    }
    throw InconsistentLimits("ibar grid does not contain eps = 0");
}

bool AsymptoticLimits::partial_order_ok() const {
    if (ibar.empty()) return false;
    auto leq = [](double a, double b) { return a <= b; };
    if (!leq(i_plus, i_minus) || !leq(i_minus, s_minus)) return false;
    if (!leq(i_plus, s_plus) || !leq(s_plus, s_minus)) return false;
    if (!leq(s_plus, sbar0) || !leq(sbar0, s_minus)) return false;
    double prev_eps = -1.0, prev_val = kInf;
    for (const auto& [eps, v] : ibar) {
        if (eps < 0.0 || eps <= prev_eps) return false;      // ascending eps
        if (v > prev_val) return false;                      // non-increasing values
        if (!leq(v, i_minus) || !leq(i_plus, v)) return false;
        if (!leq(v, sbar0)) return false;
        prev_eps = eps;
        prev_val = v;
    }
    return ibar.front().first == 0.0;
}

std::vector<double> default_epsilon_grid(double sigma) {
    std::vector<double> eps;
    eps.push_back(0.0);
    for (int k = 20; k >= 0; --k) eps.push_back(sigma * std::ldexp(1.0, -k));
    return eps;
}

AsymptoticProfile AsymptoticProfile::constant(double c) {
    AsymptoticProfile p;
    p.term = {GrowthKind::Constant, 0.0, c};
    return p;
}
AsymptoticProfile AsymptoticProfile::power(double p_, double c) {
    AsymptoticProfile p;
    p.term = {GrowthKind::Power, p_, c};
    return p;
}
AsymptoticProfile AsymptoticProfile::sqrt_t(double c) {
    AsymptoticProfile p;
    p.term = {GrowthKind::SqrtT, 0.0, c};
    return p;
}
AsymptoticProfile AsymptoticProfile::sqrt_t_loglog(double c) {
    AsymptoticProfile p;
    p.term = {GrowthKind::SqrtTLogLog, 0.0, c};
    return p;
}
AsymptoticProfile AsymptoticProfile::linear(double c) {
    AsymptoticProfile p;
    p.term = {GrowthKind::Linear, 0.0, c};
    return p;
}
AsymptoticProfile AsymptoticProfile::superlinear() {
    AsymptoticProfile p;
    p.term = {GrowthKind::Superlinear, 0.0, 0.0};
    return p;
}
AsymptoticProfile AsymptoticProfile::oscillating(GrowthTerm lower, GrowthTerm upper) {
    AsymptoticProfile p;
    p.kind = Kind::Oscillating;
    p.lower = lower;
    p.upper = upper;
    return p;
}
AsymptoticProfile AsymptoticProfile::custom_limits(AsymptoticLimits limits) {
    AsymptoticProfile p;
    p.kind = Kind::CustomLimits;
    p.custom = std::move(limits);
    return p;
}

AsymptoticLimits limits_from_profile(const AsymptoticProfile& profile, const GbmParams& params) {
    params.validate();
    switch (profile.kind) {
        case AsymptoticProfile::Kind::Simple:
            validate_term(profile.term);
            return limits_from_terms(profile.term, profile.term, params);
        case AsymptoticProfile::Kind::Oscillating: {
            validate_term(profile.lower);
            validate_term(profile.upper);
            if (envelope_order(profile.lower, profile.upper) < 0) {
                throw UnsupportedProfile(
                    "oscillating profile requires the lower envelope to stay below the upper");
            }
            return limits_from_terms(profile.lower, profile.upper, params);
        }
        case AsymptoticProfile::Kind::CustomLimits: {
            if (!profile.custom) throw UnsupportedProfile("custom_limits profile without limits");
            AsymptoticLimits out = *profile.custom;
            out.provenance = AsymptoticLimits::Provenance::Declared;
            return out;
        }
    }
    throw UnsupportedProfile("unrecognized profile kind");
}

AsymptoticLimits probe_limits(const BarrierSpec& spec, const ProbeGrid& grid) {
    if (grid.n_points < 32) throw DegenerateGrid("probe grid needs at least 32 points");
    if (!(grid.t_min > std::exp(1.0))) throw DegenerateGrid("probe grid requires t_min > e");
    if (!(grid.t_max >= 1e6)) throw DegenerateGrid("probe grid requires t_max >= 1e6");
    if (!(grid.t_max > grid.t_min)) throw DegenerateGrid("probe grid requires t_max > t_min");

    const double sigma = spec.params().sigma;
    const std::size_t n = grid.n_points;
    const double log_lo = std::log(grid.t_min), log_hi = std::log(grid.t_max);

    // Log ratios of the barrier to each reference, evaluated across the grid.
    std::vector<double> lam_minus(n), lam_plus(n), lam_sqrt(n);
    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                         static_cast<double>(n - 1));
        ts[i] = t;
        double tilde = spec.tilde_effective(t);
        double lil = sigma * std::sqrt(2.0 * t * std::log(std::log(t)));
        lam_minus[i] = tilde + lil;
        lam_plus[i] = tilde - lil;
        lam_sqrt[i] = tilde - sigma * std::sqrt(t);  // ibar(eps) subtracts eps*sqrt(t) on top
    }

    const std::size_t tail_start = n / 2;
    auto tail_min = [&](const std::vector<double>& lam) {
        return *std::min_element(lam.begin() + tail_start, lam.end());
    };
    auto tail_max = [&](const std::vector<double>& lam) {
        return *std::max_element(lam.begin() + tail_start, lam.end());
    };

    AsymptoticLimits out;
    out.i_minus = std::exp(tail_min(lam_minus));
    out.s_minus = std::exp(tail_max(lam_minus));
    out.i_plus = std::exp(tail_min(lam_plus));
    out.s_plus = std::exp(tail_max(lam_plus));
    out.sbar0 = std::exp(tail_max(lam_sqrt));
    for (double eps : default_epsilon_grid(sigma)) {
        double m = kInf;
        for (std::size_t i = tail_start; i < n; ++i) {
            m = std::min(m, lam_sqrt[i] - eps * std::sqrt(ts[i]));
        }
        out.ibar.emplace_back(eps, std::exp(m));
    }
    out.provenance = AsymptoticLimits::Provenance::Probed;

    // An eventually monotone log ratio probes reliably even when it diverges;
    // grid inf/sup only mislead when the tail keeps reversing direction.
    double spread = tail_max(lam_minus) - tail_min(lam_minus);
    std::size_t reversals = 0;
    double prev_diff = 0.0;
    for (std::size_t i = tail_start + 1; i < n; ++i) {
        double diff = lam_minus[i] - lam_minus[i - 1];
        if (diff * prev_diff < 0.0) ++reversals;
        if (diff != 0.0) prev_diff = diff;
    }
    std::ostringstream summary;
    summary << "log grid [" << grid.t_min << ", " << grid.t_max << "], " << n << " points, tail "
            << (n - tail_start) << " points";
    if (spread > 0.1 && reversals >= 8) {
        summary << "; oscillation suspected (tail log-ratio spread " << spread << ")";
    }
    out.grid_summary = summary.str();
    return out;
}

}  // namespace fptzone
