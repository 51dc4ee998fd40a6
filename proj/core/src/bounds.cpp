#include "fptzone/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fptzone/errors.hpp"
#include "fptzone/quadrature.hpp"
#include "fptzone/special.hpp"
#include "growth_internal.hpp"

namespace fptzone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_supercritical(double sigma, double alpha) {
    if (!std::isfinite(alpha) || !(alpha > sigma)) {
        throw InvalidParams("bound requires alpha > sigma");
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Scan grid for switch-time detection. Log spacing on both sides of t = 1:
// twelve decades downward so domination onsets arbitrarily close to t = 0
// still get bracketed, then out to the horizon so late crossings are not
// missed.
std::vector<double> switch_scan_grid(double horizon) {
    constexpr std::size_t kPoints = 1024;
    constexpr std::size_t kHalf = kPoints / 2;
    std::vector<double> ts;
    ts.reserve(kPoints);
    const double cap = std::min(horizon, 1.0);
    const std::size_t n_low = horizon <= 1.0 ? kPoints : kHalf;
    const double decades = 12.0 * std::log(10.0);
    for (std::size_t i = 0; i < n_low; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(n_low - 1);
        ts.push_back(cap * std::exp(-decades * (1.0 - frac)));
    }
    ts.back() = cap;  // land exactly on the section boundary
    if (horizon <= 1.0) return ts;
    const double log_h = std::log(horizon);
    for (std::size_t i = 1; i <= kHalf; ++i) {
        ts.push_back(std::exp(log_h * static_cast<double>(i) / static_cast<double>(kHalf)));
    }
    return ts;
}

// True when the declared profile guarantees tilde_eff(t) - alpha sqrt(t) -> +inf,
// so domination past any finite scan horizon is implied rather than attested.
bool profile_certifies_domination(const BarrierSpec& spec, double alpha) {
    const auto& prof = spec.profile();
    if (!prof) return false;
    switch (prof->kind) {
        case AsymptoticProfile::Kind::Simple:
            return detail::growth_ratio_limit(prof->term, GrowthKind::SqrtT, alpha) == kInf;
        case AsymptoticProfile::Kind::Oscillating:
            // the lower envelope has to dominate, not just the peaks
            return detail::growth_ratio_limit(prof->lower, GrowthKind::SqrtT, alpha) == kInf;
        case AsymptoticProfile::Kind::CustomLimits:
            return false;
    }
    return false;
}

// Minimum of tilde_eff over [0, T]: 4096-point grid to bracket, then
// golden-section refinement around the best grid point.
double min_tilde_on_interval(const BarrierSpec& spec, double T) {
    constexpr std::size_t kGrid = 4096;
    double best = 0.0;  // tilde_eff(0) = 0 by construction
    std::size_t best_i = 0;
    std::vector<double> ts(kGrid + 1);
    for (std::size_t i = 0; i <= kGrid; ++i) {
        ts[i] = T * static_cast<double>(i) / static_cast<double>(kGrid);
        double v = spec.tilde_effective(ts[i]);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    double lo = ts[best_i == 0 ? 0 : best_i - 1];
    double hi = ts[best_i == kGrid ? kGrid : best_i + 1];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = spec.tilde_effective(x1), f2 = spec.tilde_effective(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, T); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = spec.tilde_effective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = spec.tilde_effective(x2);
        }
    }
    return std::min(best, std::min(f1, f2));
}

// Closed-form switch-time mean bound shared by the theorem and psi variants:
// T plus the truncated second moment over the supercritical tail.
double thm_bound_value(double q, double sigma, double alpha, double T) {
    const double denom = alpha * alpha - sigma * sigma;
    if (T == 0.0) return q * q / denom;
    const double s = sigma * std::sqrt(T);
    const double lo = alpha * std::sqrt(T);
    return T + truncated_second_moment(q, s, lo) / denom;
}

// Integral of x^2 w(x) dPhi_{q,s}(x) over [L, inf), where w is a survival
// weight bounded by 1 that tends to 1 as x grows. Numerically integrates up
// to q + 12 s and closes with the unweighted analytic tail, which keeps the
// result a valid upper bound.
double weighted_tail_integral(double q, double s, double L,
                              const std::function<double(double)>& weight, double* err_out) {
    const double hi = std::max(L, q + 12.0 * s);
    double value = 0.0, err = 0.0;
    if (hi > L) {
        auto f = [&](double x) { return x * x * weight(x) * normal_pdf((x - q) / s) / s; };
        QuadResult r = integrate(f, L, hi);
        value = r.value;
        err = r.error;
    }
    value += truncated_second_moment(q, s, hi);
    if (err_out) *err_out = err;
    return value;
}

}  // namespace

const char* bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::ExactMean: return "exact_mean";
        case BoundKind::ExactLinear: return "exact_linear";
        case BoundKind::UpperThm: return "upper_thm";
        case BoundKind::UpperPsiMin: return "upper_psi_min";
        case BoundKind::UpperPsiChord: return "upper_psi_chord";
        case BoundKind::LambertUpper: return "lambert_upper";
        case BoundKind::InverseUpper: return "inverse_upper";
        case BoundKind::InverseLower: return "inverse_lower";
    }
    return "unknown";
}

double mean_fpt_critical(const GbmParams& params, double alpha) {
    params.validate();
    if (!std::isfinite(alpha)) throw InvalidParams("alpha must be finite");
    if (!(alpha > params.sigma)) return kInf;
    const double q = params.q();
    return q * q / (alpha * alpha - params.sigma * params.sigma);
}

double find_t_switch(const BarrierSpec& spec, double alpha, double horizon, bool attest_beyond) {
    if (!std::isfinite(alpha) || !(alpha > 0.0)) {
        throw InvalidParams("switch-time scan requires alpha > 0");
    }
    if (!std::isfinite(horizon) || !(horizon > 0.0)) {
        throw InvalidParams("switch-time scan requires a positive finite horizon");
    }

    auto gap = [&](double t) { return spec.tilde_effective(t) - alpha * std::sqrt(t); };

    std::vector<double> ts = switch_scan_grid(horizon);
    std::vector<double> fs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) fs[i] = gap(ts[i]);

    if (fs.back() < 0.0) {
        throw NoDomination("barrier sits below the critical reference at t = " + fmt(ts.back()));
    }
    if (!attest_beyond && !profile_certifies_domination(spec, alpha)) {
        throw UnattestedTail(
            "domination beyond the scan horizon is neither implied by the declared profile "
            "nor attested by the caller");
    }

    std::size_t last_neg = ts.size();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (fs[i] < 0.0) last_neg = i;
    }
    if (last_neg == ts.size()) return 0.0;  // dominates across the whole scan

    double lo = ts[last_neg];
    double hi = ts[last_neg + 1];
    for (int it = 0; it < 200 && (hi - lo) > 1e-9; ++it) {
        double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    return hi;
}

BoundReport upper_bound_thm(const BarrierSpec& spec, double alpha, double t_switch) {
    const GbmParams& p = spec.params();
    require_supercritical(p.sigma, alpha);
    if (!std::isfinite(t_switch) || t_switch < 0.0) {
        throw InvalidParams("t_switch must be finite and non-negative");
    }
    BoundReport r;
    r.kind = BoundKind::UpperThm;
    r.t_switch = t_switch;
    r.value = thm_bound_value(p.q(), p.sigma, alpha, t_switch);
    r.assumptions = {"tilde_eff(t) >= alpha*sqrt(t) for all t >= t_switch",
                     "alpha > sigma"};
    return r;
}

double psi(double a, double b, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidParams("psi requires c > 0");
    if (a < 0.0 || b < 0.0) throw InvalidParams("psi requires a >= 0 and b >= 0");
    return 1.0 - std::exp(-2.0 * a * b / (c * c));
}

BoundReport upper_bound_psi(const BarrierSpec& spec, double alpha, double t_switch,
                            PsiVariant variant) {
    const GbmParams& p = spec.params();
    require_supercritical(p.sigma, alpha);
    if (!std::isfinite(t_switch) || !(t_switch > 0.0)) {
        throw InvalidParams("psi-weighted bounds require t_switch > 0");
    }

    const double q = p.q();
    const double sigma = p.sigma;
    const double T = t_switch;
    const double s = sigma * std::sqrt(T);
    const double L = alpha * std::sqrt(T);
    const double denom = alpha * alpha - sigma * sigma;

    BoundReport r;
    r.t_switch = T;
    double err = 0.0;

    if (variant == PsiVariant::MinOnInterval) {
        const double m = min_tilde_on_interval(spec, T);
        r.kind = BoundKind::UpperPsiMin;
        r.value = T + detail::psi_weighted_integral(q, sigma, alpha, T, m, &err) / denom;
        r.assumptions = {"tilde_eff(t) >= alpha*sqrt(t) for all t >= t_switch",
                         "alpha > sigma",
                         "weight uses the running minimum of tilde_eff on [0, t_switch], m = " +
                             fmt(m)};
    } else {
        // the weight replaces the barrier by its chord, so the barrier has to
        // sit above that chord on [0, T]
        const double tol = 1e-9 * (1.0 + L);
        for (int i = 1; i <= 1024; ++i) {
            double t = T * static_cast<double>(i) / 1024.0;
            double chord = L * t / T;
            if (spec.tilde_effective(t) < chord - tol) {
                throw ChordViolation("tilde_eff(t) falls below its chord at t = " + fmt(t));
            }
        }
        auto weight = [&](double x) { return psi(q, std::max(0.0, x - L), s); };
        r.kind = BoundKind::UpperPsiChord;
        r.value = T + weighted_tail_integral(q, s, L, weight, &err) / denom;
        r.assumptions = {"tilde_eff(t) >= alpha*sqrt(t) for all t >= t_switch",
                         "alpha > sigma",
                         "tilde_eff lies above its chord on [0, t_switch] "
                         "(spot-checked on 1024 points)"};
    }
    r.quadrature_error = err / denom;
    return r;
}

BoundReport lambert_upper(const GbmParams& params) {
    params.validate();
    const double x = params.q() / params.sigma;
    const double x2 = x * x;
    BoundReport r;
    r.kind = BoundKind::LambertUpper;
    r.value = x2 / lambert_w0(x2 / std::exp(1.0));
    r.assumptions = {"tilde(t) = sigma*sqrt(t*ln(1 + t))"};
    return r;
}

BoundReport inverse_bound(const std::function<double(double)>& tilde, double q,
                          InverseDirection direction) {
    if (!std::isfinite(q) || !(q > 0.0)) throw InvalidParams("inverse bound requires q > 0");

    BoundReport r;
    r.kind = direction == InverseDirection::UpperConvex ? BoundKind::InverseUpper
                                                        : BoundKind::InverseLower;
    r.assumptions = {direction == InverseDirection::UpperConvex
                         ? "tilde is convex and increasing (caller attested)"
                         : "tilde is concave and increasing (caller attested)"};

    if (tilde(0.0) >= q) {
        r.value = 0.0;
        return r;
    }

    double lo = 0.0, hi = 1.0;
    while (tilde(hi) < q) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw NoCrossing("tilde never reaches q within t <= 1e12");
    }

    double prev = tilde(0.0);
    for (int i = 1; i <= 1024; ++i) {
        double v = tilde(hi * static_cast<double>(i) / 1024.0);
        if (v < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
            throw NotMonotone("tilde is not non-decreasing on the bracketing interval");
        }
        prev = v;
    }

    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        (tilde(mid) < q ? lo : hi) = mid;
    }
    r.value = 0.5 * (lo + hi);
    return r;
}

double linear_crossing_prob(double c, double b) {
    if (!std::isfinite(c) || !(c < 0.0)) {
        throw InvalidParams("linear crossing requires a strictly negative intercept");
    }
    if (!std::isfinite(b)) throw InvalidParams("slope must be finite");
    if (b >= 0.0) return 1.0;
    return std::exp(-2.0 * std::abs(b) * std::abs(c));
}

namespace detail {

double psi_weighted_integral(double q, double sigma, double alpha, double T, double m,
                             double* err_out) {
    if (!(T > 0.0) || !(sigma > 0.0)) {
        throw InvalidParams("weighted integral requires T > 0 and sigma > 0");
    }
    if (!(m < q)) throw InvalidParams("weighted integral requires m < q");
    const double s = sigma * std::sqrt(T);
    const double L = alpha * std::sqrt(T);
    auto weight = [&](double x) { return psi(q - m, std::max(0.0, x - m), s); };
    return weighted_tail_integral(q, s, L, weight, err_out);
}

}  // namespace detail

}  // namespace fptzone
