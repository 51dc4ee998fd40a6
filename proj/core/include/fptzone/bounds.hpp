#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fptzone/barrier.hpp"

namespace fptzone {

enum class BoundKind {
    ExactMean,      // critical sqrt barrier: q^2 / (alpha^2 - sigma^2), or +inf
    ExactLinear,    // tilde = nu t, nu > 0: mean passage time q / nu
    UpperThm,       // switch-time bound with the full Gaussian weight
    UpperPsiMin,    // refinement weighting by the interval-minimum survival factor
    UpperPsiChord,  // refinement weighting by the chord survival factor
    LambertUpper,   // closed form for tilde = sigma sqrt(t ln(1 + t))
    InverseUpper,   // tilde convex increasing: mean <= tilde^{-1}(q)
    InverseLower,   // tilde concave increasing: mean >= tilde^{-1}(q)
};

const char* bound_kind_name(BoundKind k);

struct BoundReport {
    BoundKind kind = BoundKind::ExactMean;
    double value = 0.0;  // +inf encodes an infinite mean (a result, not an error)
    std::optional<double> t_switch;
    double quadrature_error = 0.0;  // 0 for closed forms
    std::vector<std::string> assumptions;
};

// Mean first-passage time through the critical barrier with fluctuation
// alpha sqrt(t): q^2 / (alpha^2 - sigma^2) for alpha > sigma, +inf otherwise.
double mean_fpt_critical(const GbmParams& params, double alpha);

// Last time the barrier switches from below to above the critical reference
// K exp((mu - sigma^2/2) t + alpha sqrt(t)); 0 when it dominates from the
// start. Scans tilde_eff(t) - alpha sqrt(t) on a dense grid over [0, horizon]
// and refines the last sign change by bisection to 1e-9.
//
// Domination beyond the horizon must be certified: either the declared
// profile implies it, or the caller passes attest_beyond = true. Throws
// UnattestedTail otherwise, and NoDomination when the barrier sits below the
// reference at the end of the scan.
double find_t_switch(const BarrierSpec& spec, double alpha, double horizon, bool attest_beyond);

// Mean bound  E <= T + integral_{alpha sqrt(T)}^inf x^2/(alpha^2 - sigma^2)
// dPhi_{q, sigma sqrt(T)}(x), evaluated in closed form. T = 0 reproduces
// mean_fpt_critical exactly. Requires alpha > sigma.
BoundReport upper_bound_thm(const BarrierSpec& spec, double alpha, double t_switch);

// Probability that a Brownian motion started at a > 0 stays positive up to
// the time when its variance is c^2, conditioned to end at b > 0:
// psi(a, b, c) = 1 - exp(-2 a b / c^2).
double psi(double a, double b, double c);

enum class PsiVariant {
    MinOnInterval,  // weights by psi(q - m, x - m, sigma sqrt(T)), m = min tilde on [0, T]
    Chord,          // weights by psi(q, x - alpha sqrt(T), sigma sqrt(T));
                    // requires tilde >= its chord on [0, T] (spot-checked)
};

// Sharpened switch-time bounds; requires t_switch > 0 and alpha > sigma.
// Chord <= MinOnInterval <= the plain theorem bound, up to quadrature error.
BoundReport upper_bound_psi(const BarrierSpec& spec, double alpha, double t_switch,
                            PsiVariant variant);

// Closed-form mean bound for tilde = sigma sqrt(t ln(1 + t)):
// E <= (q/sigma)^2 / W0((q/sigma)^2 / e).
BoundReport lambert_upper(const GbmParams& params);

enum class InverseDirection {
    UpperConvex,   // tilde convex increasing (caller-attested): mean <= tilde^{-1}(q)
    LowerConcave,  // tilde concave increasing (caller-attested): mean >= tilde^{-1}(q)
};

// Solves tilde(t*) = q by expanding doubling brackets and bisection to 1e-10
// relative. Monotonicity is spot-checked on 1024 points (NotMonotone);
// brackets past 1e12 raise NoCrossing.
BoundReport inverse_bound(const std::function<double(double)>& tilde, double q,
                          InverseDirection direction);

// Probability that a standard Brownian motion ever touches the line c + b t
// with c < 0: 1 for b >= 0, exp(-2 |b| |c|) for b < 0.
double linear_crossing_prob(double c, double b);

namespace detail {

// The theorem-bound integrand weighted by psi(q - m, x - m, sigma sqrt(T)),
// integrated over [alpha sqrt(T), inf). Exposed so tests can drive m directly
// (m -> -inf recovers the unweighted bound). Returns the integral only; the
// full bound adds T. err_out, if non-null, receives the quadrature error.
double psi_weighted_integral(double q, double sigma, double alpha, double T, double m,
                             double* err_out);

}  // namespace detail

}  // namespace fptzone
