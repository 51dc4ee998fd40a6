#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fptzone {

// Leading asymptotic term c * g(t) of the exponent fluctuation as t -> inf:
//
//   Constant     g = 1            (c is the limit value)
//   Power        g = t^p, p > 0
//   SqrtT        g = sqrt(t)
//   SqrtTLogLog  g = sqrt(2 t ln ln t), the iterated-logarithm envelope shape,
//                so c compares directly against the volatility sigma
//   Linear       g = t
//   Superlinear  the term grows to +inf faster than any linear function
enum class GrowthKind { Constant, Power, SqrtT, SqrtTLogLog, Linear, Superlinear };

struct GrowthTerm {
    GrowthKind kind = GrowthKind::Constant;
    double p = 0.0;  // Power only
    double c = 0.0;  // ignored for Superlinear
};

// The six comparison quantities that drive zone assignment. Each is the
// liminf or limsup of B(t) divided by a reference barrier:
//
//   i_minus / s_minus   reference exponent  -sigma sqrt(2 t ln ln t)
//   i_plus  / s_plus    reference exponent  +sigma sqrt(2 t ln ln t)
//   ibar(eps)           liminf against      (sigma + eps) sqrt(t)
//   sbar0               limsup against       sigma sqrt(t)
//
// Values are extended reals in [0, +inf]. `ibar` is materialized on an
// epsilon grid (ascending, first entry eps = 0) and is non-increasing in eps.
struct AsymptoticLimits {
    enum class Provenance { Declared, Probed };

    double i_minus = 0.0;
    double i_plus = 0.0;
    double s_minus = 0.0;
    double s_plus = 0.0;
    std::vector<std::pair<double, double>> ibar;  // (eps, value)
    double sbar0 = 0.0;
    Provenance provenance = Provenance::Declared;
    std::string grid_summary;  // populated for probed limits

    double ibar_at0() const;
    // Cross-quantity inequalities every valid set of limits satisfies:
    // s_minus >= i_minus >= i_plus, s_minus >= s_plus >= i_plus,
    // s_minus >= sbar0 >= s_plus, i_minus >= ibar(eps) >= i_plus,
    // sbar0 >= ibar(eps), and ibar non-increasing in eps.
    bool partial_order_ok() const;
};

// Epsilon grid used to materialize ibar: {0} followed by sigma * 2^-k for
// k = 20 .. 0, ascending.
std::vector<double> default_epsilon_grid(double sigma);

// Declared tail behaviour of the fluctuation term. Either a single leading
// term, an oscillation between a lower and an upper envelope (each attained
// infinitely often), or directly supplied limits.
struct AsymptoticProfile {
    enum class Kind { Simple, Oscillating, CustomLimits };

    Kind kind = Kind::Simple;
    GrowthTerm term;                        // Simple
    GrowthTerm lower, upper;                // Oscillating
    std::optional<AsymptoticLimits> custom; // CustomLimits

    static AsymptoticProfile constant(double c);
    static AsymptoticProfile power(double p, double c);
    static AsymptoticProfile sqrt_t(double c);
    static AsymptoticProfile sqrt_t_loglog(double c);
    static AsymptoticProfile linear(double c);
    static AsymptoticProfile superlinear();
    static AsymptoticProfile oscillating(GrowthTerm lower, GrowthTerm upper);
    static AsymptoticProfile custom_limits(AsymptoticLimits limits);
};

// Log-spaced evaluation grid for probing limits numerically. Requirements:
// at least 32 points, t_min > e (so ln ln t is defined and positive), and
// t_max >= 1e6 (so the tail is actually asymptotic).
struct ProbeGrid {
    double t_min = 10.0;
    double t_max = 1e8;
    std::size_t n_points = 1024;
};

}  // namespace fptzone
