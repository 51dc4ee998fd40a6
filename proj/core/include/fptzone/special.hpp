#pragma once

namespace fptzone {

// Standard normal density and upper tail probability.
double normal_pdf(double z);
double normal_tail(double z);  // P(Z > z), computed via erfc for tail accuracy

// Principal branch of the Lambert W function for x >= -1/e, solved by Halley
// iteration to 1e-14 relative accuracy. W0(x) e^{W0(x)} = x.
double lambert_w0(double x);

// Inverse of the standard normal CDF on (0, 1). Rational approximation with
// absolute error below 1.2e-9, which is far inside Monte Carlo resolution;
// exactly one uniform maps to one normal draw, keeping stream consumption
// deterministic.
double inverse_normal_cdf(double p);

//  E[X^2 1{X > lo}] for X ~ N(q, s^2):
//  (q^2 + s^2) P(Z > z) + s (q + lo) pdf(z) with z = (lo - q)/s.
double truncated_second_moment(double q, double s, double lo);

}  // namespace fptzone
