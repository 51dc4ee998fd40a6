#include "fptzone/special.hpp"

#include <cmath>

#include "fptzone/errors.hpp"

namespace fptzone {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2 pi)
constexpr double kInvSqrt2 = 0.7071067811865475244;    // 1/sqrt(2)
}  // namespace

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_tail(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double lambert_w0(double x) {
    const double inv_e = std::exp(-1.0);
    if (std::isnan(x) || x < -inv_e) {
        throw InvalidParams("lambert_w0 requires x >= -1/e");
    }
    if (x == 0.0) return 0.0;

    double w;
    if (x < -0.25) {
        // Series around the branch point x = -1/e; the radicand can round to
        // a tiny negative number right at the branch point, so clamp it.
        double p = std::sqrt(std::fmax(2.0 * (std::exp(1.0) * x + 1.0), 0.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (x < std::exp(1.0)) {
        w = x / (1.0 + x);
    } else {
        double lx = std::log(x);
        w = lx - std::log(lx);
    }

    for (int i = 0; i < 100; ++i) {
        double ew = std::exp(w);
        double f = w * ew - x;
        double wp1 = w + 1.0;
        if (f == 0.0 || wp1 == 0.0) break;  // exact, or pinned at the branch point
        double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::fabs(step) <= 1e-14 * std::fmax(std::fabs(w), 1e-300)) break;
    }
    return w;
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw InvalidParams("inverse_normal_cdf requires p in (0, 1)");
    }
    // Acklam's rational approximation, three regions.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        double u = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    if (p > 1.0 - p_low) {
        double u = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    double r = p - 0.5;
    double s = r * r;
    return (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * r /
           (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
}

double truncated_second_moment(double q, double s, double lo) {
    if (!(s > 0.0)) throw InvalidParams("truncated_second_moment requires s > 0");
    double z = (lo - q) / s;
    return (q * q + s * s) * normal_tail(z) + s * (q + lo) * normal_pdf(z);
}

}  // namespace fptzone
