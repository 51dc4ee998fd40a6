#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

#include "fptzone/errors.hpp"
#include "fptzone/special.hpp"

using namespace fptzone;

namespace {

// Independent check integrator: adaptive Simpson, not the library quadrature.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(m), f(b), 1e-13, 40);
}

// Bisection solve of w e^w = x on [lo, hi]; slow but obviously correct.
double w0_by_bisection(double x, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid * std::exp(mid) < x) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("normal density and tail") {
    REQUIRE(normal_pdf(0.0) == Catch::Approx(0.3989422804014327).epsilon(1e-14));
    REQUIRE(normal_pdf(1.0) == Catch::Approx(0.24197072451914337).epsilon(1e-14));
    REQUIRE(normal_tail(0.0) == 0.5);
    REQUIRE(normal_tail(1.959963984540054) == Catch::Approx(0.025).epsilon(1e-10));
    REQUIRE(normal_tail(-1.959963984540054) == Catch::Approx(0.975).epsilon(1e-10));
    for (double z : {-3.0, -1.0, 0.3, 2.5}) {
        REQUIRE(normal_tail(z) + normal_tail(-z) == Catch::Approx(1.0).epsilon(1e-14));
    }
    // deep tail stays accurate in relative terms (erfc, not 1 - cdf)
    REQUIRE(normal_tail(10.0) == Catch::Approx(7.619853024160527e-24).epsilon(1e-12));
}

TEST_CASE("lambert w satisfies its defining identity") {
    for (double x : {-0.36, -0.2, -0.05, 0.0, 0.1, 0.36787944117144233, 0.5, 1.0,
                     2.718281828459045, 10.0, 1e3, 1e8}) {
        double w = lambert_w0(x);
        REQUIRE(w * std::exp(w) == Catch::Approx(x).margin(1e-12 * std::max(1.0, std::fabs(x))));
    }
}

TEST_CASE("lambert w known values") {
    REQUIRE(lambert_w0(0.0) == 0.0);
    REQUIRE(lambert_w0(std::exp(1.0)) == Catch::Approx(1.0).epsilon(1e-13));
    // Omega constant
    REQUIRE(lambert_w0(1.0) == Catch::Approx(0.5671432904097838).epsilon(1e-13));
    // value used by the closed-form passage-time bound at q = sigma
    REQUIRE(lambert_w0(std::exp(-1.0)) == Catch::Approx(0.2784645427610738).epsilon(1e-13));
    // branch point
    REQUIRE(lambert_w0(-std::exp(-1.0)) == Catch::Approx(-1.0).margin(1e-7));
    REQUIRE_THROWS_AS(lambert_w0(-0.4), InvalidParams);
}

TEST_CASE("lambert w agrees with bisection") {
    for (double x : {0.05, 0.3, 1.0, 4.0, 50.0}) {
        double oracle = w0_by_bisection(x, 0.0, 10.0);
        REQUIRE(lambert_w0(x) == Catch::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("inverse normal cdf hits standard quantiles") {
    REQUIRE(inverse_normal_cdf(0.5) == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(inverse_normal_cdf(0.975) == Catch::Approx(1.959963984540054).margin(1e-8));
    REQUIRE(inverse_normal_cdf(0.025) == Catch::Approx(-1.959963984540054).margin(1e-8));
    REQUIRE(inverse_normal_cdf(0.8413447460685429) == Catch::Approx(1.0).margin(1e-8));
    REQUIRE(inverse_normal_cdf(0.15865525393145707) == Catch::Approx(-1.0).margin(1e-8));
    REQUIRE(inverse_normal_cdf(0.99865010196836999) == Catch::Approx(3.0).margin(1e-8));
}

TEST_CASE("inverse normal cdf round-trips through the tail") {
    for (double p : {1e-12, 1e-6, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0 - 1e-6}) {
        double z = inverse_normal_cdf(p);
        REQUIRE(std::isfinite(z));
        REQUIRE(normal_tail(z) == Catch::Approx(1.0 - p).margin(3e-9));
    }
    REQUIRE(inverse_normal_cdf(1e-300) < -30.0);
    REQUIRE_THROWS_AS(inverse_normal_cdf(0.0), InvalidParams);
    REQUIRE_THROWS_AS(inverse_normal_cdf(1.0), InvalidParams);
    REQUIRE_THROWS_AS(inverse_normal_cdf(-0.5), InvalidParams);
}

TEST_CASE("inverse normal cdf is strictly increasing") {
    double prev = inverse_normal_cdf(1e-8);
    for (double p = 1e-4; p < 1.0 - 1e-4; p += 1e-3) {
        double z = inverse_normal_cdf(p);
        REQUIRE(z > prev);
        prev = z;
    }
}

TEST_CASE("truncated second moment matches direct integration") {
    struct Case { double q, s, lo; };
    const Case cases[] = {
        {1.0, 1.0, 0.0}, {1.0, 0.5, 2.0}, {2.0, 1.0, 5.0}, {0.3, 2.0, -1.0}, {1.0, 3.0, 1.0},
    };
    for (const auto& c : cases) {
        auto integrand = [&](double x) {
            double z = (x - c.q) / c.s;
            return x * x * std::exp(-0.5 * z * z) / (c.s * std::sqrt(2.0 * 3.141592653589793238));
        };
        // integrate in segments two sigmas wide so the adaptive rule never
        // steps over the Gaussian bump; beyond z = 10 the mass is negligible
        double oracle = 0.0;
        double z0 = (c.lo - c.q) / c.s;
        while (z0 < 10.0) {
            double z1 = std::min(z0 + 2.0, 10.0);
            oracle += integrate(integrand, c.q + z0 * c.s, c.q + z1 * c.s);
            z0 = z1;
        }
        double got = truncated_second_moment(c.q, c.s, c.lo);
        INFO("q=" << c.q << " s=" << c.s << " lo=" << c.lo);
        REQUIRE(got == Catch::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("truncated second moment limits") {
    // lo far below the mean: recovers E[X^2] = q^2 + s^2
    REQUIRE(truncated_second_moment(1.0, 1.0, -40.0) == Catch::Approx(2.0).epsilon(1e-12));
    REQUIRE(truncated_second_moment(2.0, 0.5, -40.0) == Catch::Approx(4.25).epsilon(1e-12));
    // lo far above: vanishes
    REQUIRE(truncated_second_moment(1.0, 1.0, 60.0) < 1e-300);
    // monotone non-increasing in lo
    double prev = truncated_second_moment(1.0, 1.0, -5.0);
    for (double lo = -4.0; lo <= 6.0; lo += 0.5) {
        double v = truncated_second_moment(1.0, 1.0, lo);
        REQUIRE(v <= prev + 1e-15);
        prev = v;
    }
}
