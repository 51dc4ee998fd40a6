#include "fptzone/quadrature.hpp"

#include <cmath>

#include "fptzone/errors.hpp"

namespace fptzone {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

struct Piece {
    double value;
    double error;
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fc = f(center);
    double result_g = fc * kWg[3];
    double result_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = half * kXgk[j];
        double f1 = f(center - x);
        double f2 = f(center + x);
        result_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
    }
    result_g *= half;
    result_k *= half;
    return {result_k, std::fabs(result_k - result_g)};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
           double& value, double& error) {
    Piece p = gk15(f, a, b);
    if (p.error <= tol || depth >= 48) {
        value += p.value;
        error += p.error;
        return;
    }
    double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth + 1, value, error);
    adapt(f, mid, b, 0.5 * tol, depth + 1, value, error);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                     double rel_tol) {
    if (!(std::isfinite(a) && std::isfinite(b))) {
        throw InvalidParams("integrate requires finite endpoints");
    }
    if (a == b) return {0.0, 0.0};

    Piece first = gk15(f, a, b);
    double tol = std::fmax(abs_tol, rel_tol * std::fabs(first.value));
    QuadResult out;
    adapt(f, a, b, tol, 0, out.value, out.error);
    return out;
}

}  // namespace fptzone
