#pragma once

#include <functional>

namespace fptzone {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b]. Subdivides
// until the local error estimate meets the tolerance split across pieces or
// the depth cap is reached; the returned error is the accumulated estimate.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-10);

}  // namespace fptzone
