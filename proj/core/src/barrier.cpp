#include "fptzone/barrier.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fptzone/errors.hpp"

namespace fptzone {

namespace {

constexpr double kInflationAnchorTol = 1e-12;

void check_inflation_anchor(const TildeExpr& ln_a) {
    double at0 = ln_a.eval(0.0);
    if (std::fabs(at0) > kInflationAnchorTol) {
        throw InvalidInflation("ln A(0) = " + std::to_string(at0) +
                               " but the adjustment must satisfy ln A(0) = 0");
    }
}

}  // namespace

void GbmParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidParams("sigma must be positive and finite");
    }
    if (!(v0 > 0.0) || !std::isfinite(v0)) {
        throw InvalidParams("v0 must be positive and finite");
    }
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw InvalidParams("k must be positive and finite");
    }
    if (!(k < v0)) {
        throw InvalidParams("k must be strictly below v0 (the barrier starts below the value)");
    }
    if (!std::isfinite(mu)) {
        throw InvalidParams("mu must be finite");
    }
}

BarrierSpec BarrierSpec::make(GbmParams params, TildeExpr tilde,
                              std::optional<AsymptoticProfile> profile,
                              std::optional<TildeExpr> ln_inflation) {
    params.validate();

    double at0 = tilde.eval(0.0);
    if (at0 != 0.0) {
        // Fold the offset into the anchor: the barrier function is unchanged.
        params.k *= std::exp(at0);
        if (!std::isfinite(params.k) || !(params.k > 0.0)) {
            throw InvalidParams("tilde(0) offset makes the barrier anchor degenerate");
        }
        if (!(params.k < params.v0)) {
            throw InvalidParams("after folding tilde(0) into the anchor, k >= v0");
        }
        tilde = TildeExpr::difference(tilde, TildeExpr::constant(at0));
    }

    if (ln_inflation) check_inflation_anchor(*ln_inflation);

    BarrierSpec spec;
    spec.params_ = params;
    spec.tilde_ = std::move(tilde);
    spec.ln_inflation_ = std::move(ln_inflation);
    spec.profile_ = std::move(profile);
    return spec;
}

double BarrierSpec::tilde_effective(double t) const {
    double v = tilde_.eval(t);
    if (ln_inflation_) v -= ln_inflation_->eval(t);
    return v;
}

double BarrierSpec::barrier(double t) const {
    return params_.k * std::exp(params_.critical_drift() * t + tilde_effective(t));
}

WspaceBarrier::WspaceBarrier(BarrierSpec spec)
    : spec_(std::move(spec)), q_(spec_.q()), sigma_(spec_.params().sigma) {}

WspaceBarrier to_wspace(const BarrierSpec& spec) { return WspaceBarrier(spec); }

BarrierSpec apply_inflation(const BarrierSpec& spec, const TildeExpr& ln_a) {
    check_inflation_anchor(ln_a);
    std::optional<TildeExpr> combined;
    if (spec.ln_inflation()) {
        combined = TildeExpr::sum(*spec.ln_inflation(), ln_a);
    } else {
        combined = ln_a;
    }
    return BarrierSpec::make(spec.params(), spec.tilde(), spec.profile(), std::move(combined));
}

}  // namespace fptzone
