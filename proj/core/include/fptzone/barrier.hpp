#pragma once

#include <cmath>
#include <optional>

#include "fptzone/asymptotics.hpp"
#include "fptzone/expr.hpp"

namespace fptzone {

// Parameters of the value process V_t = V0 exp((mu - sigma^2/2) t + sigma W_t)
// together with the barrier anchor K = B(0). Requires sigma > 0, V0 > 0,
// 0 < K < V0, so the log-distance q = ln(V0/K) is positive.
struct GbmParams {
    double mu = 0.0;
    double sigma = 1.0;
    double v0 = 1.0;
    double k = 0.5;

    double q() const { return std::log(v0 / k); }
    double critical_drift() const { return mu - 0.5 * sigma * sigma; }
    void validate() const;  // throws InvalidParams
};

// A continuous barrier B(t) = K exp((mu - sigma^2/2) t + tilde(t) - ln A(t)),
// where tilde is the fluctuation term and A an optional currency adjustment
// stored as ln A with ln A(0) = 0.
//
// Construction canonicalizes tilde(0) != 0 by rescaling the anchor:
// K' = K e^{tilde(0)}, tilde' = tilde - tilde(0). The barrier function is
// unchanged; params().k and q() refer to the rescaled anchor, and K' < V0 is
// re-validated.
class BarrierSpec {
public:
    static BarrierSpec make(GbmParams params, TildeExpr tilde,
                            std::optional<AsymptoticProfile> profile = std::nullopt,
                            std::optional<TildeExpr> ln_inflation = std::nullopt);

    const GbmParams& params() const { return params_; }
    const TildeExpr& tilde() const { return tilde_; }
    const std::optional<TildeExpr>& ln_inflation() const { return ln_inflation_; }
    const std::optional<AsymptoticProfile>& profile() const { return profile_; }
    double q() const { return params_.q(); }

    // tilde(t) - ln A(t): the fluctuation of the inflation-adjusted barrier.
    double tilde_effective(double t) const;

    // B(t) / A(t) = K exp((mu - sigma^2/2) t + tilde(t) - ln A(t)).
    double barrier(double t) const;

private:
    BarrierSpec() = default;

    GbmParams params_;
    TildeExpr tilde_;
    std::optional<TildeExpr> ln_inflation_;
    std::optional<AsymptoticProfile> profile_;
};

// The first-passage problem reduced to a standard Brownian motion: V_t
// reaches B(t) exactly when W_t reaches bhat(t) = (tilde_eff(t) - q) / sigma.
// bhat(0) = -q/sigma < 0, so paths start strictly above the reduced barrier.
class WspaceBarrier {
public:
    explicit WspaceBarrier(BarrierSpec spec);

    double operator()(double t) const {
        return (spec_.tilde_effective(t) - q_) / sigma_;
    }
    double q() const { return q_; }
    double sigma() const { return sigma_; }
    const BarrierSpec& spec() const { return spec_; }

private:
    BarrierSpec spec_;
    double q_ = 0.0;
    double sigma_ = 1.0;
};

WspaceBarrier to_wspace(const BarrierSpec& spec);

// Composes a currency adjustment onto the spec. Requires ln_a(0) = 0 within
// 1e-12 (throws InvalidInflation otherwise). Applying ln_a and then ln_b is
// equivalent to applying ln_a + ln_b once, and the result classifies exactly
// like the same spec with tilde replaced by tilde - ln_a.
BarrierSpec apply_inflation(const BarrierSpec& spec, const TildeExpr& ln_a);

}  // namespace fptzone
