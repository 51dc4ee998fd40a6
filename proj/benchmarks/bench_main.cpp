// Microbenchmarks for the hot paths: expression evaluation, the Monte Carlo
// stepping loop, the psi-weighted quadrature, and zone classification.

#include <cmath>
#include <string>

#include <benchmark/benchmark.h>

#include "fptzone/barrier.hpp"
#include "fptzone/bounds.hpp"
#include "fptzone/classify.hpp"
#include "fptzone/expr.hpp"
#include "fptzone/quadrature.hpp"
#include "fptzone/rng.hpp"
#include "fptzone/simulate.hpp"
#include "fptzone/special.hpp"

namespace {

fptzone::GbmParams unit_params() {
    fptzone::GbmParams p;
    p.sigma = 1.0;
    p.v0 = 1.0;
    p.k = std::exp(-1.0);
    return p;
}

void bm_parse(benchmark::State& state) {
    const std::string src = "2*sqrt(t) + 0.25*t^0.75 - sin(t)/(1 + t)";
    for (auto _ : state) {
        benchmark::DoNotOptimize(fptzone::parse_tilde(src));
    }
}
BENCHMARK(bm_parse);

void bm_eval(benchmark::State& state) {
    const auto expr = fptzone::parse_tilde("2*sqrt(t) + 0.25*t^0.75 - sin(t)/(1 + t)");
    double t = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(expr.eval(t));
        t += 0.1;
        if (t > 1e6) t = 0.5;
    }
}
BENCHMARK(bm_eval);

void bm_rng_normal(benchmark::State& state) {
    fptzone::PathRng rng(42, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.normal());
    }
}
BENCHMARK(bm_rng_normal);

void bm_simulate_steps(benchmark::State& state) {
    const auto spec =
        fptzone::BarrierSpec::make(unit_params(), fptzone::parse_tilde("sqrt(t)"));
    fptzone::SimConfig cfg;
    cfg.n_paths = static_cast<std::size_t>(state.range(0));
    cfg.dt = 1e-3;
    cfg.horizon = 10.0;
    cfg.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fptzone::simulate_fpt(spec, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_simulate_steps)->Arg(256)->Arg(1024);

void bm_psi_quadrature(benchmark::State& state) {
    const auto spec = fptzone::BarrierSpec::make(
        unit_params(), fptzone::parse_tilde("0.5*sqrt(t) + 0.5*t^0.75"),
        fptzone::AsymptoticProfile::power(0.75, 0.5));
    const double ts = fptzone::find_t_switch(spec, 2.0, 1e6, false);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            fptzone::upper_bound_psi(spec, 2.0, ts, fptzone::PsiVariant::MinOnInterval));
    }
}
BENCHMARK(bm_psi_quadrature);

void bm_classify_declared(benchmark::State& state) {
    const auto params = unit_params();
    const auto profile = fptzone::AsymptoticProfile::sqrt_t(2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            fptzone::classify(fptzone::limits_from_profile(profile, params)));
    }
}
BENCHMARK(bm_classify_declared);

void bm_probe_limits(benchmark::State& state) {
    const auto spec =
        fptzone::BarrierSpec::make(unit_params(), fptzone::parse_tilde("2*sqrt(t)"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fptzone::probe_limits(spec));
    }
}
BENCHMARK(bm_probe_limits);

}  // namespace

BENCHMARK_MAIN();
