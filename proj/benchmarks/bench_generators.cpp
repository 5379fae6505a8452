// bench_generators.cpp — Microbenchmarks for the hot paths: tilted generator
// assembly, principal-value transforms, propagation, and steady states.

#include <benchmark/benchmark.h>

#include "qmelab/consistency.hpp"
#include "qmelab/counting_stats.hpp"
#include "qmelab/generators.hpp"

using namespace qmelab;

namespace {

SystemSpec three_level() {
    SystemSpec s;
    s.energies = (RealVec(3) << 0.0, 0.09, 0.11).finished();
    s.g = Mat::Zero(3, 3);
    s.g(1, 0) = 1.0;
    s.g(2, 0) = 1.0;
    return s;
}

BathSpec bath() {
    BathSpec b;
    b.beta = 5.0;
    b.gamma = 0.2;
    b.density = SpectralDensity::ohmic(0.2, 0.5, 1.0);
    return b;
}

Scheme scheme(SchemeKind kind) {
    Scheme s;
    s.kind = kind;
    if (kind == SchemeKind::symmetrized) s.epsilon = 0.05;
    if (kind == SchemeKind::coarse_grained) s.delta0 = 25.0;
    return s;
}

void BM_BuildGenerator(benchmark::State& state) {
    const auto kind = static_cast<SchemeKind>(state.range(0));
    GeneratorBuilder builder(three_level(), {bath()}, scheme(kind));
    double lam = 0.0;
    for (auto _ : state) {
        lam += 1e-6; // defeat the quadrature cache: fresh tilt every iteration
        benchmark::DoNotOptimize(builder.build_bath_tilted({lam}).matrix);
    }
}

void BM_LambShiftIntegral(benchmark::State& state) {
    const auto b = bath();
    double w = 0.1;
    for (auto _ : state) {
        w += 1e-7;
        benchmark::DoNotOptimize(lamb_imag(Sign::plus, w, 0.3, b));
    }
}

void BM_Propagate(benchmark::State& state) {
    GeneratorBuilder builder(three_level(), {bath()}, scheme(SchemeKind::symmetrized));
    const auto gen = builder.build_bath_tilted({0.4});
    Vec psi = Vec::Zero(3);
    psi(1) = 0.5;
    psi(2) = std::sqrt(3.0) / 2.0;
    const Mat rho0 = psi * psi.adjoint();
    for (auto _ : state) benchmark::DoNotOptimize(propagate(gen, rho0, 120.0).rho);
}

void BM_GqdbCheck(benchmark::State& state) {
    GeneratorBuilder builder(three_level(), {bath()}, scheme(SchemeKind::secular));
    const auto grid = linspace(-1.0, 1.0, 11);
    for (auto _ : state) benchmark::DoNotOptimize(check_gqdb(builder, grid, 1e-8));
}

void BM_SteadyState(benchmark::State& state) {
    GeneratorBuilder builder(three_level(), {bath()}, scheme(SchemeKind::symmetrized));
    const auto gen = builder.build_zero();
    for (auto _ : state) benchmark::DoNotOptimize(steady_state(gen).rho);
}

} // namespace

BENCHMARK(BM_BuildGenerator)
    ->Arg(static_cast<int>(SchemeKind::redfield))
    ->Arg(static_cast<int>(SchemeKind::secular))
    ->Arg(static_cast<int>(SchemeKind::symmetrized))
    ->Arg(static_cast<int>(SchemeKind::coarse_grained));
BENCHMARK(BM_LambShiftIntegral);
BENCHMARK(BM_Propagate);
BENCHMARK(BM_GqdbCheck);
BENCHMARK(BM_SteadyState);

BENCHMARK_MAIN();
