#include <benchmark/benchmark.h>

#include <cmath>

#include "nlsist/direct_scattering.hpp"
#include "nlsist/integrator.hpp"
#include "nlsist/rh_inverse.hpp"

using namespace nlsist;

namespace {

ComplexField1D sech_field(std::size_t n) {
    RealGrid g(-40.0, 40.0, n);
    return ComplexField1D::sample(g, [](double x) { return 0.3 / std::cosh(x); });
}

void bm_jost_march(benchmark::State& state) {
    ComplexField1D u = sech_field(std::size_t(state.range(0)));
    const Complex z(0.4, 0.3);
    for (auto _ : state) {
        auto m = solve_jost(u, z, JostKind::m1_minus);
        benchmark::DoNotOptimize(m.back());
    }
}
BENCHMARK(bm_jost_march)->Arg(1025)->Arg(4097);

void bm_scattering_grid(benchmark::State& state) {
    ComplexField1D u = sech_field(1025);
    RealGrid zg(-4.0, 4.0, std::size_t(state.range(0)));
    for (auto _ : state) {
        auto c = scattering_ab(u, zg);
        benchmark::DoNotOptimize(c.a_values.back());
    }
}
BENCHMARK(bm_scattering_grid)->Arg(97)->Arg(385);

void bm_rh_solve(benchmark::State& state) {
    ComplexField1D u = sech_field(1025);
    SpectralData d = scatter_potential(u, RealGrid(-4.0, 4.0, std::size_t(state.range(0))),
                                       SearchBox{-1.0, 1.0, 0.05, 1.0});
    for (auto _ : state) {
        RHSolutionSlice s = solve_rh(d, 0.5);
        benchmark::DoNotOptimize(reconstruct_potential(s, d, 0.5));
    }
}
BENCHMARK(bm_rh_solve)->Arg(129)->Arg(385);

void bm_rh_stabilized(benchmark::State& state) {
    ComplexField1D u = sech_field(1025);
    SpectralData d = scatter_potential(u, RealGrid(-4.0, 4.0, 385),
                                       SearchBox{-1.0, 1.0, 0.05, 1.0});
    const double x = double(state.range(0));
    for (auto _ : state) {
        RHSolutionSlice s = solve_rh_stabilized(d, x);
        benchmark::DoNotOptimize(reconstruct_potential(s, d, x));
    }
}
BENCHMARK(bm_rh_stabilized)->Arg(2)->Arg(20);

void bm_split_step(benchmark::State& state) {
    RealGrid g(-40.0, 40.0, std::size_t(state.range(0)));
    ComplexField1D u = SolitonParams(1.0, 0.0, 0.0, 0.0).sample(g, 0.0);
    for (auto _ : state) {
        u = step(u, 1e-3);
        benchmark::DoNotOptimize(u.values.back());
    }
}
BENCHMARK(bm_split_step)->Arg(1025)->Arg(4097);

}  // namespace

BENCHMARK_MAIN();
