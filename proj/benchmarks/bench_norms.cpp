#include <benchmark/benchmark.h>

#include "seqspace/duality.hpp"
#include "seqspace/operators.hpp"
#include "seqspace/rng.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/theorems.hpp"

namespace {

using namespace seqspace;

SpaceSpec lorentz_space(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / double(i + 1);
    return LorentzSpec(std::move(w), 2.0);
}

void BM_LorentzNorm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SpaceSpec s = lorentz_space(n);
    Rng rng(1);
    Vector x = rng.gaussian_vector(n);
    for (auto _ : state) benchmark::DoNotOptimize(space_norm(s, x));
}
BENCHMARK(BM_LorentzNorm)->Arg(8)->Arg(64)->Arg(512);

void BM_LuxemburgNorm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SpaceSpec s = OrliczSpec(OrliczFunction::square_with_affine_patch(0.6),
                             OrliczFlavor::Luxemburg, n);
    Rng rng(1);
    Vector x = rng.gaussian_vector(n);
    for (auto _ : state) benchmark::DoNotOptimize(space_norm(s, x));
}
BENCHMARK(BM_LuxemburgNorm)->Arg(8)->Arg(64)->Arg(512);

void BM_OrliczAmemiyaNorm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SpaceSpec s = OrliczSpec(OrliczFunction::power(2.5), OrliczFlavor::OrliczNorm, n);
    Rng rng(1);
    Vector x = rng.gaussian_vector(n);
    for (auto _ : state) benchmark::DoNotOptimize(space_norm(s, x));
}
BENCHMARK(BM_OrliczAmemiyaNorm)->Arg(8)->Arg(64);

void BM_NormingFunctional(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SpaceSpec s = lorentz_space(n);
    Rng rng(2);
    Vector x = rng.gaussian_vector(n);
    for (auto _ : state) benchmark::DoNotOptimize(norming_functional_unverified(s, x));
}
BENCHMARK(BM_NormingFunctional)->Arg(8)->Arg(64);

void BM_OperatorNorm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SpaceSpec s = lorentz_space(n);
    BlockSpec b;
    b.blocks.push_back({0, 1, 2});
    b.signs.push_back({1.0, 1.0, -1.0});
    const ProjectionSpec ps = build_averaging_projection(s, b);
    const LinearOperator P = build_projection(ps, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(operator_norm(s, P, SearchBudget{8, 50}, 3).value);
}
BENCHMARK(BM_OperatorNorm)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
