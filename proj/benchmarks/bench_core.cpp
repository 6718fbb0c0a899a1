#include <benchmark/benchmark.h>

#include <cmath>

#include "nnconv/analysis.hpp"
#include "nnconv/operators.hpp"

using namespace nnconv;

namespace {

const DensityKernel kKernel{ActivationParams(1, 1, M_E)};

void PsiEval(benchmark::State& state) {
    double x = -8.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kKernel.psi(x));
        x += 0.001;
        if (x > 8.0) {
            x = -8.0;
        }
    }
}
BENCHMARK(PsiEval);

void DensityMass(benchmark::State& state) {
    WeightedIntegrator integrator(kKernel, {});
    for (auto _ : state) {
        auto r = integrator.integrate([](double) { return 1.0; });
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(DensityMass);

void DirectOperatorPoint(benchmark::State& state) {
    const OperatorEngine engine(kKernel, {});
    const TargetFunction f("sin", [](double x) { return std::sin(x); }, 1.0);
    const OperatorSpec spec(OperatorKind::direct, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto a = engine.apply(f, spec, 0.3);
        benchmark::DoNotOptimize(a.value);
    }
}
BENCHMARK(DirectOperatorPoint)->Arg(16)->Arg(256);

void KantorovichOperatorPoint(benchmark::State& state) {
    const OperatorEngine engine(kKernel, {});
    const TargetFunction f("sin", [](double x) { return std::sin(x); }, 1.0);
    const OperatorSpec spec(OperatorKind::kantorovich, 16);
    for (auto _ : state) {
        auto a = engine.apply(f, spec, 0.3);
        benchmark::DoNotOptimize(a.value);
    }
}
BENCHMARK(KantorovichOperatorPoint);

void TailMass(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(tail_mass(kKernel, 4.0));
    }
}
BENCHMARK(TailMass);

void ModulusEstimate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            estimate_modulus([](double x) { return std::sin(x); }, 0.5, -5, 5, 1e-3));
    }
}
BENCHMARK(ModulusEstimate);

}  // namespace

BENCHMARK_MAIN();
