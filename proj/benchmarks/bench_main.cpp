#include <benchmark/benchmark.h>

#include <numbers>

#include "ramsey/probe_design.hpp"
#include "ramsey/simulator.hpp"

using namespace ramsey;

namespace {

constexpr double kPi = std::numbers::pi;

RamseyProtocol spin1() {
    return spin_ramsey_protocol({HalfInteger::integer(1), 0.2774 * kPi, {}, {}});
}

void BM_Cfim(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    const RamseyProtocol proto = RamseyProtocol::ramsey(
        random_orthogonal(dim, 1), 0, make_parametrization(ParametrizationKind::theta_ref, dim - 1));
    const Vector theta = Vector::Constant(static_cast<Eigen::Index>(dim - 1), 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cfim(proto, theta, 1e4));
    }
}
BENCHMARK(BM_Cfim)->Arg(3)->Arg(9)->Arg(17);

void BM_SpinRotation(benchmark::State& state) {
    const auto F = HalfInteger::from_twice(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spin_rotation({F, 0.7, F, F}));
    }
}
BENCHMARK(BM_SpinRotation)->Arg(2)->Arg(10)->Arg(20);

void BM_NumericProbe(benchmark::State& state) {
    const auto D = static_cast<std::size_t>(state.range(0));
    const auto map = make_parametrization(ParametrizationKind::theta_ref, D);
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_probe_numeric(map, D));
    }
}
BENCHMARK(BM_NumericProbe)->Arg(2)->Arg(10);

void BM_LikelihoodSurface(benchmark::State& state) {
    const RamseyProtocol proto = spin1();
    MleConfig cfg;
    cfg.grid_points = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(LikelihoodSurface(proto, cfg).grid_size());
    }
}
BENCHMARK(BM_LikelihoodSurface)->Arg(51)->Arg(101);

void BM_MleEstimate(benchmark::State& state) {
    const RamseyProtocol proto = spin1();
    const LikelihoodSurface surface(proto, {});
    Vector truth(2);
    truth << 0.3 * kPi, 0.3 * kPi;
    const Vector p = output_probabilities(proto, truth).values() * 1e4;
    const std::vector<double> counts(p.begin(), p.end());
    for (auto _ : state) {
        benchmark::DoNotOptimize(surface.estimate(counts));
    }
}
BENCHMARK(BM_MleEstimate);

void BM_MonteCarlo(benchmark::State& state) {
    Vector truth(2);
    truth << 0.3 * kPi, 0.3 * kPi;
    const ExperimentConfig cfg{spin1(), truth, {14.0}, 200, 7, {}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_monte_carlo(cfg, 1).total_variance);
    }
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
