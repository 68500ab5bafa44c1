#include <benchmark/benchmark.h>

#include "cqa/eigensolver.hpp"
#include "cqa/graphs.hpp"
#include "cqa/hamiltonian.hpp"

namespace {

void BM_GroundStateCold(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto g = cqa::generate_regular(n, 3, 1);
    auto parts = cqa::assemble_hamiltonian(g, 4, cqa::DriverKind::NN, 1.0);
    auto mv = [&](std::span<const double> in, std::span<double> out) {
        cqa::apply_total(parts, 0.5, in, out);
    };
    for (auto _ : state) {
        auto gs = cqa::ground_state(mv, parts.driver.dim, {});
        benchmark::DoNotOptimize(gs.energy);
    }
}
BENCHMARK(BM_GroundStateCold)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

// The sweep path: small s step, previous eigenvector as the Krylov seed.
void BM_GroundStateWarm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto g = cqa::generate_regular(n, 3, 1);
    auto parts = cqa::assemble_hamiltonian(g, 4, cqa::DriverKind::NN, 1.0);
    auto mv_at = [&](double s) {
        return [&, s](std::span<const double> in, std::span<double> out) {
            cqa::apply_total(parts, s, in, out);
        };
    };
    auto prev = cqa::ground_state(mv_at(0.50), parts.driver.dim, {});
    for (auto _ : state) {
        cqa::SolverConfig cfg;
        cfg.warm_start = prev.amplitudes;
        auto gs = cqa::ground_state(mv_at(0.51), parts.driver.dim, cfg);
        benchmark::DoNotOptimize(gs.energy);
    }
}
BENCHMARK(BM_GroundStateWarm)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
