#include <benchmark/benchmark.h>

#include <random>

#include "cqa/graphs.hpp"
#include "cqa/observables.hpp"
#include "cqa/statespace.hpp"

namespace {

void BM_GenerateRegular(benchmark::State& state) {
    const int c = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto g = cqa::generate_regular(8, c, seed++);
        benchmark::DoNotOptimize(g.edges.data());
    }
}
BENCHMARK(BM_GenerateRegular)->Arg(2)->Arg(3)->Arg(4);

void BM_CountConflicts(benchmark::State& state) {
    auto g = cqa::generate_regular(8, 3, 1);
    std::mt19937_64 rng(2);
    cqa::NodeColoring col(8);
    for (auto& x : col) x = static_cast<int>(rng() % 4);
    for (auto _ : state) benchmark::DoNotOptimize(cqa::count_conflicts(g, col));
}
BENCHMARK(BM_CountConflicts);

void BM_IntraChainConcurrence(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    cqa::StateSpace space(n, 4);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    cqa::GroundState gs;
    gs.s = 0.5;
    gs.amplitudes.resize(space.dim());
    double norm = 0.0;
    for (auto& x : gs.amplitudes) {
        x = dist(rng);
        norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : gs.amplitudes) x /= norm;
    for (auto _ : state)
        benchmark::DoNotOptimize(cqa::intra_chain_concurrence(gs, space, 0));
}
BENCHMARK(BM_IntraChainConcurrence)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
