#include <benchmark/benchmark.h>

#include <random>

#include "cqa/graphs.hpp"
#include "cqa/hamiltonian.hpp"

namespace {

cqa::HamiltonianParts make_parts(int n, int c, int q, cqa::DriverKind kind) {
    auto g = cqa::generate_regular(n, c, 1);
    return cqa::assemble_hamiltonian(g, q, kind, 1.0);
}

std::vector<double> random_vector(std::size_t dim) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(dim);
    for (auto& x : v) x = dist(rng);
    return v;
}

void BM_ApplyTotal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto parts = make_parts(n, 2, 4, cqa::DriverKind::NN);
    auto in = random_vector(parts.driver.dim);
    std::vector<double> out(parts.driver.dim);
    for (auto _ : state) {
        cqa::apply_total(parts, 0.5, in, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * parts.driver.dim);
}
BENCHMARK(BM_ApplyTotal)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_AssembleDriver(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    cqa::StateSpace space(n, 4);
    for (auto _ : state) {
        auto d = cqa::build_driver_matrix(space, {cqa::DriverKind::NN, 4}, 1.0);
        benchmark::DoNotOptimize(d.cols.data());
    }
}
BENCHMARK(BM_AssembleDriver)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ProblemDiagonal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto g = cqa::generate_regular(n, 3, 1);
    cqa::StateSpace space(n, 4);
    for (auto _ : state) {
        auto d = cqa::build_problem_diagonal(g, space, 1.0);
        benchmark::DoNotOptimize(d.data());
    }
}
BENCHMARK(BM_ProblemDiagonal)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
