#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace cqa {

struct UniformDisorder {
    double mu = 0.0;
    double half_width = 0.0;
};

// h_a = (1/2) sum of `degree` signs, each +1 with probability 1/n_colors.
struct DiscreteDisorder {
    int degree = 1;
    int n_colors = 2;
};

using DisorderSpec = std::variant<UniformDisorder, DiscreteDisorder>;

// mu = -c(1/2 - 1/q), half_width = sqrt(3) * Delta1 (J = 1). The stored h_a
// are s-independent; the 2sJ prefactor of the chain Hamiltonian supplies the
// s dependence, so s*h_a tracks the effective-field statistics.
UniformDisorder uniform_disorder_matching_fields(int degree, int n_sites);

// One-particle ring: hopping -2(1-s)J between cyclic neighbors (the two q = 2
// directions collapse to one bond), on-site 2sJ*h_a.
struct ChainInstance {
    int n_sites = 2;
    std::vector<double> potentials;
    double s = 0.0;
    double coupling = 1.0;  // J
};

std::vector<double> sample_potential(const DisorderSpec& spec, int n_sites, std::mt19937_64& rng);

// Lowest eigenvector of the q x q one-particle matrix, dense diagonalization.
std::vector<double> chain_ground_state(const ChainInstance& inst);

// (1/2) sum over a of 2|psi_a||psi_{a+1 mod q}|; 1 for the uniform state.
double chain_concurrence(std::span<const double> psi);

struct ChainSample {
    int sample_id = 0;
    double s = 0.0;
    double delta_eff_empirical = 0.0;  // s * population std of the sampled h_a
    double c_ds = 0.0;
};

struct ChainAggregateRow {
    double key = 0.0;  // s, or a bin center
    double mean = 0.0;
    double std_dev = 0.0;  // population standard deviation
    long n = 0;
};

struct ChainEnsembleResult {
    std::vector<ChainSample> samples;       // sample-major, s ascending within a sample
    std::vector<ChainAggregateRow> by_s;
};

// One potential set per sample, swept over s_grid. Per-sample RNG streams are
// derived from (master_seed, sample_id), so results are order-independent.
ChainEnsembleResult chain_ensemble(const DisorderSpec& spec, int n_sites,
                                   std::span<const double> s_grid, int n_samples,
                                   std::uint64_t master_seed);

// Log-space bins of delta_eff_empirical / (1 - s), 20 bins per decade.
// Samples with zero disorder or s = 1 are skipped.
std::vector<ChainAggregateRow> bin_chain_samples_log(const std::vector<ChainSample>& samples,
                                                     int bins_per_decade = 20);

void write_chain_samples_csv(const std::string& path, const std::vector<ChainSample>& samples);
void write_chain_aggregate_csv(const std::string& path,
                               const std::vector<ChainAggregateRow>& rows,
                               const std::string& key_name);

}  // namespace cqa
