#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cqa {

// Symmetric operator contract: out = H * in. Must be reentrant.
using MatVec = std::function<void(std::span<const double>, std::span<double>)>;

enum class Reorthogonalization { full, none };

struct SolverConfig {
    double tolerance = 1e-10;  // residual bound, units of J
    int max_iterations = 500;  // Krylov dimension cap
    Reorthogonalization reorthogonalization = Reorthogonalization::full;
    std::uint64_t seed = 0x5eedULL;
    // Seeds the first Krylov vector when nonempty (length dim). A zero or
    // non-finite vector falls back to the seeded random start.
    std::span<const double> warm_start = {};
};

struct GroundState {
    // Annealing parameter; stamped by sweep drivers, NaN when not applicable.
    double s = std::numeric_limits<double>::quiet_NaN();
    double energy = 0.0;
    std::vector<double> amplitudes;  // unit Euclidean norm
    double residual = 0.0;           // ||H x - E x||
    int iterations = 0;
};

// Lowest eigenpair via the Lanczos method. Deterministic for a fixed config.
GroundState ground_state(const MatVec& apply, std::uint64_t dim, const SolverConfig& cfg);

// k lowest eigenvalues (k <= 8), nondecreasing, each certified to cfg.tolerance.
std::vector<double> low_spectrum(const MatVec& apply, std::uint64_t dim, int k,
                                 const SolverConfig& cfg);

// Full symmetric diagonalization oracle; dim <= 4096.
GroundState dense_ground_state(const Eigen::MatrixXd& matrix);

}  // namespace cqa
