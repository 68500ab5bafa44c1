#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cqa/graphs.hpp"
#include "cqa/statespace.hpp"

namespace cqa {

enum class DriverKind { NN, FC };

struct DriverTopology {
    DriverKind kind = DriverKind::NN;
    int q = 4;

    // Distinct coupled color pairs (a, b) with a < b. NN couples cyclically
    // adjacent colors including the (q-1, 0) wrap; q = 2 collapses the two
    // directions to a single pair so the coupling is not double-counted.
    std::vector<std::pair<int, int>> color_pairs() const;

    // Hop destinations reachable from `color`, ascending.
    std::vector<int> hop_targets(int color) const;

    int hops_per_node() const { return kind == DriverKind::FC || q == 2 ? q - 1 : 2; }
};

// Driver in the constrained basis, row-compressed with sorted column indices.
// Zero diagonal; every stored entry has the same value -2J.
struct DriverMatrix {
    BasisIndex dim = 0;
    double entry_value = 0.0;
    std::vector<std::uint64_t> row_offsets;  // dim + 1
    std::vector<std::uint32_t> cols;

    std::span<const std::uint32_t> row(BasisIndex r) const {
        return {cols.data() + row_offsets[r], cols.data() + row_offsets[r + 1]};
    }

    // out = D * in
    void multiply(std::span<const double> in, std::span<double> out) const;
};

// H(s) = s * H_p + (1 - s) * H_d, kept factored: the diagonal and the driver
// are assembled once and combined per matvec.
struct HamiltonianParts {
    StateSpace space;
    DriverTopology topology;
    double coupling = 1.0;  // J
    std::vector<double> problem_diagonal;
    DriverMatrix driver;
};

// Diagonal of H_p: entry for state b is J * sum over edges of
// (q if the endpoint colors match else q - 4).
std::vector<double> build_problem_diagonal(const RegularGraph& g, const StateSpace& space,
                                           double coupling);

DriverMatrix build_driver_matrix(const StateSpace& space, const DriverTopology& topo,
                                 double coupling);

HamiltonianParts assemble_hamiltonian(const RegularGraph& g, int n_colors, DriverKind driver,
                                      double coupling = 1.0);

// out = s * (problem_diagonal ⊙ in) + (1 - s) * (driver * in)
void apply_total(const HamiltonianParts& parts, double s, std::span<const double> in,
                 std::span<double> out);

// Brute-force oracle; dim <= 4096.
Eigen::MatrixXd dense_total(const HamiltonianParts& parts, double s);

}  // namespace cqa
