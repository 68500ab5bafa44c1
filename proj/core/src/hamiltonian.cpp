#include "cqa/hamiltonian.hpp"

#include <algorithm>
#include <stdexcept>

namespace cqa {

std::vector<std::pair<int, int>> DriverTopology::color_pairs() const {
    std::vector<std::pair<int, int>> pairs;
    if (kind == DriverKind::FC || q == 2) {
        for (int a = 0; a < q; ++a)
            for (int b = a + 1; b < q; ++b) pairs.emplace_back(a, b);
    } else {
        for (int a = 0; a < q; ++a) {
            int b = (a + 1) % q;
            pairs.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(pairs.begin(), pairs.end());
    }
    return pairs;
}

std::vector<int> DriverTopology::hop_targets(int color) const {
    std::vector<int> targets;
    if (kind == DriverKind::FC || q == 2) {
        for (int b = 0; b < q; ++b)
            if (b != color) targets.push_back(b);
    } else {
        targets.push_back((color + 1) % q);
        targets.push_back((color + q - 1) % q);
        std::sort(targets.begin(), targets.end());
    }
    return targets;
}

void DriverMatrix::multiply(std::span<const double> in, std::span<double> out) const {
    for (BasisIndex r = 0; r < dim; ++r) {
        double acc = 0.0;
        const std::uint64_t begin = row_offsets[r], end = row_offsets[r + 1];
        for (std::uint64_t k = begin; k < end; ++k) acc += in[cols[k]];
        out[r] = entry_value * acc;
    }
}

std::vector<double> build_problem_diagonal(const RegularGraph& g, const StateSpace& space,
                                           double coupling) {
    if (g.n_nodes != space.n_nodes())
        throw std::invalid_argument("graph and state space disagree on node count");
    const int q = space.n_colors();
    const BasisIndex dim = space.dim();
    const double same = coupling * q;
    const double diff = coupling * (q - 4);

    std::vector<double> diag(dim);
    for (BasisIndex b = 0; b < dim; ++b) {
        double e = 0.0;
        for (auto [i, j] : g.edges)
            e += (space.color_at(b, i) == space.color_at(b, j)) ? same : diff;
        diag[b] = e;
    }
    return diag;
}

DriverMatrix build_driver_matrix(const StateSpace& space, const DriverTopology& topo,
                                 double coupling) {
    if (topo.q != space.n_colors())
        throw std::invalid_argument("topology and state space disagree on color count");
    const int n = space.n_nodes();
    const int q = space.n_colors();
    const BasisIndex dim = space.dim();
    const int row_degree = n * topo.hops_per_node();

    // Hop destinations per source color, flattened.
    std::vector<int> targets;
    const int per_color = topo.hops_per_node();
    targets.reserve(static_cast<std::size_t>(q) * per_color);
    for (int c = 0; c < q; ++c) {
        auto t = topo.hop_targets(c);
        targets.insert(targets.end(), t.begin(), t.end());
    }

    DriverMatrix m;
    m.dim = dim;
    m.entry_value = -2.0 * coupling;
    m.row_offsets.resize(dim + 1);
    m.cols.resize(static_cast<std::size_t>(dim) * row_degree);

    std::vector<std::uint32_t> row(row_degree);
    std::uint64_t pos = 0;
    for (BasisIndex b = 0; b < dim; ++b) {
        m.row_offsets[b] = pos;
        int k = 0;
        for (int i = 0; i < n; ++i) {
            const int c = space.color_at(b, i);
            const BasisIndex base = b - static_cast<BasisIndex>(c) * space.stride(i);
            for (int t = 0; t < per_color; ++t) {
                const int dest = targets[c * per_color + t];
                row[k++] =
                    static_cast<std::uint32_t>(base + static_cast<BasisIndex>(dest) * space.stride(i));
            }
        }
        std::sort(row.begin(), row.end());
        std::copy(row.begin(), row.end(), m.cols.begin() + pos);
        pos += row_degree;
    }
    m.row_offsets[dim] = pos;
    return m;
}

HamiltonianParts assemble_hamiltonian(const RegularGraph& g, int n_colors, DriverKind driver,
                                      double coupling) {
    StateSpace space(g.n_nodes, n_colors);
    DriverTopology topo{driver, n_colors};
    HamiltonianParts parts{space, topo, coupling, {}, {}};
    parts.problem_diagonal = build_problem_diagonal(g, space, coupling);
    parts.driver = build_driver_matrix(space, topo, coupling);
    return parts;
}

void apply_total(const HamiltonianParts& parts, double s, std::span<const double> in,
                 std::span<double> out) {
    const BasisIndex dim = parts.driver.dim;
    if (in.size() != dim || out.size() != dim)
        throw std::invalid_argument("vector length does not match Hamiltonian dimension");
    const double hop = (1.0 - s) * parts.driver.entry_value;
    const double* diag = parts.problem_diagonal.data();
    const std::uint64_t* offsets = parts.driver.row_offsets.data();
    const std::uint32_t* cols = parts.driver.cols.data();
    for (BasisIndex r = 0; r < dim; ++r) {
        double acc = 0.0;
        const std::uint64_t end = offsets[r + 1];
        for (std::uint64_t k = offsets[r]; k < end; ++k) acc += in[cols[k]];
        out[r] = s * diag[r] * in[r] + hop * acc;
    }
}

Eigen::MatrixXd dense_total(const HamiltonianParts& parts, double s) {
    const BasisIndex dim = parts.driver.dim;
    if (dim > 4096) throw std::invalid_argument("dense_total limited to dim <= 4096");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    const double hop = (1.0 - s) * parts.driver.entry_value;
    for (BasisIndex r = 0; r < dim; ++r) {
        m(r, r) = s * parts.problem_diagonal[r];
        for (auto c : parts.driver.row(r)) m(r, c) += hop;
    }
    return m;
}

}  // namespace cqa
