#include "cqa/statespace.hpp"

#include <limits>
#include <stdexcept>

namespace cqa {

StateSpace::StateSpace(int n_nodes, int n_colors) : n_nodes_(n_nodes), n_colors_(n_colors) {
    if (n_nodes < 1) throw std::invalid_argument("n_nodes must be >= 1");
    if (n_colors < 2) throw std::invalid_argument("n_colors must be >= 2");
    pow_.resize(n_nodes + 1);
    pow_[0] = 1;
    for (int i = 0; i < n_nodes; ++i) {
        if (pow_[i] > std::numeric_limits<BasisIndex>::max() / n_colors)
            throw std::invalid_argument("q^N overflows 64 bits");
        pow_[i + 1] = pow_[i] * static_cast<BasisIndex>(n_colors);
    }
    dim_ = pow_[n_nodes];
}

BasisIndex StateSpace::encode(const NodeColoring& coloring) const {
    if (static_cast<int>(coloring.size()) != n_nodes_)
        throw std::invalid_argument("coloring length does not match n_nodes");
    BasisIndex b = 0;
    for (int i = 0; i < n_nodes_; ++i) {
        int c = coloring[i];
        if (c < 0 || c >= n_colors_) throw std::out_of_range("color out of range");
        b += static_cast<BasisIndex>(c) * pow_[i];
    }
    return b;
}

NodeColoring StateSpace::decode(BasisIndex b) const {
    if (b >= dim_) throw std::out_of_range("basis index out of range");
    NodeColoring coloring(n_nodes_);
    for (int i = 0; i < n_nodes_; ++i) {
        coloring[i] = static_cast<int>(b % static_cast<BasisIndex>(n_colors_));
        b /= static_cast<BasisIndex>(n_colors_);
    }
    return coloring;
}

}  // namespace cqa
