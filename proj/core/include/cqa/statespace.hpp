#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cqa/graphs.hpp"

namespace cqa {

// Index of a constrained basis state: a coloring encoded base-q, node 0 least
// significant. The one-up-spin-per-chain constraint holds by construction.
using BasisIndex = std::uint64_t;

struct SpinAddress {
    int node = 0;
    int color = 0;
};

class StateSpace {
  public:
    StateSpace(int n_nodes, int n_colors);

    int n_nodes() const { return n_nodes_; }
    int n_colors() const { return n_colors_; }
    BasisIndex dim() const { return dim_; }
    BasisIndex stride(int node) const { return pow_[node]; }

    BasisIndex encode(const NodeColoring& coloring) const;
    NodeColoring decode(BasisIndex b) const;

    int color_at(BasisIndex b, int node) const {
        return static_cast<int>((b / pow_[node]) % static_cast<BasisIndex>(n_colors_));
    }

    BasisIndex with_color(BasisIndex b, int node, int color) const {
        int old = color_at(b, node);
        return b + (static_cast<BasisIndex>(color) - static_cast<BasisIndex>(old)) * pow_[node];
    }

    // +1 when the addressed spin is up (the node carries that color), else -1.
    int sigma_z(BasisIndex b, SpinAddress addr) const {
        return color_at(b, addr.node) == addr.color ? +1 : -1;
    }

    // Moves node's up-spin from from_color to to_color; nullopt when the spin
    // is elsewhere. hop then its reverse returns the original index.
    std::optional<BasisIndex> hop(BasisIndex b, int node, int from_color, int to_color) const {
        if (color_at(b, node) != from_color) return std::nullopt;
        return with_color(b, node, to_color);
    }

  private:
    int n_nodes_;
    int n_colors_;
    BasisIndex dim_;
    std::vector<BasisIndex> pow_;
};

}  // namespace cqa
