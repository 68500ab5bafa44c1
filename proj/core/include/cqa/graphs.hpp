#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cqa {

// One color per node, entries in [0, q).
using NodeColoring = std::vector<int>;

// Simple undirected graph with every node of the same degree.
// Edges are (i, j) with i < j, sorted lexicographically.
struct RegularGraph {
    int n_nodes = 0;
    int degree = 0;
    std::vector<std::pair<int, int>> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
    std::vector<std::vector<int>> adjacency() const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Configuration (pairing) model with whole-restart rejection of self-loops
// and multi-edges. Deterministic for a fixed seed.
RegularGraph generate_regular(int n_nodes, int degree, std::uint64_t seed);

ValidationReport validate(const RegularGraph& g);

// Number of edges whose endpoints share a color (the classical conflict count).
int count_conflicts(const RegularGraph& g, const NodeColoring& coloring);

// JSONL persistence: one graph per line, {"n":..,"c":..,"edges":[[i,j],...]}.
// Loading rejects lines that fail validate().
void save_graphs_jsonl(const std::string& path, const std::vector<RegularGraph>& graphs);
std::vector<RegularGraph> load_graphs_jsonl(const std::string& path);

}  // namespace cqa
