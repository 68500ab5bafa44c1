#include "cqa/graphs.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "cqa/errors.hpp"
#include "json.hpp"

namespace cqa {

std::vector<std::vector<int>> RegularGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n_nodes);
    for (auto [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    return adj;
}

RegularGraph generate_regular(int n_nodes, int degree, std::uint64_t seed) {
    if (n_nodes < 3 || degree < 1 || degree >= n_nodes) {
        throw InfeasibleDegreeError("no simple " + std::to_string(degree) + "-regular graph on " +
                                    std::to_string(n_nodes) + " nodes");
    }
    if ((static_cast<long long>(n_nodes) * degree) % 2 != 0) {
        throw OddDegreeSumError("n*c = " + std::to_string(n_nodes) + "*" + std::to_string(degree) +
                                " is odd");
    }

    std::mt19937_64 rng(seed);
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n_nodes) * degree);
    for (int v = 0; v < n_nodes; ++v)
        for (int k = 0; k < degree; ++k) stubs.push_back(v);

    constexpr int kMaxRestarts = 10000;
    std::vector<std::pair<int, int>> edges(stubs.size() / 2);
    for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        bool ok = true;
        for (std::size_t m = 0; m < edges.size(); ++m) {
            int a = stubs[2 * m], b = stubs[2 * m + 1];
            if (a == b) {
                ok = false;
                break;
            }
            edges[m] = {std::min(a, b), std::max(a, b)};
        }
        if (!ok) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return RegularGraph{n_nodes, degree, edges};
    }
    throw GenerationStalledError("pairing model exceeded " + std::to_string(kMaxRestarts) +
                                 " restarts for n=" + std::to_string(n_nodes) +
                                 " c=" + std::to_string(degree));
}

ValidationReport validate(const RegularGraph& g) {
    ValidationReport report;
    if (g.n_nodes <= 0) {
        report.violations.push_back("n_nodes must be positive");
        return report;
    }
    if (g.degree < 0) report.violations.push_back("degree must be nonnegative");
    if ((static_cast<long long>(g.n_nodes) * g.degree) % 2 != 0)
        report.violations.push_back("n_nodes * degree is odd");

    std::vector<int> incident(g.n_nodes, 0);
    for (auto [i, j] : g.edges) {
        if (i == j) {
            report.violations.push_back("self-loop at node " + std::to_string(i));
            continue;
        }
        if (i < 0 || j < 0 || i >= g.n_nodes || j >= g.n_nodes) {
            report.violations.push_back("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") out of range");
            continue;
        }
        ++incident[i];
        ++incident[j];
    }
    auto sorted = g.edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        report.violations.push_back("duplicate edge");
    for (int v = 0; v < g.n_nodes; ++v) {
        if (incident[v] != g.degree)
            report.violations.push_back("node " + std::to_string(v) + " has degree " +
                                        std::to_string(incident[v]) + ", expected " +
                                        std::to_string(g.degree));
    }
    return report;
}

int count_conflicts(const RegularGraph& g, const NodeColoring& coloring) {
    if (static_cast<int>(coloring.size()) != g.n_nodes)
        throw std::invalid_argument("coloring length " + std::to_string(coloring.size()) +
                                    " does not match n_nodes " + std::to_string(g.n_nodes));
    int conflicts = 0;
    for (auto [i, j] : g.edges)
        if (coloring[i] == coloring[j]) ++conflicts;
    return conflicts;
}

void save_graphs_jsonl(const std::string& path, const std::vector<RegularGraph>& graphs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto& g : graphs) {
        nlohmann::json j;
        j["n"] = g.n_nodes;
        j["c"] = g.degree;
        auto edges = nlohmann::json::array();
        for (auto [a, b] : g.edges) edges.push_back({a, b});
        j["edges"] = std::move(edges);
        out << j.dump() << '\n';
    }
}

std::vector<RegularGraph> load_graphs_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<RegularGraph> graphs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        RegularGraph g;
        try {
            auto j = nlohmann::json::parse(line);
            g.n_nodes = j.at("n").get<int>();
            g.degree = j.at("c").get<int>();
            for (const auto& e : j.at("edges")) {
                if (!e.is_array() || e.size() != 2)
                    throw std::runtime_error("edge entry is not a pair");
                g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed graph line: " + e.what());
        }
        for (auto [a, b] : g.edges)
            if (a >= b)
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": edges must satisfy i < j");
        if (!std::is_sorted(g.edges.begin(), g.edges.end()))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": edges must be sorted lexicographically");
        auto report = validate(g);
        if (!report.ok()) {
            std::ostringstream msg;
            msg << path << ":" << line_no << ": invalid graph:";
            for (const auto& v : report.violations) msg << " [" << v << "]";
            throw std::runtime_error(msg.str());
        }
        graphs.push_back(std::move(g));
    }
    return graphs;
}

}  // namespace cqa
