#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cqa/chain.hpp"
#include "cqa/eigensolver.hpp"
#include "cqa/graphs.hpp"
#include "cqa/hamiltonian.hpp"

namespace cqa {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct GraphFile {
    std::string path;
};

struct GraphGenSpec {
    int n_nodes = 8;
    int degree = 3;
    int count = 1;
    std::uint64_t seed = 0;
};

using GraphSource = std::variant<GraphFile, GraphGenSpec>;

struct SweepConfig {
    GraphSource graphs;
    int n_colors = 4;
    DriverKind driver = DriverKind::NN;
    double coupling = 1.0;
    std::vector<double> s_grid;  // strictly increasing, within [0, 1]
    int probe_node = 0;
    int probe_color = 0;
    SolverConfig solver;
    std::string output;  // CSV path; empty keeps results in memory only
    int threads = 0;     // 0 = hardware concurrency
};

struct SweepRecord {
    int graph_id = 0;
    double s = 0.0;
    double energy = 0.0;
    double eff_mean = 0.0;
    double eff_fluctuation = 0.0;
    double ratio_linear = std::numeric_limits<double>::quiet_NaN();    // NaN at s = 0
    double ratio_disorder = std::numeric_limits<double>::quiet_NaN();  // NaN at s = 1
    double c_ch = 0.0;
    std::vector<double> pair_concurrence;  // C(a, a+1 mod q)
    bool converged = true;
};

struct SweepResult {
    std::vector<SweepRecord> records;   // graph-major, s ascending within a graph
    std::vector<std::string> failures;  // one line per non-converged solve
};

// Ground state and observables for every (graph, s), s ascending with warm
// starts within each graph. Deterministic for a fixed config, independent of
// the worker count. Writes cfg.output (plus <output>.manifest.json) when set.
SweepResult run_cqa_sweep(const SweepConfig& cfg);

enum class GroupBy { by_s, by_ratio_bins };

struct AggregateRow {
    double key = 0.0;  // s, or a ratio-bin center
    double mean_c_ch = 0.0;
    double std_c_ch = 0.0;  // population standard deviation
    double mean_eff_fluctuation = 0.0;
    long n = 0;
};

// Non-converged records are skipped; by_ratio_bins uses log-space bins of
// ratio_disorder, 20 per decade.
std::vector<AggregateRow> aggregate(const std::vector<SweepRecord>& records, GroupBy group);

void write_records_csv(const std::string& path, const std::vector<SweepRecord>& records,
                       int n_colors);
void write_aggregate_csv(const std::string& path, const std::vector<AggregateRow>& rows,
                         const std::string& key_name);

// "A:B:STEP" -> inclusive grid from A to B.
std::vector<double> parse_s_grid(const std::string& text);

enum class FigureId { fig2, fig3, fig4, fig5, fig6_like };

std::optional<FigureId> parse_figure_id(std::string_view name);
std::string figure_id_name(FigureId id);

struct FigureConfig {
    FigureId id = FigureId::fig2;
    std::string out_dir;
    int ensemble = 1000;  // graphs (or chain samples) per series
    std::uint64_t seed = 0;
    int threads = 0;
};

// Emits the CSV series needed to re-plot the requested figure, plus a
// manifest.json recording every parameter and seed.
void reproduce_figure(const FigureConfig& cfg);

}  // namespace cqa
