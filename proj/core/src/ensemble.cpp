#include "cqa/ensemble.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cqa/errors.hpp"
#include "cqa/format_detail.hpp"
#include "cqa/observables.hpp"
#include "cqa/rng.hpp"
#include "json.hpp"

namespace cqa {

namespace {

using nlohmann::json;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<RegularGraph> resolve_graphs(const GraphSource& source) {
    if (const auto* file = std::get_if<GraphFile>(&source)) return load_graphs_jsonl(file->path);
    const auto& gen = std::get<GraphGenSpec>(source);
    if (gen.count < 1) throw std::invalid_argument("graph count must be >= 1");
    std::vector<RegularGraph> graphs;
    graphs.reserve(gen.count);
    for (int i = 0; i < gen.count; ++i)
        graphs.push_back(generate_regular(gen.n_nodes, gen.degree,
                                          derive_stream_seed(gen.seed, i)));
    return graphs;
}

void validate_sweep_config(const SweepConfig& cfg, const std::vector<RegularGraph>& graphs) {
    if (graphs.empty()) throw std::invalid_argument("no graphs to sweep");
    const int n = graphs.front().n_nodes;
    for (const auto& g : graphs)
        if (g.n_nodes != n)
            throw std::invalid_argument("all graphs in a sweep must have the same node count");
    if (cfg.n_colors < 2) throw std::invalid_argument("n_colors must be >= 2");
    if (cfg.coupling <= 0.0) throw std::invalid_argument("coupling must be positive");
    if (cfg.s_grid.empty()) throw std::invalid_argument("s_grid must be nonempty");
    for (std::size_t i = 0; i < cfg.s_grid.size(); ++i) {
        const double s = cfg.s_grid[i];
        if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("s_grid values must lie in [0, 1]");
        if (i > 0 && !(cfg.s_grid[i - 1] < s))
            throw std::invalid_argument("s_grid must be strictly increasing");
    }
    if (cfg.probe_node < 0 || cfg.probe_node >= n)
        throw std::invalid_argument("probe_node out of range");
    if (cfg.probe_color < 0 || cfg.probe_color >= cfg.n_colors)
        throw std::invalid_argument("probe_color out of range");
}

json graph_source_json(const GraphSource& source) {
    json j;
    if (const auto* file = std::get_if<GraphFile>(&source)) {
        j["path"] = file->path;
    } else {
        const auto& gen = std::get<GraphGenSpec>(source);
        j["n_nodes"] = gen.n_nodes;
        j["degree"] = gen.degree;
        j["count"] = gen.count;
        j["seed"] = gen.seed;
    }
    return j;
}

void write_sweep_manifest(const SweepConfig& cfg, const SweepResult& result,
                          std::size_t n_graphs) {
    json m;
    m["artifact_version"] = kArtifactVersion;
    m["command"] = "sweep";
    m["graphs"] = graph_source_json(cfg.graphs);
    m["n_graphs"] = n_graphs;
    m["n_colors"] = cfg.n_colors;
    m["driver"] = cfg.driver == DriverKind::NN ? "nn" : "fc";
    m["coupling"] = cfg.coupling;
    m["s_grid"] = cfg.s_grid;
    m["probe_node"] = cfg.probe_node;
    m["probe_color"] = cfg.probe_color;
    m["solver"] = {{"tolerance", cfg.solver.tolerance},
                   {"max_iterations", cfg.solver.max_iterations},
                   {"reorthogonalization",
                    cfg.solver.reorthogonalization == Reorthogonalization::full ? "full" : "none"},
                   {"seed", cfg.solver.seed}};
    m["threads"] = cfg.threads;
    m["output"] = cfg.output;
    m["n_records"] = result.records.size();
    m["non_converged"] = result.failures;
    std::ofstream out(cfg.output + ".manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest for " + cfg.output);
    out << m.dump(2) << '\n';
}

struct BinAccumulator {
    std::vector<double> c_ch;
    double fluct_sum = 0.0;
};

std::vector<AggregateRow> finalize_bins(std::map<double, BinAccumulator>& bins) {
    std::vector<AggregateRow> rows;
    rows.reserve(bins.size());
    for (auto& [key, acc] : bins) {
        AggregateRow row;
        row.key = key;
        row.n = static_cast<long>(acc.c_ch.size());
        double mean = 0.0;
        for (double v : acc.c_ch) mean += v;
        mean /= static_cast<double>(row.n);
        double var = 0.0;
        for (double v : acc.c_ch) var += (v - mean) * (v - mean);
        row.mean_c_ch = mean;
        row.std_c_ch = std::sqrt(var / static_cast<double>(row.n));
        row.mean_eff_fluctuation = acc.fluct_sum / static_cast<double>(row.n);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

SweepResult run_cqa_sweep(const SweepConfig& cfg) {
    auto graphs = resolve_graphs(cfg.graphs);
    validate_sweep_config(cfg, graphs);

    const int n = graphs.front().n_nodes;
    const StateSpace space(n, cfg.n_colors);
    const DriverTopology topo{cfg.driver, cfg.n_colors};
    // The driver never depends on the graph; one assembly serves every task.
    const DriverMatrix driver = build_driver_matrix(space, topo, cfg.coupling);
    const int q = cfg.n_colors;

    std::vector<std::vector<SweepRecord>> per_graph(graphs.size());
    std::vector<std::vector<std::string>> per_graph_failures(graphs.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        try {
            while (true) {
                const std::size_t gid = next.fetch_add(1);
                if (gid >= graphs.size() || abort.load()) return;
                const auto& g = graphs[gid];
                const auto diag = build_problem_diagonal(g, space, cfg.coupling);
                std::vector<SweepRecord>& records = per_graph[gid];
                records.reserve(cfg.s_grid.size());
                std::vector<double> warm;

                for (double s : cfg.s_grid) {
                    SweepRecord rec;
                    rec.graph_id = static_cast<int>(gid);
                    rec.s = s;
                    rec.pair_concurrence.assign(q, std::numeric_limits<double>::quiet_NaN());

                    auto matvec = [&, s](std::span<const double> in, std::span<double> out) {
                        const double hop = (1.0 - s) * driver.entry_value;
                        for (BasisIndex r = 0; r < driver.dim; ++r) {
                            double acc = 0.0;
                            const std::uint64_t end = driver.row_offsets[r + 1];
                            for (std::uint64_t k = driver.row_offsets[r]; k < end; ++k)
                                acc += in[driver.cols[k]];
                            out[r] = s * diag[r] * in[r] + hop * acc;
                        }
                    };

                    SolverConfig solver = cfg.solver;
                    if (!warm.empty()) solver.warm_start = warm;
                    try {
                        GroundState gs = ground_state(matvec, space.dim(), solver);
                        gs.s = s;
                        rec.energy = gs.energy;
                        auto stats = effective_field_stats(gs, space, g, cfg.probe_node,
                                                           cfg.probe_color, cfg.coupling);
                        rec.eff_mean = stats.mean;
                        rec.eff_fluctuation = stats.fluctuation;
                        if (stats.ratio_linear) rec.ratio_linear = *stats.ratio_linear;
                        if (stats.ratio_disorder) rec.ratio_disorder = *stats.ratio_disorder;
                        rec.pair_concurrence = pair_concurrences(gs, space, cfg.probe_node);
                        double sum = 0.0;
                        for (double cpair : rec.pair_concurrence) sum += cpair;
                        rec.c_ch = 0.5 * sum;
                        warm = std::move(gs.amplitudes);
                    } catch (const NotConvergedError& e) {
                        rec.converged = false;
                        rec.energy = std::numeric_limits<double>::quiet_NaN();
                        rec.eff_mean = rec.eff_fluctuation = rec.c_ch =
                            std::numeric_limits<double>::quiet_NaN();
                        std::ostringstream msg;
                        msg << "graph=" << gid << " s=" << detail::format_sig(s) << ": "
                            << e.what();
                        per_graph_failures[gid].push_back(msg.str());
                    }
                    records.push_back(std::move(rec));
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            abort.store(true);
        }
    };

    const int n_threads = std::min<int>(resolve_threads(cfg.threads),
                                        static_cast<int>(graphs.size()));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    SweepResult result;
    result.records.reserve(graphs.size() * cfg.s_grid.size());
    for (std::size_t gid = 0; gid < graphs.size(); ++gid) {
        for (auto& rec : per_graph[gid]) result.records.push_back(std::move(rec));
        for (auto& f : per_graph_failures[gid]) result.failures.push_back(std::move(f));
    }

    if (!cfg.output.empty()) {
        write_records_csv(cfg.output, result.records, q);
        write_sweep_manifest(cfg, result, graphs.size());
    }
    return result;
}

std::vector<AggregateRow> aggregate(const std::vector<SweepRecord>& records, GroupBy group) {
    if (records.empty()) throw std::invalid_argument("aggregate requires nonempty records");
    constexpr int kBinsPerDecade = 20;
    std::map<double, BinAccumulator> bins;
    for (const auto& rec : records) {
        if (!rec.converged) continue;
        double key;
        if (group == GroupBy::by_s) {
            key = rec.s;
        } else {
            if (!std::isfinite(rec.ratio_disorder) || rec.ratio_disorder <= 0.0) continue;
            const int idx =
                static_cast<int>(std::floor(std::log10(rec.ratio_disorder) * kBinsPerDecade));
            key = std::pow(10.0, (idx + 0.5) / kBinsPerDecade);
        }
        auto& acc = bins[key];
        acc.c_ch.push_back(rec.c_ch);
        acc.fluct_sum += rec.eff_fluctuation;
    }
    return finalize_bins(bins);
}

void write_records_csv(const std::string& path, const std::vector<SweepRecord>& records,
                       int n_colors) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "graph_id,s,energy,eff_mean,eff_fluctuation,ratio_linear,ratio_disorder,c_ch";
    for (int a = 0; a < n_colors; ++a) out << ",c_pair_" << a;
    out << ",converged\n";
    for (const auto& r : records) {
        out << r.graph_id << ',' << detail::format_sig(r.s) << ',' << detail::format_sig(r.energy)
            << ',' << detail::format_sig(r.eff_mean) << ','
            << detail::format_sig(r.eff_fluctuation) << ',' << detail::format_sig(r.ratio_linear)
            << ',' << detail::format_sig(r.ratio_disorder) << ',' << detail::format_sig(r.c_ch);
        for (double c : r.pair_concurrence) out << ',' << detail::format_sig(c);
        out << ',' << (r.converged ? 1 : 0) << '\n';
    }
}

void write_aggregate_csv(const std::string& path, const std::vector<AggregateRow>& rows,
                         const std::string& key_name) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << key_name << ",mean_c_ch,std_c_ch,mean_eff_fluctuation,n\n";
    for (const auto& r : rows)
        out << detail::format_sig(r.key) << ',' << detail::format_sig(r.mean_c_ch) << ','
            << detail::format_sig(r.std_c_ch) << ',' << detail::format_sig(r.mean_eff_fluctuation)
            << ',' << r.n << '\n';
}

std::vector<double> parse_s_grid(const std::string& text) {
    double a = 0.0, b = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
        throw std::invalid_argument("s-grid must have the form A:B:STEP, got '" + text + "'");
    if (!(a >= 0.0 && b <= 1.0 && a <= b)) throw std::invalid_argument("s-grid must lie in [0, 1]");
    if (!(step > 0.0)) throw std::invalid_argument("s-grid step must be positive");
    std::vector<double> grid;
    const long n = std::lround(std::floor((b - a) / step + 1e-9));
    grid.reserve(n + 1);
    for (long i = 0; i <= n; ++i) grid.push_back(a + static_cast<double>(i) * step);
    return grid;
}

std::optional<FigureId> parse_figure_id(std::string_view name) {
    if (name == "fig2") return FigureId::fig2;
    if (name == "fig3") return FigureId::fig3;
    if (name == "fig4") return FigureId::fig4;
    if (name == "fig5") return FigureId::fig5;
    if (name == "fig6-like") return FigureId::fig6_like;
    return std::nullopt;
}

std::string figure_id_name(FigureId id) {
    switch (id) {
        case FigureId::fig2: return "fig2";
        case FigureId::fig3: return "fig3";
        case FigureId::fig4: return "fig4";
        case FigureId::fig5: return "fig5";
        case FigureId::fig6_like: return "fig6-like";
    }
    return "?";
}

namespace {

SweepConfig figure_sweep_config(int n, int c, int q, DriverKind driver, int count,
                                std::uint64_t seed, int threads,
                                const std::vector<double>& grid) {
    SweepConfig cfg;
    cfg.graphs = GraphGenSpec{n, c, count, seed};
    cfg.n_colors = q;
    cfg.driver = driver;
    cfg.s_grid = grid;
    cfg.threads = threads;
    return cfg;
}

void write_series_csv(const std::string& path, const std::vector<std::array<double, 2>>& xy,
                      const std::string& header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << header << '\n';
    for (const auto& p : xy)
        out << detail::format_sig(p[0]) << ',' << detail::format_sig(p[1]) << '\n';
}

}  // namespace

void reproduce_figure(const FigureConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const auto path = [&](const std::string& name) {
        return (fs::path(cfg.out_dir) / name).string();
    };

    json manifest;
    manifest["artifact_version"] = kArtifactVersion;
    manifest["command"] = "figure";
    manifest["id"] = figure_id_name(cfg.id);
    manifest["ensemble"] = cfg.ensemble;
    manifest["seed"] = cfg.seed;
    auto series = json::array();

    std::uint64_t stream = 0;
    const auto next_seed = [&]() { return derive_stream_seed(cfg.seed, stream++); };

    switch (cfg.id) {
        case FigureId::fig2: {
            // One selected instance per degree, as in the source figure.
            const auto grid = parse_s_grid("0.01:0.98:0.01");
            for (int c : {2, 3, 4}) {
                auto sweep = figure_sweep_config(6, c, 4, DriverKind::NN, 1, next_seed(),
                                                 cfg.threads, grid);
                auto result = run_cqa_sweep(sweep);
                std::vector<std::array<double, 2>> xy;
                for (const auto& rec : result.records)
                    if (rec.converged) xy.push_back({rec.s, rec.ratio_linear});
                const std::string file = "fig2_c" + std::to_string(c) + ".csv";
                write_series_csv(path(file), xy, "s,ratio_linear");
                series.push_back({{"file", file},
                                  {"n_nodes", 6},
                                  {"degree", c},
                                  {"n_colors", 4},
                                  {"driver", "nn"},
                                  {"graphs", 1}});
            }
            break;
        }
        case FigureId::fig3:
        case FigureId::fig4: {
            const auto grid = parse_s_grid("0:0.98:0.01");
            const bool binned = cfg.id == FigureId::fig4;
            std::vector<DriverKind> drivers =
                binned ? std::vector<DriverKind>{DriverKind::NN, DriverKind::FC}
                       : std::vector<DriverKind>{DriverKind::NN};
            for (DriverKind d : drivers) {
                const std::string dname = d == DriverKind::NN ? "nn" : "fc";
                for (int c : {2, 3, 4}) {
                    auto sweep = figure_sweep_config(8, c, 4, d, cfg.ensemble, next_seed(),
                                                     cfg.threads, grid);
                    auto result = run_cqa_sweep(sweep);
                    auto rows = aggregate(result.records,
                                          binned ? GroupBy::by_ratio_bins : GroupBy::by_s);
                    const std::string file = figure_id_name(cfg.id) + "_" + dname + "_c" +
                                             std::to_string(c) + ".csv";
                    write_aggregate_csv(path(file), rows, binned ? "ratio_disorder" : "s");
                    series.push_back({{"file", file},
                                      {"n_nodes", 8},
                                      {"degree", c},
                                      {"n_colors", 4},
                                      {"driver", dname},
                                      {"graphs", cfg.ensemble}});
                }
            }
            break;
        }
        case FigureId::fig5: {
            const auto grid = parse_s_grid("0:0.98:0.01");
            for (int q : {4, 100}) {
                for (int c : {2, 3, 4}) {
                    const double delta1 = theoretical_estimates(c, q, 1.0).delta1;
                    // Uniform disorder, plotted against Delta1*s/(1-s).
                    {
                        DisorderSpec spec = uniform_disorder_matching_fields(c, q);
                        auto ens = chain_ensemble(spec, q, grid, cfg.ensemble, next_seed());
                        const std::string file = "fig5_uniform_q" + std::to_string(q) + "_c" +
                                                 std::to_string(c) + ".csv";
                        std::ofstream out(path(file), std::ios::binary);
                        out << "s,delta1_s_over_1ms,mean,std,n\n";
                        for (const auto& row : ens.by_s) {
                            const double x = row.key < 1.0
                                                 ? delta1 * row.key / (1.0 - row.key)
                                                 : std::numeric_limits<double>::quiet_NaN();
                            out << detail::format_sig(row.key) << ',' << detail::format_sig(x)
                                << ',' << detail::format_sig(row.mean) << ','
                                << detail::format_sig(row.std_dev) << ',' << row.n << '\n';
                        }
                        series.push_back({{"file", file},
                                          {"disorder", "uniform"},
                                          {"n_sites", q},
                                          {"degree", c},
                                          {"samples", cfg.ensemble}});
                    }
                    // Discrete disorder, binned against per-sample Delta_eff/(1-s).
                    {
                        DisorderSpec spec = DiscreteDisorder{c, q};
                        auto ens = chain_ensemble(spec, q, grid, cfg.ensemble, next_seed());
                        const std::string base =
                            "fig5_discrete_q" + std::to_string(q) + "_c" + std::to_string(c);
                        write_chain_aggregate_csv(path(base + "_binned.csv"),
                                                  bin_chain_samples_log(ens.samples),
                                                  "ratio_disorder");
                        write_chain_aggregate_csv(path(base + "_by_s.csv"), ens.by_s, "s");
                        series.push_back({{"file", base + "_binned.csv"},
                                          {"disorder", "discrete"},
                                          {"n_sites", q},
                                          {"degree", c},
                                          {"samples", cfg.ensemble}});
                    }
                }
            }
            break;
        }
        case FigureId::fig6_like: {
            const auto grid = parse_s_grid("0:0.98:0.01");
            struct Panel {
                int n, q;
                std::vector<int> degrees;
            };
            // Odd node count restricts the degree to even values.
            const std::vector<Panel> panels = {{8, 5, {2, 3, 4}}, {9, 4, {2, 4}}};
            for (const auto& panel : panels) {
                for (int c : panel.degrees) {
                    auto sweep = figure_sweep_config(panel.n, c, panel.q, DriverKind::NN,
                                                     cfg.ensemble, next_seed(), cfg.threads, grid);
                    auto result = run_cqa_sweep(sweep);
                    const std::string base = "fig6like_n" + std::to_string(panel.n) + "q" +
                                             std::to_string(panel.q) + "_c" + std::to_string(c);
                    write_aggregate_csv(path(base + "_binned.csv"),
                                        aggregate(result.records, GroupBy::by_ratio_bins),
                                        "ratio_disorder");
                    write_aggregate_csv(path(base + "_by_s.csv"),
                                        aggregate(result.records, GroupBy::by_s), "s");
                    series.push_back({{"file", base + "_binned.csv"},
                                      {"n_nodes", panel.n},
                                      {"degree", c},
                                      {"n_colors", panel.q},
                                      {"driver", "nn"},
                                      {"graphs", cfg.ensemble}});
                }
            }
            break;
        }
    }

    manifest["series"] = series;
    std::ofstream out(path("manifest.json"), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write figure manifest");
    out << manifest.dump(2) << '\n';
}

}  // namespace cqa
