#include "cqa/chain.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

#include "cqa/format_detail.hpp"
#include "cqa/observables.hpp"
#include "cqa/rng.hpp"

namespace cqa {

UniformDisorder uniform_disorder_matching_fields(int degree, int n_sites) {
    const double delta1 = theoretical_estimates(degree, n_sites, 1.0).delta1;
    UniformDisorder d;
    d.mu = -degree * (0.5 - 1.0 / n_sites);
    d.half_width = std::sqrt(3.0) * delta1;
    return d;
}

std::vector<double> sample_potential(const DisorderSpec& spec, int n_sites,
                                     std::mt19937_64& rng) {
    if (n_sites < 2) throw std::invalid_argument("chain needs at least 2 sites");
    std::vector<double> h(n_sites);
    if (const auto* u = std::get_if<UniformDisorder>(&spec)) {
        if (u->half_width < 0.0) throw std::invalid_argument("half_width must be >= 0");
        std::uniform_real_distribution<double> dist(u->mu - u->half_width, u->mu + u->half_width);
        for (auto& x : h) x = u->half_width == 0.0 ? u->mu : dist(rng);
    } else {
        const auto& d = std::get<DiscreteDisorder>(spec);
        if (d.degree < 1) throw std::invalid_argument("degree must be >= 1");
        if (d.n_colors < 2) throw std::invalid_argument("n_colors must be >= 2");
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        const double p_up = 1.0 / d.n_colors;
        for (auto& x : h) {
            int sum = 0;
            for (int i = 0; i < d.degree; ++i) sum += dist(rng) < p_up ? +1 : -1;
            x = 0.5 * sum;
        }
    }
    return h;
}

std::vector<double> chain_ground_state(const ChainInstance& inst) {
    const int q = inst.n_sites;
    if (q < 2) throw std::invalid_argument("chain needs at least 2 sites");
    if (static_cast<int>(inst.potentials.size()) != q)
        throw std::invalid_argument("potential length does not match n_sites");

    const double hop = -2.0 * (1.0 - inst.s) * inst.coupling;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(q, q);
    for (int a = 0; a < q; ++a) m(a, a) = 2.0 * inst.s * inst.coupling * inst.potentials[a];
    for (int a = 0; a < q; ++a) {
        int b = (a + 1) % q;
        if (b == a) continue;
        // q = 2 visits the (0,1) bond from both directions; keep a single bond.
        if (m(a, b) != 0.0) continue;
        m(a, b) = hop;
        m(b, a) = hop;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd v = es.eigenvectors().col(0);
    // Positive overall sign (the s < 1 ground state is nodeless anyway).
    double sum = v.sum();
    if (sum < 0.0) v = -v;
    return {v.data(), v.data() + q};
}

double chain_concurrence(std::span<const double> psi) {
    const int q = static_cast<int>(psi.size());
    if (q < 2) throw std::invalid_argument("chain needs at least 2 sites");
    double sum = 0.0;
    for (int a = 0; a < q; ++a) sum += 2.0 * std::abs(psi[a]) * std::abs(psi[(a + 1) % q]);
    return 0.5 * sum;
}

namespace {

double population_std(std::span<const double> xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::sqrt(var / static_cast<double>(xs.size()));
}

}  // namespace

ChainEnsembleResult chain_ensemble(const DisorderSpec& spec, int n_sites,
                                   std::span<const double> s_grid, int n_samples,
                                   std::uint64_t master_seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (s_grid.empty()) throw std::invalid_argument("s_grid must be nonempty");

    ChainEnsembleResult result;
    result.samples.reserve(static_cast<std::size_t>(n_samples) * s_grid.size());
    for (int id = 0; id < n_samples; ++id) {
        std::mt19937_64 rng(derive_stream_seed(master_seed, static_cast<std::uint64_t>(id)));
        const auto h = sample_potential(spec, n_sites, rng);
        const double h_std = population_std(h);
        ChainInstance inst{n_sites, h, 0.0, 1.0};
        for (double s : s_grid) {
            inst.s = s;
            const auto psi = chain_ground_state(inst);
            result.samples.push_back({id, s, s * h_std, chain_concurrence(psi)});
        }
    }

    result.by_s.reserve(s_grid.size());
    for (std::size_t si = 0; si < s_grid.size(); ++si) {
        std::vector<double> vals;
        vals.reserve(n_samples);
        for (int id = 0; id < n_samples; ++id)
            vals.push_back(result.samples[static_cast<std::size_t>(id) * s_grid.size() + si].c_ds);
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        result.by_s.push_back(
            {s_grid[si], mean, population_std(vals), static_cast<long>(vals.size())});
    }
    return result;
}

std::vector<ChainAggregateRow> bin_chain_samples_log(const std::vector<ChainSample>& samples,
                                                     int bins_per_decade) {
    if (bins_per_decade < 1) throw std::invalid_argument("bins_per_decade must be >= 1");
    std::map<int, std::vector<double>> bins;
    for (const auto& sm : samples) {
        if (sm.s >= 1.0 || sm.delta_eff_empirical <= 0.0) continue;
        const double ratio = sm.delta_eff_empirical / (1.0 - sm.s);
        const int idx = static_cast<int>(std::floor(std::log10(ratio) * bins_per_decade));
        bins[idx].push_back(sm.c_ds);
    }
    std::vector<ChainAggregateRow> rows;
    rows.reserve(bins.size());
    for (const auto& [idx, vals] : bins) {
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        const double center = std::pow(10.0, (idx + 0.5) / bins_per_decade);
        rows.push_back({center, mean, population_std(vals), static_cast<long>(vals.size())});
    }
    return rows;
}

void write_chain_samples_csv(const std::string& path, const std::vector<ChainSample>& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "sample_id,s,delta_eff_empirical,c_ds\n";
    for (const auto& sm : samples)
        out << sm.sample_id << ',' << detail::format_sig(sm.s) << ','
            << detail::format_sig(sm.delta_eff_empirical) << ',' << detail::format_sig(sm.c_ds)
            << '\n';
}

void write_chain_aggregate_csv(const std::string& path,
                               const std::vector<ChainAggregateRow>& rows,
                               const std::string& key_name) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << key_name << ",mean,std,n\n";
    for (const auto& r : rows)
        out << detail::format_sig(r.key) << ',' << detail::format_sig(r.mean) << ','
            << detail::format_sig(r.std_dev) << ',' << r.n << '\n';
}

}  // namespace cqa
