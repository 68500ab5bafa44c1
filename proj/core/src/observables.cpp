#include "cqa/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cqa {

namespace {

void check_probe(const StateSpace& space, int node, int color) {
    if (node < 0 || node >= space.n_nodes()) throw std::out_of_range("probe node out of range");
    if (color < 0 || color >= space.n_colors()) throw std::out_of_range("probe color out of range");
}

void check_state(const GroundState& gs, const StateSpace& space) {
    if (gs.amplitudes.size() != space.dim())
        throw std::invalid_argument("amplitude vector length does not match state space");
}

}  // namespace

EffectiveFieldStats effective_field_stats(const GroundState& gs, const StateSpace& space,
                                          const RegularGraph& g, int node, int color,
                                          double coupling) {
    check_probe(space, node, color);
    check_state(gs, space);
    if (!std::isfinite(gs.s) || gs.s < 0.0 || gs.s > 1.0)
        throw std::invalid_argument("ground state has no valid annealing parameter s");

    std::vector<int> neighbors;
    for (auto [i, j] : g.edges) {
        if (i == node) neighbors.push_back(j);
        if (j == node) neighbors.push_back(i);
    }

    // <S> and <S^2> with S = sum over neighbors of sigma^z_{j,color}; the
    // field is s*(J/2)*S, and S^2 already carries the j = k identity terms.
    double e1 = 0.0, e2 = 0.0;
    const auto& amp = gs.amplitudes;
    for (BasisIndex b = 0; b < space.dim(); ++b) {
        const double p = amp[b] * amp[b];
        if (p == 0.0) continue;
        int sum = 0;
        for (int j : neighbors) sum += (space.color_at(b, j) == color) ? +1 : -1;
        e1 += p * sum;
        e2 += p * static_cast<double>(sum) * sum;
    }

    const double s = gs.s;
    const double halfj = 0.5 * coupling;
    EffectiveFieldStats stats;
    stats.s = s;
    stats.mean = s * halfj * e1;
    const double second = s * s * halfj * halfj * e2;
    stats.fluctuation = std::sqrt(std::max(0.0, second - stats.mean * stats.mean));
    stats.delta1 = theoretical_estimates(g.degree, space.n_colors(), coupling).delta1;
    if (s > 0.0) stats.ratio_linear = stats.fluctuation / (s * stats.delta1);
    if (s < 1.0) stats.ratio_disorder = stats.fluctuation / (1.0 - s);
    return stats;
}

TheoreticalEstimates theoretical_estimates(int degree, int n_colors, double coupling) {
    if (degree < 1) throw std::invalid_argument("degree must be >= 1");
    if (n_colors < 2) throw std::invalid_argument("n_colors must be >= 2");
    const double c = degree;
    const double q = n_colors;
    const double j = coupling;
    TheoreticalEstimates est;
    est.mean_s1 = -c * j * (q - 2.0) / (2.0 * q);
    const double skew = (q - 2.0) * (q - 2.0) / (q * q);
    est.second_moment_s1 = (c * j * j / 4.0) * (1.0 + (c - 1.0) * skew);
    est.delta1 = 0.5 * j * std::sqrt(c * (1.0 - skew));
    return est;
}

XFormRDM two_spin_rdm(const GroundState& gs, const StateSpace& space, SpinAddress a,
                      SpinAddress b) {
    check_probe(space, a.node, a.color);
    check_probe(space, b.node, b.color);
    if (a.node == b.node && a.color == b.color)
        throw std::invalid_argument("two_spin_rdm requires distinct spin addresses");
    check_state(gs, space);

    const auto& amp = gs.amplitudes;
    XFormRDM rdm;
    if (a.node == b.node) {
        // Same chain: up-up is excluded by the one-up-spin constraint, and the
        // ud<->du coherence connects states differing only in that node's color.
        for (BasisIndex i = 0; i < space.dim(); ++i) {
            const double p = amp[i] * amp[i];
            const int c = space.color_at(i, a.node);
            if (c == a.color) {
                rdm.u += p;
                rdm.z += amp[i] * amp[space.with_color(i, a.node, b.color)];
            } else if (c == b.color) {
                rdm.v += p;
            } else {
                rdm.y += p;
            }
        }
    } else {
        // Different chains: flipping ud -> du would move both nodes' up-spins,
        // which always disturbs a third spin, so the coherence vanishes.
        for (BasisIndex i = 0; i < space.dim(); ++i) {
            const double p = amp[i] * amp[i];
            const bool up_a = space.color_at(i, a.node) == a.color;
            const bool up_b = space.color_at(i, b.node) == b.color;
            if (up_a && up_b)
                rdm.x += p;
            else if (up_a)
                rdm.u += p;
            else if (up_b)
                rdm.v += p;
            else
                rdm.y += p;
        }
    }
    return rdm;
}

double concurrence(const XFormRDM& rdm) {
    return 2.0 * std::max(std::abs(rdm.z) - std::sqrt(rdm.x * rdm.y), 0.0);
}

Eigen::Matrix4d to_density_matrix(const XFormRDM& rdm) {
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    rho(0, 0) = rdm.x;
    rho(1, 1) = rdm.u;
    rho(2, 2) = rdm.v;
    rho(3, 3) = rdm.y;
    rho(1, 2) = rdm.z;
    rho(2, 1) = rdm.z;
    return rho;
}

double concurrence_general(const Eigen::Matrix4d& rho) {
    constexpr double kTol = 1e-10;
    if ((rho - rho.transpose()).cwiseAbs().maxCoeff() > kTol)
        throw std::invalid_argument("density matrix must be symmetric");
    if (std::abs(rho.trace() - 1.0) > kTol)
        throw std::invalid_argument("density matrix must have unit trace");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> check(rho);
    if (check.eigenvalues()(0) < -kTol)
        throw std::invalid_argument("density matrix must be positive semidefinite");

    Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;

    const Eigen::Matrix4d m = rho * flip * rho * flip;  // rho real, so rho* = rho
    Eigen::EigenSolver<Eigen::Matrix4d> es(m);
    std::array<double, 4> lambda;
    for (int i = 0; i < 4; ++i) lambda[i] = std::max(0.0, es.eigenvalues()(i).real());
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    const double c = std::sqrt(lambda[0]) - std::sqrt(lambda[1]) - std::sqrt(lambda[2]) -
                     std::sqrt(lambda[3]);
    return std::max(c, 0.0);
}

std::vector<double> pair_concurrences(const GroundState& gs, const StateSpace& space, int node) {
    check_probe(space, node, 0);
    const int q = space.n_colors();
    std::vector<double> out(q);
    for (int a = 0; a < q; ++a)
        out[a] = concurrence(
            two_spin_rdm(gs, space, SpinAddress{node, a}, SpinAddress{node, (a + 1) % q}));
    return out;
}

double intra_chain_concurrence(const GroundState& gs, const StateSpace& space, int node) {
    auto pairs = pair_concurrences(gs, space, node);
    double sum = 0.0;
    for (double c : pairs) sum += c;
    return 0.5 * sum;
}

}  // namespace cqa
