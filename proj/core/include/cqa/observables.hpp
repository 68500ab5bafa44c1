#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cqa/eigensolver.hpp"
#include "cqa/graphs.hpp"
#include "cqa/statespace.hpp"

namespace cqa {

struct EffectiveFieldStats {
    double s = 0.0;
    double mean = 0.0;         // <h_eff>, units of J
    double fluctuation = 0.0;  // Delta_eff, >= 0
    double delta1 = 0.0;       // analytic s=1 fluctuation for the probed degree
    std::optional<double> ratio_linear;    // fluctuation / (s * delta1), for s > 0
    std::optional<double> ratio_disorder;  // fluctuation / (1 - s), for s < 1
};

struct TheoreticalEstimates {
    double mean_s1 = 0.0;
    double second_moment_s1 = 0.0;
    double delta1 = 0.0;
};

// Two-spin reduced density matrix in conserved-magnetization X form, basis
// {uu, ud, du, dd}. The single coherence z is real (real amplitude convention).
struct XFormRDM {
    double x = 0.0;  // P(uu)
    double u = 0.0;  // P(ud)
    double v = 0.0;  // P(du)
    double y = 0.0;  // P(dd)
    double z = 0.0;  // <ud|rho|du>
};

// Moments of the effective field on spin (node, color) in the given state.
// gs.s must be stamped: the field operator carries an explicit factor s.
EffectiveFieldStats effective_field_stats(const GroundState& gs, const StateSpace& space,
                                          const RegularGraph& g, int node, int color,
                                          double coupling);

// mean_s1 = -cJ(q-2)/(2q); second_moment_s1 = (cJ^2/4)[1 + (c-1)(q-2)^2/q^2];
// delta1 = (J/2) sqrt(c [1 - (q-2)^2/q^2]).
TheoreticalEstimates theoretical_estimates(int degree, int n_colors, double coupling);

XFormRDM two_spin_rdm(const GroundState& gs, const StateSpace& space, SpinAddress a,
                      SpinAddress b);

// C = 2 max(|z| - sqrt(x y), 0).
double concurrence(const XFormRDM& rdm);

// Wootters route from a full 4x4 density matrix (real, basis {uu, ud, du, dd}):
// eigenvalues of rho * (sy ⊗ sy) rho* (sy ⊗ sy), descending, then
// max(sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4), 0).
double concurrence_general(const Eigen::Matrix4d& rho);

// X-form embedding into the full 4x4 matrix.
Eigen::Matrix4d to_density_matrix(const XFormRDM& rdm);

// C(node,a; node,a+1 mod q) for a = 0..q-1.
std::vector<double> pair_concurrences(const GroundState& gs, const StateSpace& space, int node);

// Half the sum of the cyclically adjacent pair concurrences; 1 at s = 0.
double intra_chain_concurrence(const GroundState& gs, const StateSpace& space, int node);

}  // namespace cqa
