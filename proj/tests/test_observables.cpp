#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "support/test_utils.hpp"

#include "cqa/eigensolver.hpp"
#include "cqa/hamiltonian.hpp"
#include "cqa/observables.hpp"

using namespace cqa;
using namespace cqa::test;

namespace {

GroundState solve(const HamiltonianParts& parts, double s) {
    auto gs = ground_state(matvec_of(parts, s), parts.driver.dim, {});
    gs.s = s;
    return gs;
}

// Independent effective-field moments: materialize the diagonal of
// S = sum_j sigma^z_{j,color} over the probe's neighbors and take plain
// quadratic forms.
struct FieldMoments {
    double mean, second;
};

FieldMoments field_moments_oracle(const GroundState& gs, const StateSpace& space,
                                  const RegularGraph& g, int node, int color, double coupling) {
    std::vector<double> field(space.dim(), 0.0);
    for (BasisIndex b = 0; b < space.dim(); ++b) {
        double h = 0.0;
        for (auto [i, j] : g.edges) {
            if (i == node) h += space.sigma_z(b, {j, color});
            if (j == node) h += space.sigma_z(b, {i, color});
        }
        field[b] = gs.s * 0.5 * coupling * h;
    }
    FieldMoments m{0.0, 0.0};
    for (BasisIndex b = 0; b < space.dim(); ++b) {
        const double p = gs.amplitudes[b] * gs.amplitudes[b];
        m.mean += p * field[b];
        m.second += p * field[b] * field[b];
    }
    return m;
}

}  // namespace

TEST_CASE("theoretical estimates") {
    SUBCASE("c=3, q=4, J=1") {
        auto est = theoretical_estimates(3, 4, 1.0);
        CHECK(est.mean_s1 == doctest::Approx(-0.75).epsilon(1e-14));
        CHECK(est.second_moment_s1 == doctest::Approx(1.125).epsilon(1e-14));
        CHECK(est.delta1 == doctest::Approx(0.75).epsilon(1e-14));
    }
    SUBCASE("c=2, q=4, J=1") {
        auto est = theoretical_estimates(2, 4, 1.0);
        CHECK(est.mean_s1 == doctest::Approx(-0.5).epsilon(1e-14));
        CHECK(est.delta1 == doctest::Approx(0.5 * std::sqrt(1.5)).epsilon(1e-12));
    }
    SUBCASE("q=2 collapses the mean") {
        auto est = theoretical_estimates(3, 2, 2.0);
        CHECK(est.mean_s1 == doctest::Approx(0.0));
        CHECK(est.second_moment_s1 == doctest::Approx(3.0 * 4.0 / 4.0));
        CHECK(est.delta1 == doctest::Approx(1.0 * std::sqrt(3.0)));
    }
    SUBCASE("delta1^2 = second moment - mean^2, randomized") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 50; ++trial) {
            int c = 1 + static_cast<int>(rng() % 6);
            int q = 2 + static_cast<int>(rng() % 7);
            double j = 0.25 + (rng() % 8) * 0.5;
            auto est = theoretical_estimates(c, q, j);
            CHECK(est.delta1 * est.delta1 ==
                  doctest::Approx(est.second_moment_s1 - est.mean_s1 * est.mean_s1)
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("effective field statistics") {
    auto k4 = complete_graph(4);  // every node has degree 3
    auto parts = assemble_hamiltonian(k4, 4, DriverKind::NN, 1.0);
    StateSpace space(4, 4);

    SUBCASE("s=0: operator carries the factor s") {
        auto gs = solve(parts, 0.0);
        auto stats = effective_field_stats(gs, space, k4, 0, 0, 1.0);
        CHECK(stats.mean == doctest::Approx(0.0));
        CHECK(stats.fluctuation == doctest::Approx(0.0));
        CHECK(!stats.ratio_linear.has_value());
        REQUIRE(stats.ratio_disorder.has_value());
        CHECK(*stats.ratio_disorder == doctest::Approx(0.0));
    }
    SUBCASE("symmetric ground state mean: s times the s=1 estimate") {
        auto gs = solve(parts, 0.5);
        auto stats = effective_field_stats(gs, space, k4, 0, 0, 1.0);
        CHECK(stats.mean == doctest::Approx(-0.375).epsilon(1e-8));
        CHECK(stats.delta1 == doctest::Approx(0.75).epsilon(1e-12));
    }
    SUBCASE("product-state limit: ratio_linear -> 1 as s -> 0") {
        auto gs = solve(parts, 0.01);
        auto stats = effective_field_stats(gs, space, k4, 0, 0, 1.0);
        REQUIRE(stats.ratio_linear.has_value());
        CHECK(std::abs(*stats.ratio_linear - 1.0) < 0.05);
    }
    SUBCASE("fluctuation^2 matches directly computed moments, any state") {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 20; ++trial) {
            auto gs = fake_state(random_unit_vector(space.dim(), rng()), 0.37);
            auto stats = effective_field_stats(gs, space, k4, 1, 2, 1.0);
            auto oracle = field_moments_oracle(gs, space, k4, 1, 2, 1.0);
            CHECK(stats.mean == doctest::Approx(oracle.mean).epsilon(1e-12));
            CHECK(stats.fluctuation * stats.fluctuation ==
                  doctest::Approx(oracle.second - oracle.mean * oracle.mean)
                      .epsilon(1e-10).scale(1.0));
            CHECK(stats.fluctuation >= 0.0);
        }
    }
    SUBCASE("probe validation") {
        auto gs = solve(parts, 0.5);
        CHECK_THROWS_AS(effective_field_stats(gs, space, k4, 4, 0, 1.0), std::out_of_range);
        CHECK_THROWS_AS(effective_field_stats(gs, space, k4, 0, 4, 1.0), std::out_of_range);
        GroundState unstamped = gs;
        unstamped.s = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(effective_field_stats(unstamped, space, k4, 0, 0, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("two-spin reduced density matrix") {
    auto edge = single_edge_graph();
    auto parts = assemble_hamiltonian(edge, 4, DriverKind::NN, 1.0);
    StateSpace space(2, 4);

    SUBCASE("s=0 same-node neighboring colors") {
        auto gs = solve(parts, 0.0);
        auto rdm = two_spin_rdm(gs, space, {0, 1}, {0, 2});
        CHECK(rdm.x == doctest::Approx(0.0));
        CHECK(rdm.u == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(rdm.v == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(rdm.y == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(rdm.z == doctest::Approx(0.25).epsilon(1e-9));
    }
    SUBCASE("trace is one for arbitrary states") {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 30; ++trial) {
            auto gs = fake_state(random_unit_vector(space.dim(), rng()), 0.5);
            auto rdm = two_spin_rdm(gs, space, {0, 1}, {1, 3});
            CHECK(rdm.x + rdm.u + rdm.v + rdm.y == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(rdm.z) <= std::sqrt(rdm.u * rdm.v) + 1e-12);
        }
    }
    SUBCASE("identical addresses are rejected") {
        auto gs = solve(parts, 0.3);
        CHECK_THROWS_AS(two_spin_rdm(gs, space, {0, 1}, {0, 1}), std::invalid_argument);
    }
}

TEST_CASE("rdm agrees with the brute-force spin-pattern oracle") {
    // all spin pairs, N=2 and N=3, arbitrary states
    std::mt19937_64 rng(12);
    for (int n : {2, 3}) {
        StateSpace space(n, 3);
        for (int trial = 0; trial < 3; ++trial) {
            auto gs = fake_state(random_unit_vector(space.dim(), rng()), 0.4);
            for (int n1 = 0; n1 < n; ++n1)
                for (int c1 = 0; c1 < 3; ++c1)
                    for (int n2 = 0; n2 < n; ++n2)
                        for (int c2 = 0; c2 < 3; ++c2) {
                            if (n1 == n2 && c1 == c2) continue;
                            SpinAddress a{n1, c1}, b{n2, c2};
                            auto rdm = two_spin_rdm(gs, space, a, b);
                            auto rho = brute_force_rdm(gs.amplitudes, space, a, b);
                            CHECK(rdm.x == doctest::Approx(rho(0, 0)).epsilon(1e-12));
                            CHECK(rdm.u == doctest::Approx(rho(1, 1)).epsilon(1e-12));
                            CHECK(rdm.v == doctest::Approx(rho(2, 2)).epsilon(1e-12));
                            CHECK(rdm.y == doctest::Approx(rho(3, 3)).epsilon(1e-12));
                            CHECK(rdm.z == doctest::Approx(rho(1, 2)).epsilon(1e-12));
                            if (n1 != n2) CHECK(rdm.z == 0.0);
                        }
        }
    }
}

TEST_CASE("concurrence from the X form") {
    CHECK(concurrence({0.0, 0.5, 0.5, 0.0, 0.5}) == doctest::Approx(1.0));
    CHECK(concurrence({0.25, 0.25, 0.25, 0.25, 0.0}) == doctest::Approx(0.0));
    CHECK(concurrence({0.0, 0.25, 0.25, 0.5, 0.25}) == doctest::Approx(0.5));  // s=0 pair, q=4
}

TEST_CASE("general concurrence route") {
    SUBCASE("product and Bell states") {
        Eigen::Matrix4d product = Eigen::Matrix4d::Zero();
        product(0, 0) = 1.0;  // |uu><uu|
        CHECK(concurrence_general(product) == doctest::Approx(0.0));

        Eigen::Matrix4d bell = Eigen::Matrix4d::Zero();  // (|ud> + |du>)/sqrt(2)
        bell(1, 1) = bell(2, 2) = bell(1, 2) = bell(2, 1) = 0.5;
        CHECK(concurrence_general(bell) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("invalid density matrices are rejected") {
        Eigen::Matrix4d bad_trace = Eigen::Matrix4d::Identity();
        CHECK_THROWS_AS(concurrence_general(bad_trace), std::invalid_argument);

        Eigen::Matrix4d asym = Eigen::Matrix4d::Zero();
        asym(0, 0) = 1.0;
        asym(0, 1) = 0.2;
        CHECK_THROWS_AS(concurrence_general(asym), std::invalid_argument);

        Eigen::Matrix4d negative = Eigen::Matrix4d::Zero();
        negative(0, 0) = 0.6;
        negative(3, 3) = 0.4;
        negative(1, 1) = 0.1;
        negative(2, 2) = -0.1;
        CHECK_THROWS_AS(concurrence_general(negative), std::invalid_argument);
    }
    SUBCASE("dual routes agree on every rdm from arbitrary states") {
        std::mt19937_64 rng(21);
        StateSpace space(3, 4);
        for (int trial = 0; trial < 10; ++trial) {
            auto gs = fake_state(random_unit_vector(space.dim(), rng()), 0.6);
            for (int c1 = 0; c1 < 4; ++c1)
                for (int c2 = 0; c2 < 4; ++c2) {
                    if (c1 == c2) continue;
                    auto rdm = two_spin_rdm(gs, space, {1, c1}, {1, c2});
                    CHECK(concurrence_general(to_density_matrix(rdm)) ==
                          doctest::Approx(concurrence(rdm)).epsilon(1e-8).scale(1.0));
                }
            auto inter = two_spin_rdm(gs, space, {0, 1}, {2, 3});
            CHECK(concurrence_general(to_density_matrix(inter)) ==
                  doctest::Approx(concurrence(inter)).epsilon(1e-8).scale(1.0));
        }
    }
}

TEST_CASE("intra-chain concurrence") {
    SUBCASE("normalized to 1 at s=0") {
        auto ring = ring_graph(3);
        auto parts = assemble_hamiltonian(ring, 4, DriverKind::NN, 1.0);
        StateSpace space(3, 4);
        auto gs = solve(parts, 0.0);
        for (int node = 0; node < 3; ++node)
            CHECK(intra_chain_concurrence(gs, space, node) ==
                  doctest::Approx(1.0).epsilon(1e-9));
        auto pairs = pair_concurrences(gs, space, 0);
        REQUIRE(pairs.size() == 4);
        for (double c : pairs) CHECK(c == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("isolated node stays at 1 for any s < 1") {
        RegularGraph lone{1, 0, {}};
        auto parts = assemble_hamiltonian(lone, 4, DriverKind::NN, 1.0);
        StateSpace space(1, 4);
        for (double s : {0.0, 0.3, 0.7, 0.95}) {
            auto gs = solve(parts, s);
            CHECK(intra_chain_concurrence(gs, space, 0) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("a classical (concentrated) state has no coherence") {
        StateSpace space(2, 4);
        std::vector<double> amp(space.dim(), 0.0);
        amp[space.encode({2, 1})] = 1.0;
        auto gs = fake_state(std::move(amp), 1.0);
        CHECK(intra_chain_concurrence(gs, space, 0) == doctest::Approx(0.0));
        CHECK(intra_chain_concurrence(gs, space, 1) == doctest::Approx(0.0));
    }
    SUBCASE("q=2 wrap counts the single pair twice and still normalizes") {
        auto edge = single_edge_graph();
        auto parts = assemble_hamiltonian(edge, 2, DriverKind::NN, 1.0);
        StateSpace space(2, 2);
        auto gs = solve(parts, 0.0);
        CHECK(intra_chain_concurrence(gs, space, 0) == doctest::Approx(1.0).epsilon(1e-9));
    }
}
