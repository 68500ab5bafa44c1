#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cqa/statespace.hpp"

using namespace cqa;

TEST_CASE("encode examples") {
    StateSpace s3(3, 4);
    CHECK(s3.encode({0, 0, 0}) == 0);
    CHECK(s3.encode({1, 2, 0}) == 9);  // 1 + 2*4

    StateSpace s8(8, 4);
    CHECK(s8.encode(NodeColoring(8, 3)) == 65535);
    CHECK(s8.dim() == 65536);
}

TEST_CASE("decode examples") {
    StateSpace s3(3, 4);
    CHECK(s3.decode(0) == NodeColoring{0, 0, 0});
    CHECK(s3.decode(9) == NodeColoring{1, 2, 0});
    CHECK(s3.decode(s3.dim() - 1) == NodeColoring{3, 3, 3});
}

TEST_CASE("range errors") {
    StateSpace s(3, 4);
    CHECK_THROWS_AS(s.encode({0, 4, 0}), std::out_of_range);
    CHECK_THROWS_AS(s.encode({0, -1, 0}), std::out_of_range);
    CHECK_THROWS_AS(s.decode(s.dim()), std::out_of_range);
    CHECK_THROWS_AS(s.encode({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(StateSpace(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(StateSpace(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(StateSpace(64, 16), std::invalid_argument);  // q^N overflow
}

TEST_CASE("encode and decode are mutually inverse") {
    StateSpace s(5, 3);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        BasisIndex b = rng() % s.dim();
        CHECK(s.encode(s.decode(b)) == b);
    }
    for (int trial = 0; trial < 200; ++trial) {
        NodeColoring col(5);
        for (auto& c : col) c = static_cast<int>(rng() % 3);
        CHECK(s.decode(s.encode(col)) == col);
    }
}

TEST_CASE("sigma_z reads the stored color") {
    StateSpace s(4, 4);
    BasisIndex b = s.encode({2, 0, 3, 1});
    CHECK(s.sigma_z(b, {0, 2}) == +1);
    CHECK(s.sigma_z(b, {0, 1}) == -1);
    CHECK(s.sigma_z(b, {2, 3}) == +1);
    CHECK(s.sigma_z(b, {2, 0}) == -1);
}

TEST_CASE("one up-spin per node: sigma_z sums to 2 - q") {
    StateSpace s(3, 5);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        BasisIndex b = rng() % s.dim();
        for (int node = 0; node < 3; ++node) {
            int sum = 0;
            for (int a = 0; a < 5; ++a) sum += s.sigma_z(b, {node, a});
            CHECK(sum == 2 - 5);
        }
    }
}

TEST_CASE("hop moves the up-spin and reverses") {
    StateSpace s(3, 4);
    BasisIndex b = s.encode({1, 2, 0});

    auto moved = s.hop(b, 1, 2, 3);
    REQUIRE(moved.has_value());
    CHECK(s.decode(*moved) == NodeColoring{1, 3, 0});
    CHECK(s.hop(*moved, 1, 3, 2) == b);

    CHECK(!s.hop(b, 1, 0, 3).has_value());  // spin is not at color 0
}

TEST_CASE("hop preserves the constraint, randomized") {
    StateSpace s(4, 4);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        BasisIndex b = rng() % s.dim();
        int node = static_cast<int>(rng() % 4);
        int from = static_cast<int>(rng() % 4);
        int to = static_cast<int>(rng() % 4);
        if (from == to) continue;
        auto hopped = s.hop(b, node, from, to);
        if (s.color_at(b, node) == from) {
            REQUIRE(hopped.has_value());
            CHECK(*hopped < s.dim());  // still a valid coloring index
            auto col = s.decode(*hopped);
            auto orig = s.decode(b);
            for (int i = 0; i < 4; ++i)
                CHECK(col[i] == (i == node ? to : orig[i]));
            CHECK(s.hop(*hopped, node, to, from) == b);
        } else {
            CHECK(!hopped.has_value());
        }
    }
}
