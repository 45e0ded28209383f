#include <catch2/catch.hpp>

#include "asymwit/asymwit.hpp"
#include "helpers.hpp"

using namespace asymwit;

TEST_CASE("born_probability on aligned, mixed and orthogonal states", "[bloch]") {
    const Observable mz = make_observable(0.0, {0, 0, 1});
    CHECK(born_probability({0, 0, 1}, mz, 0) == Approx(1.0));
    CHECK(born_probability({0, 0, 0}, mz, 0) == Approx(0.5));
    CHECK(born_probability({1, 0, 0}, mz, 0) == Approx(0.5));
    CHECK(born_probability({0, 0, 1}, mz, 1) == Approx(0.0).margin(1e-15));
}

TEST_CASE("born_probability outcomes sum to one", "[bloch]") {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const BlochVector n = rng.ball_vector();
        const Observable obs{rng.uniform(-1.0, 1.0), rng.unit_vector()};
        const double p0 = born_probability(n, obs, 0);
        const double p1 = born_probability(n, obs, 1);
        REQUIRE(p0 >= 0.0);
        REQUIRE(p0 <= 1.0);
        REQUIRE(std::fabs(p0 + p1 - 1.0) <= 1e-15);
    }
}

TEST_CASE("born_probability rejects non-finite input", "[bloch]") {
    const Observable mz = make_observable(0.0, {0, 0, 1});
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(born_probability({nan, 0, 0}, mz, 0), std::invalid_argument);
    CHECK_THROWS_AS(born_probability({0, 0, 1}, Observable{nan, {0, 0, 1}}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(born_probability({0, 0, 1}, mz, 2), std::invalid_argument);
}

TEST_CASE("expectation values", "[bloch]") {
    CHECK(expectation({0, 0, 1}, make_observable(0.0, {0, 0, -1})) == Approx(-1.0));
    CHECK(expectation({0.3, -0.1, 0.2}, make_observable(1.0, {0, 1, 0})) == Approx(1.0));
    CHECK(expectation({0.6, 0, 0.8}, make_observable(0.0, {0, 0, 1})) == Approx(0.8));
}

TEST_CASE("expectation is invariant under global rotations", "[bloch]") {
    Rng rng(21);
    for (int i = 0; i < 500; ++i) {
        const auto rot = testutil::random_rotation(rng);
        const BlochVector n = rng.ball_vector();
        const Observable obs{rng.uniform(-1.0, 1.0), rng.unit_vector()};
        const Observable rotated{obs.bias, testutil::apply(rot, obs.axis)};
        REQUIRE(expectation(testutil::apply(rot, n), rotated) ==
                Approx(expectation(n, obs)).margin(1e-12));
    }
}

TEST_CASE("trace distance basics", "[bloch]") {
    CHECK(trace_distance({0, 0, 1}, {0, 0, -1}) == Approx(1.0));
    CHECK(trace_distance({0.2, 0.3, -0.4}, {0.2, 0.3, -0.4}) == Approx(0.0));
    CHECK(trace_distance({1, 0, 0}, {0, 1, 0}) == Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("trace distance is symmetric and satisfies the triangle inequality",
          "[bloch]") {
    Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
        const BlochVector a = rng.ball_vector(), b = rng.ball_vector(),
                          c = rng.ball_vector();
        REQUIRE(trace_distance(a, b) == Approx(trace_distance(b, a)));
        REQUIRE(trace_distance(a, c) <=
                trace_distance(a, b) + trace_distance(b, c) + 1e-15);
    }
}

TEST_CASE("state and observable validation", "[bloch]") {
    const double over = 1.0 + 1e-13;
    const BlochVector clamped = make_state({0, 0, over});
    CHECK(norm(clamped) <= 1.0);
    CHECK_THROWS_AS(make_state({0, 0, 1.0 + 1e-6}), std::invalid_argument);
    CHECK_THROWS_AS(make_state({std::numeric_limits<double>::infinity(), 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_observable(1.5, {0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_observable(0.0, {0, 0, 0.5}), std::invalid_argument);
}

TEST_CASE("mirror predicate identifies symmetric configurations", "[bloch]") {
    // equilateral trine in the x-z plane
    const double s = std::sqrt(3.0) / 2.0;
    const ConfigTriple trine = make_config({0, 0, 1}, {s, 0, -0.5}, {-s, 0, -0.5});
    auto perm = is_mirror_symmetric(trine, 1e-9);
    REQUIRE(perm.has_value());
    CHECK(*perm == Permutation::p123);

    const ConfigTriple isosceles = make_config({1, 0, 0}, {0, 1, 0}, {0, -1, 0});
    auto perm2 = is_mirror_symmetric(isosceles, 1e-9);
    REQUIRE(perm2.has_value());
    CHECK(*perm2 == Permutation::p123);
}

TEST_CASE("mirror predicate flags the scalene reference target as asymmetric",
          "[bloch]") {
    const auto states = embed_target(target_from_angles_deg(58.4, 121.6, 180.0));
    const ConfigTriple cfg{states[0], states[1], states[2]};
    CHECK_FALSE(is_mirror_symmetric(cfg, 1e-9).has_value());
    CHECK_THROWS_AS(is_mirror_symmetric(cfg, -1.0), std::invalid_argument);
}

TEST_CASE("mirror predicate is stable under the relabeling it reports", "[bloch]") {
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        // random isosceles triple: apex plus two legs at equal apex distance
        const BlochVector apex = rng.unit_vector();
        const double h = rng.uniform(-1.0, 1.0);
        const double r = std::sqrt(std::fmax(0.0, 1.0 - h * h));
        const BlochVector u1 = unit_perp_component(rng.unit_vector(), apex);
        const BlochVector u2 = unit_perp_component(rng.unit_vector(), apex);
        const std::array<BlochVector, 3> n{apex, h * apex + r * u1, h * apex + r * u2};
        const auto perm = is_mirror_symmetric({n[0], n[1], n[2]}, 1e-9);
        REQUIRE(perm.has_value());
        // relabel so the reported apex comes first: still symmetric, apex 1
        const auto [i0, j0, k0] = apex_legs(*perm);
        const ConfigTriple relabeled{n[i0], n[j0], n[k0]};
        const auto again = is_mirror_symmetric(relabeled, 1e-9);
        REQUIRE(again.has_value());
        CHECK(*again == Permutation::p123);
    }
}
