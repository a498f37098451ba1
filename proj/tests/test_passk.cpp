#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "veriforge/passk.hpp"

#include "oracles.hpp"

using namespace veriforge;

TEST_CASE("pinned pass@k values") {
    CHECK(pass_at_k(10, 0, 1) == 0.0);
    CHECK(pass_at_k(10, 10, 5) == 1.0);
    CHECK(pass_at_k(10, 5, 1) == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(pass_at_k(10, 3, 5) == Catch::Approx(1.0 - 21.0 / 252.0).margin(1e-12));
    CHECK(pass_at_k(10, 5, 5) == Catch::Approx(1.0 - 1.0 / 252.0).margin(1e-12));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(pass_at_k(10, 11, 1), std::invalid_argument);  // c > n
    CHECK_THROWS_AS(pass_at_k(10, 5, 11), std::invalid_argument);  // k > n
    CHECK_THROWS_AS(pass_at_k(10, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(pass_at_k(10, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(pass_at_k(0, 0, 1), std::invalid_argument);
}

TEST_CASE("n - c < k forces certainty") {
    CHECK(pass_at_k(10, 8, 5) == 1.0);
    CHECK(pass_at_k(7, 7, 1) == 1.0);
    CHECK(pass_at_k(1000, 999, 2) == 1.0);
}

TEST_CASE("matches the exact rational oracle on random triples") {
    std::mt19937 rng(7771);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<long long> n_dist(1, 20);
        long long n = n_dist(rng);
        long long c = std::uniform_int_distribution<long long>(0, n)(rng);
        long long k = std::uniform_int_distribution<long long>(1, n)(rng);
        double expected = oracles::pass_at_k_rational(n, c, k);
        double actual = pass_at_k(n, c, k);
        REQUIRE(actual == Catch::Approx(expected).margin(1e-12));
    }
}

TEST_CASE("large n has no overflow via the multiplicative form") {
    // n = 1000: binomials far exceed any machine integer.
    double v = pass_at_k(1000, 100, 10);
    double expected = oracles::pass_at_k_rational(1000, 100, 10);
    CHECK(v == Catch::Approx(expected).margin(1e-12));
    CHECK(v > 0.0);
    CHECK(v < 1.0);
}

TEST_CASE("agrees with the Monte Carlo oracle") {
    struct Case { long long n, c, k; };
    for (Case t : {Case{10, 5, 1}, Case{10, 3, 5}, Case{20, 7, 4}, Case{12, 2, 6}}) {
        double exact = pass_at_k(t.n, t.c, t.k);
        double mc = oracles::pass_at_k_monte_carlo(t.n, t.c, t.k, 1000000, 99);
        CHECK(mc == Catch::Approx(exact).margin(1e-2));
    }
}

TEST_CASE("monotone in c and in k") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        long long n = std::uniform_int_distribution<long long>(2, 25)(rng);
        long long c = std::uniform_int_distribution<long long>(0, n - 1)(rng);
        long long k = std::uniform_int_distribution<long long>(1, n - 1)(rng);
        CHECK(pass_at_k(n, c + 1, k) >= pass_at_k(n, c, k));
        CHECK(pass_at_k(n, c, k + 1) >= pass_at_k(n, c, k));
    }
}
