#include "doctest.h"
#include "oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "kest/binom.hpp"
#include "kest/errors.hpp"
#include "kest/estimators.hpp"
#include "kest/grid.hpp"

using namespace kest;

namespace {

EstimatorTable custom(std::vector<double> c) {
    const int K = static_cast<int>(c.size()) - 1;
    return EstimatorTable(K, 1.0, Method::custom, std::move(c));
}

}  // namespace

TEST_SUITE("binom") {

TEST_CASE("bernstein basis values") {
    CHECK(bernstein_basis(4, 0, 0.0) == 1.0);
    CHECK(bernstein_basis(4, 2, 0.5) == doctest::Approx(0.375).epsilon(1e-15));
    const double want = static_cast<double>(pow(oracle::Float50("0.9"), 16));
    CHECK(bernstein_basis(16, 16, 0.9) == doctest::Approx(want).epsilon(1e-14));
    CHECK(want == doctest::Approx(0.1853020189).epsilon(1e-9));
    CHECK(bernstein_basis(4, 4, 0.0) == 0.0);
    CHECK(bernstein_basis(4, 0, 1.0) == 0.0);
}

TEST_CASE("bernstein basis rejects out-of-range arguments") {
    CHECK_THROWS_AS(bernstein_basis(4, 5, 0.5), DomainError);
    CHECK_THROWS_AS(bernstein_basis(4, -1, 0.5), DomainError);
    CHECK_THROWS_AS(bernstein_basis(4, 1, 1.5), DomainError);
    CHECK_THROWS_AS(bernstein_basis(4, 1, -0.1), DomainError);
    CHECK_THROWS_AS(bernstein_basis(4, 1, std::nan("")), DomainError);
}

TEST_CASE("partition of unity up to K = 256") {
    const auto g = build_grid(256, 257, GridScheme::uniform);
    for (int K = 1; K <= 256; ++K)
        for (double p : g.points()) {
            CompensatedSum s;
            for (int k = 0; k <= K; ++k) s.add(bernstein_basis(K, k, p));
            REQUIRE(std::fabs(s.value() - 1.0) <= 1e-12);
        }
}

TEST_CASE("expected value examples") {
    for (double p : {0.0, 0.13, 0.5, 0.77, 1.0}) {
        std::vector<double> freq(9);
        for (int k = 0; k <= 8; ++k) freq[k] = k / 8.0;
        CHECK(expected_value(custom(freq), p) == doctest::Approx(p).epsilon(1e-14));
        std::vector<double> top(9, 0.0);
        top[8] = 1.0;
        CHECK(expected_value(custom(top), p) == doctest::Approx(std::pow(p, 8)).epsilon(1e-13));
    }
    CHECK(expected_value(custom(std::vector<double>(11, 7.0)), 0.3) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("second moment examples") {
    CHECK(second_moment(custom(std::vector<double>(6, -2.5)), 0.42) == doctest::Approx(6.25).epsilon(1e-15));
    const auto t = custom({0.0, 0.0, 1.0});
    CHECK(second_moment(t, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    const double m = expected_value(t, 0.5);
    CHECK(second_moment(t, 0.5) - m * m == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(second_moment(custom({0.0, 0.25, 0.5, 0.75, 1.0}), 0.5) == doctest::Approx(0.3125).epsilon(1e-15));
}

TEST_CASE("gradient-weighted bias examples") {
    const auto zero = custom(std::vector<double>(5, 0.0));
    CHECK(gradient_weighted_bias(zero, 1.0) == 0.0);
    CHECK(gradient_weighted_bias(zero, 0.0) == 0.0);
    CHECK(gradient_weighted_bias(zero, std::exp(-1.0)) == doctest::Approx(0.3678794412).epsilon(1e-10));
    // beta scales only the target
    const EstimatorTable z2(4, 2.0, Method::custom, std::vector<double>(5, 0.0));
    CHECK(gradient_weighted_bias(z2, 0.5) == doctest::Approx(-2.0 * 0.5 * std::log(0.5)).epsilon(1e-14));
}

TEST_CASE("bias profile examples") {
    const auto zero = custom(std::vector<double>(17, 0.0));
    const auto prof = bias_profile(zero, build_grid(16, 11, GridScheme::uniform));
    CHECK(prof.sup_bias == doctest::Approx(0.4 * std::log(2.5)).epsilon(1e-14));
    CHECK(prof.sup_bias == doctest::Approx(0.3665).epsilon(1e-4));
    CHECK(prof.grid[prof.argmax_bias] == doctest::Approx(0.4));
    CHECK(prof.sup_second_moment == 0.0);

    const Grid ends({0.0, 1.0}, GridScheme::uniform);
    const auto t = custom({0.3, -0.2, 1.7, -2.25});
    CHECK(bias_profile(t, ends).sup_bias == doctest::Approx(2.25).epsilon(1e-15));

    const auto e = euclid_table(4, 1.0);
    const auto pe = bias_profile(e, build_grid(4, 101, GridScheme::uniform));
    CHECK(pe.sup_second_moment <= 1.0);
    CHECK(pe.sup_bias > 0.0);
}

TEST_CASE("bias profile agrees with the pointwise functions") {
    std::mt19937_64 rng(11);
    const auto c = oracle::random_vector(rng, 33, -3.0, 1.0);
    const auto t = custom(c);
    const auto g = build_grid(32, 300);
    const auto prof = bias_profile(t, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(prof.weighted_bias[i] == doctest::Approx(gradient_weighted_bias(t, g[i])).epsilon(1e-12).scale(1.0));
        CHECK(prof.second_moment[i] == doctest::Approx(second_moment(t, g[i])).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("linearity of the expectation") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const int K = 1 + static_cast<int>(rng() % 64);
        const auto c1 = oracle::random_vector(rng, K + 1, -2.0, 2.0);
        const auto c2 = oracle::random_vector(rng, K + 1, -2.0, 2.0);
        const double a = 1.7, b = -0.6;
        std::vector<double> mix(K + 1);
        for (int k = 0; k <= K; ++k) mix[k] = a * c1[k] + b * c2[k];
        for (double p : {0.0, 0.01, 0.37, 0.9, 1.0}) {
            const double lhs = expected_value(mix, p);
            const double rhs = a * expected_value(c1, p) + b * expected_value(c2, p);
            CHECK(std::fabs(lhs - rhs) <= 1e-12);
        }
    }
}

TEST_CASE("variance is non-negative") {
    std::mt19937_64 rng(9);
    const auto g = build_grid(64, 512);
    for (int rep = 0; rep < 10; ++rep) {
        const auto c = oracle::random_vector(rng, 65, -5.0, 5.0);
        const auto m1 = expected_values(c, g.points());
        const auto m2 = second_moments(c, g.points());
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(m2[i] - m1[i] * m1[i] >= -1e-12);
    }
}

TEST_CASE("expected value matches exact rational summation for K <= 12") {
    std::mt19937_64 rng(3);
    for (int K = 1; K <= 12; ++K) {
        const auto c = oracle::random_vector(rng, K + 1, -4.0, 4.0);
        const auto rc = oracle::to_rational(c);
        for (auto [num, den] : {std::pair{0, 1}, {1, 4}, {1, 2}, {3, 4}, {1, 1}}) {
            const oracle::Rational p(num, den);
            const double exact = static_cast<double>(oracle::bernstein_sum(rc, p));
            const double got = expected_value(c, static_cast<double>(num) / den);
            CHECK(std::fabs(got - exact) <= 1e-14 * std::max(1.0, std::fabs(exact)));
        }
    }
}

TEST_CASE("high-precision oracle on the boundary layer at large K") {
    std::mt19937_64 rng(21);
    for (int K : {64, 128, 256}) {
        std::vector<double> c(K + 1);
        for (int k = 0; k <= K; ++k) c[k] = k == 0 ? -7.0 : std::log(static_cast<double>(k) / K);
        for (double p : {1e-6, 0.5 / K, 1.0 / K, 3.0 / K, 0.5, 1.0 - 1.0 / K}) {
            CHECK(expected_value(c, p) == doctest::Approx(oracle::expected_value_50(c, p)).epsilon(1e-12));
            CHECK(second_moment(custom(c), p) == doctest::Approx(oracle::second_moment_50(c, p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Jensen gap of the conditioned plug-in log is second order") {
    // |E[log(X/K) | X >= 1] - log p + (1-p)/(2Kp)| at p = 1/2
    const double p = 0.5;
    auto err = [&](int K) {
        CompensatedSum num, den;
        for (int k = 1; k <= K; ++k) {
            const double w = bernstein_basis(K, k, p);
            num.add(w * std::log(static_cast<double>(k) / K));
            den.add(w);
        }
        return std::fabs(num.value() / den.value() - std::log(p) + (1 - p) / (2.0 * K * p));
    };
    const double e64 = err(64), e128 = err(128), e256 = err(256);
    CHECK(e128 / e64 >= 0.15);
    CHECK(e128 / e64 <= 0.35);
    CHECK(e256 / e128 >= 0.15);
    CHECK(e256 / e128 <= 0.35);
}

TEST_CASE("compensated sum recovers cancelled mass") {
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1.0);
}

}  // TEST_SUITE
