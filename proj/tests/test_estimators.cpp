#include "doctest.h"
#include "oracle.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "kest/binom.hpp"
#include "kest/errors.hpp"
#include "kest/estimators.hpp"
#include "kest/grid.hpp"

using namespace kest;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "kest_unit";
    std::filesystem::create_directories(dir);
    return dir / name;
}

// Coefficients c_1..c_d whose phi'' = sum m c_m x^(m-1) stays positive on (0,1].
std::vector<double> convex_coeffs(std::mt19937_64& rng, int d) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> c(d);
    for (double& x : c) x = u(rng);
    return c;
}

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("falling factorial estimate") {
    CHECK(falling_factorial_estimate(3, 4, 2) == 0.5);
    CHECK(falling_factorial_estimate(1, 4, 2) == 0.0);
    CHECK(falling_factorial_estimate(4, 4, 4) == 1.0);
    CHECK(falling_factorial_estimate(7, 10, 1) == doctest::Approx(0.7));
    CHECK_THROWS_AS(falling_factorial_estimate(2, 4, 5), DomainError);
    CHECK_THROWS_AS(falling_factorial_estimate(5, 4, 1), DomainError);
}

TEST_CASE("u-statistic tables of the two worked games") {
    const PolynomialReward euclid({1.0}, GameSign::diversity, 1.0);
    const auto t = u_statistic_table(euclid, 4);
    const std::vector<double> want = {1.0, 0.75, 0.5, 0.25, 0.0};
    for (int k = 0; k <= 4; ++k) CHECK(t[k] == doctest::Approx(want[k]).epsilon(1e-15));
    CHECK(t.method() == Method::u_statistic);

    const PolynomialReward quad({0.0, 1.0}, GameSign::coherence, 1.0);
    const auto q = u_statistic_table(quad, 2);
    // coherence sign: -s*beta*q^2 with s = -1
    CHECK(q[0] == 0.0);
    CHECK(q[1] == 0.0);
    CHECK(q[2] == doctest::Approx(1.0));

    CHECK_THROWS_AS(u_statistic_table(PolynomialReward({1.0, 1.0, 1.0}, GameSign::coherence, 1.0), 2), DomainError);
    CHECK_THROWS_AS(PolynomialReward({-1.0}, GameSign::coherence, 1.0), ValidationError);
}

TEST_CASE("u-statistic unbiasedness in floating point, K <= 32, d <= 4") {
    std::mt19937_64 rng(17);
    const auto g = build_grid(1, 101, GridScheme::uniform);
    for (int K : {1, 2, 3, 4, 8, 16, 32})
        for (int d = 1; d <= std::min(K, 4); ++d)
            for (GameSign s : {GameSign::coherence, GameSign::diversity}) {
                const PolynomialReward r(convex_coeffs(rng, d), s, 1.3);
                const auto t = u_statistic_table(r, K);
                for (double p : g.points()) REQUIRE(std::fabs(expected_value(t, p) - r.reward(p)) <= 1e-12);
            }
}

TEST_CASE("u-statistic unbiasedness in exact arithmetic, K <= 12") {
    using oracle::Rational;
    for (int K = 1; K <= 12; ++K)
        for (int d = 1; d <= std::min(K, 4); ++d) {
            // integer-valued reward coefficients keep everything rational
            std::vector<Rational> cm(d);
            for (int m = 0; m < d; ++m) cm[m] = Rational(m + 1, 3);
            std::vector<Rational> table(K + 1);
            for (int X = 0; X <= K; ++X)
                for (int m = 1; m <= d; ++m) table[X] += cm[m - 1] * oracle::falling(X, K, m);
            for (auto [a, b] : {std::pair{0, 1}, {1, 4}, {1, 2}, {3, 4}, {1, 1}}) {
                const Rational p(a, b);
                Rational poly = 0;
                for (int m = 1; m <= d; ++m) poly += cm[m - 1] * oracle::rpow(p, m);
                REQUIRE(oracle::bernstein_sum(table, p) == poly);
            }
            // the library's doubles are the rounded exact coefficients
            std::vector<double> dc(d);
            for (int m = 0; m < d; ++m) dc[m] = static_cast<double>(cm[m]);
            const PolynomialReward r(dc, GameSign::coherence, 1.0);
            const auto t = u_statistic_table(r, K);
            for (int X = 0; X <= K; ++X)
                CHECK(t[X] == doctest::Approx(static_cast<double>(table[X])).epsilon(1e-14).scale(1.0));
        }
}

TEST_CASE("plug-in log table") {
    const auto t = plugin_log_table(16, 1.0, 1.0, 2);
    CHECK(t[0] == doctest::Approx(std::log(1.0 / 18.0)).epsilon(1e-15));
    CHECK(t[0] == doctest::Approx(-2.8903717579).epsilon(1e-10));
    CHECK(t[16] == doctest::Approx(-0.0571584138).epsilon(1e-9));
    // direct summation gives -0.719946..., a little above the rounded -0.7245 quoted for this case
    CHECK(expected_value(t, 0.5) == doctest::Approx(oracle::expected_value_50(t.coeffs(), 0.5)).epsilon(1e-14));
    CHECK(expected_value(t, 0.5) == doctest::Approx(-0.7199463016).epsilon(1e-10));
    CHECK(expected_value(t, 0.5) < std::log(0.5));
    CHECK_THROWS_AS(plugin_log_table(16, 1.0, 0.0, 2), DomainError);
    const auto c = plugin_log_table(16, 1.0, 0.0, 2, true);
    CHECK(c[0] == c[1]);
    CHECK(c.meta().contains("clamped"));
    const auto b = plugin_log_table(8, 2.5, 0.5, 3);
    CHECK(b[3] == doctest::Approx(2.5 * std::log(3.5 / 9.5)));
}

TEST_CASE("boundary-corrected Taylor table") {
    const auto t = taylor_bt_table(16, 1.0, -6.0);
    CHECK(t[8] == doctest::Approx(-0.6618972).epsilon(1e-7));
    CHECK(t[16] == 0.0);
    CHECK(t[0] == -6.0);
    const auto t2 = taylor_bt_table(4, 2.0, -1.0);
    CHECK(t2[1] == doctest::Approx(-2.0225888).epsilon(1e-7));
    CHECK(t2[0] == -2.0);
    CHECK(taylor_c0_fallback(16) == doctest::Approx(-std::log(16.0) - 0.5));
}

TEST_CASE("closed forms are nondecreasing for X >= 1") {
    for (int K : {4, 16, 64}) {
        for (const auto& t : {plugin_log_table(K, 1.0, 0.5, 2), taylor_bt_table(K, 1.0, -3.0)})
            for (int k = 2; k <= K; ++k) CHECK(t[k] >= t[k - 1]);
    }
}

TEST_CASE("Taylor correction cancels pointwise at rate 1/K^2") {
    for (double p : {0.25, 0.5, 0.75}) {
        std::vector<double> err;
        for (int K : {16, 32, 64, 128})
            err.push_back(std::fabs(expected_value(taylor_bt_table(K, 1.0, taylor_c0_fallback(K)), p) - std::log(p)));
        // the (1-p)^K c0 term dominates at small K and p = 1/4, so compare only once it is negligible
        const std::size_t from = p == 0.25 ? 1 : 0;
        for (std::size_t i = from + 1; i < err.size(); ++i) {
            CHECK(err[i] / err[i - 1] >= 0.15);
            CHECK(err[i] / err[i - 1] <= 0.6);
        }
    }
}

TEST_CASE("Laplace smoothing keeps the sup weighted bias at order 1/K") {
    std::vector<double> sup;
    for (int K : {16, 32, 64, 128}) sup.push_back(bias_profile(plugin_log_table(K, 1.0, 1.0, 2), build_grid(K, 4096)).sup_bias);
    for (std::size_t i = 1; i < sup.size(); ++i) {
        CHECK(sup[i] / sup[i - 1] >= 0.35);
        CHECK(sup[i] / sup[i - 1] <= 0.65);
    }
}

TEST_CASE("table files round-trip") {
    const auto t = euclid_table(4, 1.0);
    const auto path = scratch("euclid4.json");
    save_table(t, path);
    const auto back = load_table(path);
    CHECK(back.K() == 4);
    CHECK(back.method() == Method::euclid);
    for (int k = 0; k <= 4; ++k) CHECK(back[k] == t[k]);

    // 17 significant digits survive
    const auto odd = plugin_log_table(7, 0.3, 0.37, 5);
    const auto again = table_from_json(table_to_json(odd));
    for (int k = 0; k <= 7; ++k) CHECK(again[k] == odd[k]);
}

TEST_CASE("malformed table files are rejected") {
    const std::string bad_len =
        R"({"schema":"estimator-table/v1","K":4,"beta":1,"method":"euclid","meta":{},"coeffs":[1,0.5,0]})";
    CHECK_THROWS_AS(table_from_json(bad_len), ValidationError);
    CHECK_THROWS_AS(table_from_json("{ not json"), ParseError);
    CHECK_THROWS_AS(table_from_json(R"({"schema":"estimator-table/v1","K":1})"), ParseError);
    CHECK_THROWS_AS(table_from_json(R"({"schema":"other","K":1,"beta":1,"method":"euclid","coeffs":[0,1]})"),
                    ParseError);
    CHECK_THROWS_AS(table_from_json(R"({"schema":"estimator-table/v1","K":1,"beta":1,"method":"nope","coeffs":[0,1]})"),
                    ValidationError);
    CHECK_THROWS(load_table(scratch("does_not_exist.json")));
}

TEST_CASE("euclid and quadratic tables") {
    const auto e = euclid_table(8, 2.0);
    for (int k = 0; k <= 8; ++k) CHECK(e[k] == doctest::Approx(2.0 * (1.0 - k / 8.0)));
    const auto q = quadratic_table(5, 1.0);
    CHECK(q[5] == doctest::Approx(1.0));
    CHECK(q[1] == 0.0);
    CHECK(expected_value(q, 0.3) == doctest::Approx(0.09).epsilon(1e-14));
}

}  // TEST_SUITE
