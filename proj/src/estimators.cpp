#include "kest/estimators.hpp"

#include <cmath>
#include <string>

#include "kest/errors.hpp"

namespace kest {

PolynomialReward::PolynomialReward(std::vector<double> c, GameSign s, double b, std::optional<double> sh)
    : coeffs(std::move(c)), sign(s), beta(b), shift(sh) {
    if (coeffs.empty()) throw ValidationError("polynomial reward needs degree >= 1");
    if (!(beta > 0.0)) throw ValidationError("polynomial reward beta must be positive");
    for (double cm : coeffs)
        if (!std::isfinite(cm)) throw ValidationError("polynomial reward coefficients must be finite");
    // phi'' = sum m c_m x^(m-1) > 0 on (0,1]
    for (int i = 1; i <= 1024; ++i) {
        const double x = i / 1024.0;
        double d2 = 0.0, xp = 1.0;
        for (int m = 1; m <= degree(); ++m) {
            d2 += m * coeffs[static_cast<std::size_t>(m - 1)] * xp;
            xp *= x;
        }
        if (!(d2 > 0.0))
            throw ValidationError("polynomial reward is not strictly convex: phi''(" + std::to_string(x) +
                                  ") = " + std::to_string(d2));
    }
}

double PolynomialReward::shift_value() const {
    if (shift) return *shift;
    if (sign == GameSign::coherence) return 0.0;
    double s = 0.0;
    for (double cm : coeffs) s += cm;
    return beta * s;
}

double PolynomialReward::link(double q) const {
    double acc = 0.0, qp = q;
    for (double cm : coeffs) {
        acc += cm * qp;
        qp *= q;
    }
    return acc;
}

double PolynomialReward::reward(double q) const {
    return -static_cast<int>(sign) * beta * link(q) + shift_value();
}

double falling_factorial_estimate(int X, int K, int m) {
    if (K < 1) throw DomainError("falling_factorial_estimate: K must be positive");
    if (X < 0 || X > K) throw DomainError("falling_factorial_estimate: X outside [0,K]");
    if (m < 1) throw DomainError("falling_factorial_estimate: order m must be >= 1");
    if (m > K) throw DomainError("falling_factorial_estimate: no unbiased estimator of p^m for m > K");
    if (X < m) return 0.0;
    double v = 1.0;
    for (int i = 0; i < m; ++i) v *= static_cast<double>(X - i) / static_cast<double>(K - i);
    return v;
}

EstimatorTable u_statistic_table(const PolynomialReward& reward, int K) {
    if (K < 1) throw DomainError("u_statistic_table: K must be positive");
    if (reward.degree() > K)
        throw DomainError("u_statistic_table: degree " + std::to_string(reward.degree()) + " exceeds K=" +
                          std::to_string(K));
    const double s = static_cast<int>(reward.sign);
    const double shift = reward.shift_value();
    std::vector<double> c(static_cast<std::size_t>(K) + 1);
    for (int X = 0; X <= K; ++X) {
        double acc = 0.0;
        for (int m = 1; m <= reward.degree(); ++m)
            acc += reward.coeffs[static_cast<std::size_t>(m - 1)] * falling_factorial_estimate(X, K, m);
        c[static_cast<std::size_t>(X)] = -s * reward.beta * acc + shift;
    }
    Json meta = {{"degree", reward.degree()},
                 {"poly_coeffs", reward.coeffs},
                 {"sign", static_cast<int>(reward.sign)},
                 {"shift", shift}};
    return EstimatorTable(K, reward.beta, Method::u_statistic, std::move(c), std::move(meta));
}

EstimatorTable euclid_table(int K, double beta) {
    auto t = u_statistic_table(PolynomialReward({1.0}, GameSign::diversity, beta), K);
    return EstimatorTable(K, beta, Method::euclid, {t.coeffs().begin(), t.coeffs().end()}, t.meta());
}

EstimatorTable quadratic_table(int K, double beta) {
    if (K < 2) throw DomainError("quadratic_table: needs K >= 2");
    auto t = u_statistic_table(PolynomialReward({0.0, 1.0}, GameSign::coherence, beta), K);
    return EstimatorTable(K, beta, Method::quadratic, {t.coeffs().begin(), t.coeffs().end()}, t.meta());
}

EstimatorTable plugin_log_table(int K, double beta, double alpha, int Z_size, bool clamp_zero) {
    if (K < 1) throw DomainError("plugin_log_table: K must be positive");
    if (Z_size < 2) throw DomainError("plugin_log_table: answer space needs at least 2 elements");
    if (!(alpha >= 0.0)) throw DomainError("plugin_log_table: alpha must be >= 0");
    if (alpha == 0.0 && !clamp_zero)
        throw DomainError("plugin_log_table: alpha = 0 leaves c_0 = log 0 undefined; request clamping");
    std::vector<double> c(static_cast<std::size_t>(K) + 1);
    const double denom = K + alpha * Z_size;
    for (int X = 0; X <= K; ++X) {
        if (X == 0 && alpha == 0.0) continue;
        c[static_cast<std::size_t>(X)] = beta * std::log((X + alpha) / denom);
    }
    Json meta = {{"alpha", alpha}, {"Z_size", Z_size}};
    if (alpha == 0.0) {
        c[0] = c[1];
        meta["clamped"] = true;
    }
    return EstimatorTable(K, beta, Method::plugin_log, std::move(c), std::move(meta));
}

double taylor_c0_fallback(int K) { return -std::log(static_cast<double>(K)) - 0.5; }

EstimatorTable taylor_bt_table(int K, double beta, double c0) {
    if (K < 1) throw DomainError("taylor_bt_table: K must be positive");
    if (!std::isfinite(c0)) throw DomainError("taylor_bt_table: c0 must be finite");
    std::vector<double> c(static_cast<std::size_t>(K) + 1);
    c[0] = beta * c0;
    for (int X = 1; X <= K; ++X)
        c[static_cast<std::size_t>(X)] =
            beta * (std::log(static_cast<double>(X) / K) + static_cast<double>(K - X) / (2.0 * K * X));
    return EstimatorTable(K, beta, Method::taylor_bt, std::move(c), Json{{"c0", c0}});
}

}  // namespace kest
