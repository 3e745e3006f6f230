#include "kest/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "kest/binom.hpp"
#include "kest/errors.hpp"
#include "kest/estimators.hpp"
#include "kest/grid.hpp"
#include "kest/minimax.hpp"

namespace kest {

namespace {

void check_p(double p, const char* who) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError(std::string(who) + ": p must lie strictly inside (0,1), Var(D) vanishes otherwise");
}

struct SplitMoments {
    double mean_r = 0.0, var_r = 0.0, cov_rd = 0.0, var_d = 0.0;
};

// Joint enumeration over (X1, X2). D has mean zero.
SplitMoments split_moments(const EstimatorTable& base, int K2, double p) {
    const int K1 = base.K();
    const auto w1 = bernstein_row(K1, p);
    const auto w2 = bernstein_row(K2, p);
    CompensatedSum er, er2, erd, ed2;
    for (int x1 = 0; x1 <= K1; ++x1)
        for (int x2 = 0; x2 <= K2; ++x2) {
            const double w = w1[x1] * w2[x2];
            const double r = base[x1];
            const double d = static_cast<double>(x1) / K1 - static_cast<double>(x2) / K2;
            er.add(w * r);
            er2.add(w * r * r);
            erd.add(w * r * d);
            ed2.add(w * d * d);
        }
    SplitMoments m;
    m.mean_r = er.value();
    m.var_r = er2.value() - m.mean_r * m.mean_r;
    m.cov_rd = erd.value();  // E[D] = 0
    m.var_d = ed2.value();
    return m;
}

double resolve_c0(const C0Rule& rule, int K) { return rule ? rule(K) : minimax_c0(K); }

}  // namespace

double table_variance(const EstimatorTable& table, double p) {
    const double m = expected_value(table, p);
    return second_moment(table, p) - m * m;
}

double optimal_gamma(int K1, int K2, double p, const EstimatorTable& base) {
    if (base.K() != K1) throw ValidationError("optimal_gamma: base table size differs from K1");
    if (K2 < 1) throw ValidationError("optimal_gamma: K2 must be positive");
    check_p(p, "optimal_gamma");
    const auto m = split_moments(base, K2, p);
    return m.cov_rd / m.var_d;
}

SplitReport split_estimator_stats(const EstimatorTable& base, const EstimatorTable& full, double p,
                                  std::optional<double> gamma) {
    const int K1 = base.K();
    const int K = full.K();
    if (K1 < 1 || K1 >= K) throw ValidationError("split_estimator_stats: need 1 <= K1 < K");
    check_p(p, "split_estimator_stats");
    const int K2 = K - K1;
    const auto m = split_moments(base, K2, p);
    const double g = gamma ? *gamma : m.cov_rd / m.var_d;

    SplitReport r;
    r.K = K;
    r.K1 = K1;
    r.K2 = K2;
    r.p = p;
    r.gamma_star = g;
    // Var(R - gD) = Var R - 2g Cov(R,D) + g^2 Var D
    r.var_split = g == 0.0 ? m.var_r : m.var_r - 2.0 * g * m.cov_rd + g * g * m.var_d;
    r.var_full = table_variance(full, p);
    r.bias_split = gradient_weighted_bias(base, p);  // E[D] = 0
    r.bias_full = gradient_weighted_bias(full, p);
    return r;
}

EstimatorTable method_table(Method m, int K, double beta, const C0Rule& c0) {
    switch (m) {
        case Method::taylor_bt:
            return taylor_bt_table(K, beta, resolve_c0(c0, K));
        case Method::plugin_log:
            return plugin_log_table(K, beta, 0.5, 2);
        case Method::euclid:
            return euclid_table(K, beta);
        case Method::quadratic:
            return quadratic_table(K, beta);
        case Method::minimax: {
            MinimaxOptions opt;
            opt.certify = false;
            const auto r = solve_minimax(K, kDefaultSolveGrid, opt);
            std::vector<double> c(r.table.coeffs().begin(), r.table.coeffs().end());
            for (double& x : c) x *= beta;
            return EstimatorTable(K, beta, Method::minimax, std::move(c), r.table.meta());
        }
        default:
            throw ValidationError("method_table: no parameter-free construction for " + to_string(m));
    }
}

SplitReport split_estimator_stats(int K, int K1, double p, Method base_method, std::optional<double> gamma,
                                  double beta, const C0Rule& c0) {
    if (K1 < 1 || K1 >= K) throw ValidationError("split_estimator_stats: need 1 <= K1 < K");
    check_p(p, "split_estimator_stats");
    return split_estimator_stats(method_table(base_method, K1, beta, c0), method_table(base_method, K, beta, c0), p,
                                 gamma);
}

EstimatorTable rao_blackwell_table(const EstimatorTable& base, int K2, double gamma) {
    const int K1 = base.K();
    if (K2 < 1) throw ValidationError("rao_blackwell_table: K2 must be positive");
    const int K = K1 + K2;
    auto lchoose = [](int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); };
    std::vector<double> c(K + 1);
    for (int x = 0; x <= K; ++x) {
        CompensatedSum s, wsum;
        const int lo = std::max(0, x - K2), hi = std::min(K1, x);
        for (int x1 = lo; x1 <= hi; ++x1) {
            const double w = std::exp(lchoose(K1, x1) + lchoose(K2, x - x1) - lchoose(K, x));
            const double d = static_cast<double>(x1) / K1 - static_cast<double>(x - x1) / K2;
            s.add(w * (base[x1] - gamma * d));
            wsum.add(w);
        }
        c[x] = s.value() / wsum.value();  // weights sum to 1 up to rounding
    }
    Json meta = {{"rao_blackwell", {{"K1", K1}, {"K2", K2}, {"gamma", gamma}, {"base", to_string(base.method())}}}};
    return EstimatorTable(K, base.beta(), Method::custom, std::move(c), std::move(meta));
}

std::string split_csv(const std::vector<SplitReport>& rows) {
    std::ostringstream os;
    os << "K,K1,K2,p,gamma_star,var_split,var_full,bias_split,bias_full\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.K, r.K1, r.K2, r.p,
                      r.gamma_star, r.var_split, r.var_full, r.bias_split, r.bias_full);
        os << buf;
    }
    return os.str();
}

std::vector<TaylorFailureRow> taylor_uniform_failure(const std::vector<int>& Ks, const C0Rule& c0, int grid_M) {
    for (std::size_t i = 1; i < Ks.size(); ++i)
        if (Ks[i] < Ks[i - 1]) throw ValidationError("taylor_uniform_failure: Ks must be sorted");
    std::vector<TaylorFailureRow> rows;
    for (int K : Ks) {
        TaylorFailureRow r;
        r.K = K;
        r.c0 = resolve_c0(c0, K);
        const auto t = taylor_bt_table(K, 1.0, r.c0);
        const auto prof = bias_profile(t, build_grid(K, grid_M));
        r.sup_bias = prof.sup_bias;
        r.argmax_p = prof.grid[prof.argmax_bias];
        r.bias_half_K2 = std::fabs(gradient_weighted_bias(t, 0.5)) * K * K;
        r.sup_bias_K = r.sup_bias * K;
        rows.push_back(r);
    }
    return rows;
}

std::string taylor_failure_csv(const std::vector<TaylorFailureRow>& rows) {
    std::ostringstream os;
    os << "K,c0,sup_bias,argmax_p,bias_half_K2,sup_bias_K\n";
    char buf[224];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.K, r.c0, r.sup_bias, r.argmax_p,
                      r.bias_half_K2, r.sup_bias_K);
        os << buf;
    }
    return os.str();
}

C0Rule c0_rule_from_string(const std::string& name) {
    if (name == "minimax") return [](int K) { return minimax_c0(K); };
    if (name == "fallback") return [](int K) { return taylor_c0_fallback(K); };
    throw ValidationError("unknown c0 rule '" + name + "' (expected minimax|fallback)");
}

}  // namespace kest
