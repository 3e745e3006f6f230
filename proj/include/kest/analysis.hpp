#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kest/table.hpp"

namespace kest {

// Split estimator R(X1) - gamma (X1/K1 - X2/K2) with X1 ~ Bin(K1,p), X2 ~ Bin(K2,p) independent.
struct SplitReport {
    int K = 0;
    int K1 = 0;
    int K2 = 0;
    double p = 0.0;
    double gamma_star = 0.0;  // the gamma actually used
    double var_split = 0.0;
    double var_full = 0.0;
    double bias_split = 0.0;  // gradient-weighted, signed
    double bias_full = 0.0;
};

// Cov(R(X1), D) / Var(D), D = X1/K1 - X2/K2, by exact enumeration.
double optimal_gamma(int K1, int K2, double p, const EstimatorTable& base);

// Exact moments of the split estimator built on base (size K1) against the full-size table.
SplitReport split_estimator_stats(const EstimatorTable& base, const EstimatorTable& full, double p,
                                  std::optional<double> gamma = std::nullopt);

using C0Rule = std::function<double(int K)>;

// Table of a named method at size K. taylor_bt takes c0 from the rule (minimax c_0* by default);
// plugin_log uses alpha = 0.5, |Z| = 2.
EstimatorTable method_table(Method m, int K, double beta = 1.0, const C0Rule& c0 = {});

SplitReport split_estimator_stats(int K, int K1, double p, Method base_method = Method::taylor_bt,
                                  std::optional<double> gamma = std::nullopt, double beta = 1.0,
                                  const C0Rule& c0 = {});

// E[split estimator | X1 + X2 = x] as a K-table (hypergeometric conditioning).
EstimatorTable rao_blackwell_table(const EstimatorTable& base, int K2, double gamma);

// Variance of c_X for X ~ Bin(K,p).
double table_variance(const EstimatorTable& table, double p);

std::string split_csv(const std::vector<SplitReport>& rows);

struct TaylorFailureRow {
    int K = 0;
    double c0 = 0.0;
    double sup_bias = 0.0;      // boundary-refined grid
    double argmax_p = 0.0;
    double bias_half_K2 = 0.0;  // |bias(0.5)| * K^2
    double sup_bias_K = 0.0;    // sup_bias * K
};

std::vector<TaylorFailureRow> taylor_uniform_failure(const std::vector<int>& Ks, const C0Rule& c0 = {},
                                                     int grid_M = 4096);
std::string taylor_failure_csv(const std::vector<TaylorFailureRow>& rows);

// "minimax" (default) or "fallback" (-log K - 1/2).
C0Rule c0_rule_from_string(const std::string& name);

}  // namespace kest
