#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "kest/table.hpp"

namespace kest {

enum class GameSign : int { coherence = -1, diversity = +1 };

// Reward -s*beta*sum_m c_m q^m (+ shift). phi'(x) = sum_m c_m x^m generates the geometry.
struct PolynomialReward {
    PolynomialReward(std::vector<double> coeffs, GameSign sign, double beta,
                     std::optional<double> shift = std::nullopt);

    int degree() const { return static_cast<int>(coeffs.size()); }
    // Default shift: beta*sum c_m for diversity (reward vanishes at q = 1), 0 for coherence.
    double shift_value() const;
    // -s*beta*sum_m c_m q^m + shift
    double reward(double q) const;
    // sum_m c_m q^m, i.e. grad Phi at q
    double link(double q) const;

    std::vector<double> coeffs;  // c_1..c_d
    GameSign sign;
    double beta;
    std::optional<double> shift;
};

// X(X-1)...(X-m+1) / K(K-1)...(K-m+1)
double falling_factorial_estimate(int X, int K, int m);

EstimatorTable u_statistic_table(const PolynomialReward& reward, int K);
// beta(1 - X/K)
EstimatorTable euclid_table(int K, double beta);
// beta X(X-1)/(K(K-1))
EstimatorTable quadratic_table(int K, double beta);

// beta*log((X+alpha)/(K+alpha*Z)); alpha = 0 requires clamp (c_0 := c_1).
EstimatorTable plugin_log_table(int K, double beta, double alpha, int Z_size, bool clamp_zero = false);

// beta*(log(X/K) + (K-X)/(2KX)) for X >= 1, beta*c0 at X = 0.
EstimatorTable taylor_bt_table(int K, double beta, double c0);
double taylor_c0_fallback(int K);

// Table files (JSON, 17 significant digits).
std::string table_to_json(const EstimatorTable& table);
EstimatorTable table_from_json(const std::string& text, const std::string& origin = "<string>");
void save_table(const EstimatorTable& table, const std::filesystem::path& path);
EstimatorTable load_table(const std::filesystem::path& path);

}  // namespace kest
