#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "kest/grid.hpp"
#include "kest/table.hpp"

namespace kest {

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// p log p with the continuous extension 0 at p = 0.
double p_log_p(double p);

// B_{k,K}(p) = C(K,k) p^k (1-p)^(K-k), evaluated in log space.
double bernstein_basis(int K, int k, double p);

// All K+1 basis values at p.
std::vector<double> bernstein_row(int K, double p);

// E[c_X] for X ~ Binomial(K, p).
double expected_value(const EstimatorTable& table, double p);
double expected_value(std::span<const double> coeffs, double p);

// S(c,p) = E[c_X^2].
double second_moment(const EstimatorTable& table, double p);

// p E[c_X] - beta p log p; the target term is 0 at p = 0.
double gradient_weighted_bias(const EstimatorTable& table, double p);

struct BiasProfile {
    Grid grid;
    std::vector<double> weighted_bias;
    std::vector<double> second_moment;
    double sup_bias = 0.0;
    double sup_second_moment = 0.0;
    std::size_t argmax_bias = 0;
    std::size_t argmax_second_moment = 0;
};

// Batch version of the two functions above over a grid (de Casteljau kernels).
BiasProfile bias_profile(const EstimatorTable& table, const Grid& grid);

// Batch helpers used by the solvers.
std::vector<double> expected_values(std::span<const double> coeffs, std::span<const double> ps);
std::vector<double> second_moments(std::span<const double> coeffs, std::span<const double> ps);

}  // namespace kest
