#pragma once

#include <cstddef>
#include <vector>

#include "kest/grid.hpp"

namespace kest {

enum class LpBasis { bernstein, chebyshev };

// min eps  s.t.  |r_m . x - f_m| <= eps  for every grid point p_m > 0,
// with r_m = p_m * phi(p_m) for the chosen polynomial basis phi and f_m = p_m log p_m.
struct LpInstance {
    int K = 0;
    LpBasis basis = LpBasis::chebyshev;
    std::vector<double> points;  // p_m, zero dropped
    std::vector<double> target;  // f_m
    std::vector<double> A;       // column-major rows() x (K+1)

    std::size_t rows() const { return points.size(); }
    std::size_t cols() const { return static_cast<std::size_t>(K) + 1; }
    int n_vars() const { return K + 2; }
    double at(std::size_t row, std::size_t col) const { return A[col * rows() + row]; }
};

LpInstance build_lp(int K, const Grid& grid, LpBasis basis = LpBasis::chebyshev);

struct LpOptions {
    double tol = 1e-9;  // relative optimality tolerance on reduced costs
    int max_iter = 0;   // 0: automatic cap
};

struct LpResult {
    std::vector<double> x;  // polynomial coefficients in the instance basis
    double epsilon = 0.0;   // max_m |r_m . x - f_m|
    double level = 0.0;     // dual objective at termination
    int iterations = 0;
    int bland_pivots = 0;
    std::vector<std::size_t> support;  // grid rows in the final basis, ascending
};

// Revised primal simplex on the dual program
//   max sum (mu_m - lambda_m) f_m  s.t.  sum (lambda_m - mu_m) r_m = 0,  sum (lambda_m + mu_m) = 1,
// whose basis holds K+2 columns. Dantzig pricing with lowest-index ties, falling
// back to Bland's rule after a run of degenerate pivots.
LpResult solve_lp(const LpInstance& lp, const LpOptions& opt = {});

// residuals r_m . x - f_m for all rows
std::vector<double> lp_residuals(const LpInstance& lp, const std::vector<double>& x);

}  // namespace kest
