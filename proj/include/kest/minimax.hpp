#pragma once

#include <string>
#include <vector>

#include "kest/grid.hpp"
#include "kest/lp.hpp"
#include "kest/table.hpp"

namespace kest {

struct MinimaxOptions {
    double tol = 1e-9;
    LpBasis basis = LpBasis::chebyshev;
    bool certify = true;
    int certify_solve_M = kDefaultSolveGrid;  // sizes the certification grid
};

struct MinimaxResult {
    explicit MinimaxResult(EstimatorTable t) : table(std::move(t)) {}

    EstimatorTable table;          // beta = 1, Bernstein coefficients
    double epsilon = 0.0;          // max over the solve grid
    double epsilon_certified = 0.0;  // max over the dense certification grid (0 if skipped)
    bool certified = false;        // epsilon_certified <= 1.05 epsilon
    std::vector<double> chebyshev; // exact solver representation (Chebyshev basis only)
    double rounding_bound = 0.0;   // max_k |c_k(double) - c_k(exact)|
    bool representable = true;     // rounding_bound <= 0.05 epsilon
    int alternations = 0;          // sign-alternating points with |e| >= 0.999 epsilon
    int iterations = 0;
    double c0() const { return table[0]; }
};

// Minimax table for the weighted target p log p on the given grid (beta factored out).
MinimaxResult solve_minimax(int K, const Grid& grid, const MinimaxOptions& opt = {});
MinimaxResult solve_minimax(int K, int M = kDefaultSolveGrid, const MinimaxOptions& opt = {});

// Weighted error p*P(p) - p log p of a minimax solution at p (uses the exact representation).
double minimax_weighted_error(const MinimaxResult& r, double p);

// Boundary coefficient c_0* of the beta = 1 minimax table on the default grid.
double minimax_c0(int K);

// Longest sign-alternating chain among points with |e| >= frac * max|e|.
int count_alternations(const std::vector<double>& e, double frac = 0.999);

struct ScalingRow {
    int K;
    double epsilon;
    double epsilon_certified;
    double ratio_to_prev;  // NaN for the first row
};

std::vector<ScalingRow> scaling_study(const std::vector<int>& Ks, int M = kDefaultSolveGrid, bool certify = true);
std::string scaling_csv(const std::vector<ScalingRow>& rows);

// Independent exchange-method oracle: minimax of |p Q(p) - p log p| over (0,1]
// for deg Q <= K, computed on the continuum by multi-point Remez exchange.
struct RemezOptions {
    double tol = 1e-10;
    int max_iter = 100;
    int scan_points = 20000;
};

struct RemezResult {
    double epsilon = 0.0;
    std::vector<double> chebyshev;
    std::vector<double> reference;
    int iterations = 0;
    bool converged = false;
};

RemezResult remez_minimax(int K, const RemezOptions& opt = {});

}  // namespace kest
