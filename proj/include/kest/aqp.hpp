#pragma once

#include <string>
#include <vector>

#include "kest/grid.hpp"
#include "kest/table.hpp"

namespace kest {

struct AqpOptions {
    double tol = 1e-9;        // relative complementarity gap at termination
    int moment_grid = 1024;   // Chebyshev points carrying the second-moment rows
    bool certify = true;
};

struct ParetoPoint {
    double epsilon = 0.0;            // requested budget
    double epsilon_effective = 0.0;  // budget actually imposed (>= epsilon, see meta)
    double v = 0.0;                  // max over the moment grid of S(c,p)
    EstimatorTable table;
    double v_dense = 0.0;            // max S on the certification grid
    double sup_bias_dense = 0.0;
    bool certified = false;          // dense sup bias <= 1.05 epsilon_effective
};

// min v  s.t.  S(c,p_j) <= v  (moment grid),  |p P_c(p) - p log p| <= eps  (bias grid).
// Primal-dual interior point on a lifted form (u_k >= c_k^2 makes the moment rows linear).
ParetoPoint solve_aqp(int K, const Grid& bias_grid, double epsilon, const AqpOptions& opt = {});

std::vector<ParetoPoint> pareto_trace(int K, const Grid& bias_grid, const std::vector<double>& epsilons,
                                      const AqpOptions& opt = {});
std::string pareto_csv(const std::vector<ParetoPoint>& pts);

struct Competitor {
    std::string name;
    double sup_bias = 0.0;
    double v = 0.0;
    bool comparable = false;  // competitor's sup bias fits within the point's budget
    bool dominated = false;   // comparable and the AQP point's v is no larger
};

struct DominanceReport {
    double max_second_moment = 0.0;  // max_p S(c*,p) on the dense grid
    double max_coeff_sq = 0.0;       // max_k c_k^2
    bool boundary_bounded = false;   // max S <= max c_k^2 + 1e-9
    std::vector<Competitor> competitors;
    bool all_comparable_dominated() const;
};

// Compares against taylor_bt (c0 supplied) and plugin_log with alpha in {0.25, 0.5, 1}.
DominanceReport dominance_check(int K, const ParetoPoint& point, double taylor_c0, int Z_size = 2);

}  // namespace kest
