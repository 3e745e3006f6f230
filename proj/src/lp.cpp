#include "kest/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kest/binom.hpp"
#include "kest/chebyshev.hpp"
#include "kest/errors.hpp"
#include "kest/kernels.hpp"

namespace kest {

LpInstance build_lp(int K, const Grid& grid, LpBasis basis) {
    if (K < 1) throw DomainError("build_lp: K must be positive");
    LpInstance lp;
    lp.K = K;
    lp.basis = basis;
    for (double p : grid.points())
        if (p > 0.0) lp.points.push_back(p);
    const std::size_t M = lp.points.size();
    const std::size_t n = lp.cols();
    if (M < n + 1) throw ValidationError("build_lp: grid too coarse for K");
    lp.target.resize(M);
    lp.A.resize(M * n);
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < M; ++i) {
        const double p = lp.points[i];
        lp.target[i] = p_log_p(p);
        if (basis == LpBasis::chebyshev) {
            chebyshev_row(K, p, phi);
        } else {
            phi = bernstein_row(K, p);
        }
        for (std::size_t j = 0; j < n; ++j) lp.A[j * M + i] = p * phi[j];
    }
    return lp;
}

std::vector<double> lp_residuals(const LpInstance& lp, const std::vector<double>& x) {
    std::vector<double> e(lp.rows());
    kernels::matvec_colmajor(lp.A.data(), x, e);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= lp.target[i];
    return e;
}

namespace {

struct BasicVar {
    std::size_t row;
    int sign;  // +1: lambda (upper side), -1: mu (lower side)
    std::size_t index() const { return 2 * row + (sign < 0 ? 1 : 0); }
};

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Vec column(const LpInstance& lp, const BasicVar& v) {
    const std::size_t n = lp.cols();
    Vec c(static_cast<Eigen::Index>(n + 1));
    for (std::size_t j = 0; j < n; ++j) c[static_cast<Eigen::Index>(j)] = v.sign * lp.at(v.row, j);
    c[static_cast<Eigen::Index>(n)] = 1.0;
    return c;
}

// K+2 rows near the Chebyshev alternation pattern, weighted by a null vector
// of their coefficient rows so the dual starts feasible.
std::vector<BasicVar> initial_basis(const LpInstance& lp, Vec& xB) {
    const std::size_t n = lp.cols();
    const std::size_t m = n + 1;
    const std::size_t M = lp.rows();
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < m; ++i) {
        const double s = std::sin(0.5 * std::numbers::pi * (i + 0.5) / static_cast<double>(m));
        const double target = s * s;
        auto it = std::lower_bound(lp.points.begin(), lp.points.end(), target);
        std::size_t r = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - lp.points.begin(), M - 1));
        if (r > 0 && target - lp.points[r - 1] < lp.points[r] - target) --r;
        if (!rows.empty() && r <= rows.back()) r = rows.back() + 1;
        rows.push_back(r);
    }
    // keep indices valid when the tail collided with the end of the grid
    for (std::size_t i = m; i-- > 0;) {
        const std::size_t cap = M - (m - i);
        if (rows[i] > cap) rows[i] = cap;
        if (i + 1 < m && rows[i] >= rows[i + 1]) rows[i] = rows[i + 1] - 1;
    }
    Mat R(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Vec rhs(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) R(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = lp.at(rows[i], j);
    for (std::size_t j = 0; j < n; ++j) rhs[static_cast<Eigen::Index>(j)] = -lp.at(rows[n], j);
    Vec y_head = R.partialPivLu().solve(rhs);
    Vec y(static_cast<Eigen::Index>(m));
    y.head(static_cast<Eigen::Index>(n)) = y_head;
    y[static_cast<Eigen::Index>(n)] = 1.0;
    if (!y.allFinite()) throw SolverError("simplex: singular starting reference");
    const double total = y.cwiseAbs().sum();
    std::vector<BasicVar> basis;
    xB.resize(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double yi = y[static_cast<Eigen::Index>(i)];
        basis.push_back({rows[i], yi >= 0.0 ? +1 : -1});
        xB[static_cast<Eigen::Index>(i)] = std::fabs(yi) / total;
    }
    return basis;
}

}  // namespace

LpResult solve_lp(const LpInstance& lp, const LpOptions& opt) {
    const std::size_t n = lp.cols();
    const std::size_t m = n + 1;
    const std::size_t M = lp.rows();
    const int max_iter = opt.max_iter > 0 ? opt.max_iter : static_cast<int>(200 * m + 2000);
    Vec xB;
    auto basis = initial_basis(lp, xB);
    LpResult res;
    std::vector<double> x(n), e(M);
    int degenerate_run = 0;
    bool bland = false;
    Vec b = Vec::Zero(static_cast<Eigen::Index>(m));
    b[static_cast<Eigen::Index>(n)] = 1.0;

    for (int it = 0;; ++it) {
        if (it >= max_iter)
            throw SolverError("simplex: no convergence after " + std::to_string(it) + " iterations (level " +
                              std::to_string(res.level) + ", max residual " + std::to_string(res.epsilon) + ")");
        Mat B(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        Vec cB(static_cast<Eigen::Index>(m));
        for (std::size_t k = 0; k < m; ++k) {
            B.col(static_cast<Eigen::Index>(k)) = column(lp, basis[k]);
            cB[static_cast<Eigen::Index>(k)] = -basis[k].sign * lp.target[basis[k].row];
        }
        Eigen::PartialPivLU<Mat> lu(B);
        xB = lu.solve(b);
        const Vec pi = lu.transpose().solve(cB);
        for (std::size_t j = 0; j < n; ++j) x[j] = -pi[static_cast<Eigen::Index>(j)];
        const double h = pi[static_cast<Eigen::Index>(n)];
        kernels::matvec_colmajor(lp.A.data(), x, e);
        for (std::size_t i = 0; i < M; ++i) e[i] -= lp.target[i];
        std::size_t arg = 0;
        const double emax = kernels::max_abs(e, &arg);
        res.x = x;
        res.epsilon = emax;
        res.level = h;
        res.iterations = it;
        const double thr = opt.tol * std::max(std::fabs(h), 1e-300);
        if (emax - h <= thr) break;

        BasicVar enter{arg, e[arg] > 0.0 ? +1 : -1};
        if (bland) {
            for (std::size_t i = 0; i < M; ++i) {
                if (e[i] - h > thr) {
                    enter = {i, +1};
                    break;
                }
                if (-e[i] - h > thr) {
                    enter = {i, -1};
                    break;
                }
            }
            ++res.bland_pivots;
        }
        for (const auto& v : basis)
            if (v.index() == enter.index())
                throw SolverError("simplex: entering column already basic (numerical breakdown)");

        const Vec w = lu.solve(column(lp, enter));
        const double wscale = w.cwiseAbs().maxCoeff();
        std::size_t leave = m;
        double theta = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double wk = w[static_cast<Eigen::Index>(k)];
            if (wk <= 1e-12 * wscale) continue;
            const double t = std::max(xB[static_cast<Eigen::Index>(k)], 0.0) / wk;
            if (leave == m || t < theta || (t == theta && basis[k].index() < basis[leave].index())) {
                leave = k;
                theta = t;
            }
        }
        if (leave == m) throw SolverError("simplex: dual unbounded (primal infeasible), assembly bug");
        if (theta <= 1e-14) {
            if (++degenerate_run > static_cast<int>(2 * m)) bland = true;
        } else {
            degenerate_run = 0;
        }
        basis[leave] = enter;
    }
    for (const auto& v : basis) res.support.push_back(v.row);
    std::sort(res.support.begin(), res.support.end());
    return res;
}

}  // namespace kest
