#include "kest/minimax.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "kest/binom.hpp"
#include "kest/chebyshev.hpp"
#include "kest/errors.hpp"
#include "kest/kernels.hpp"

namespace kest {

int count_alternations(const std::vector<double>& e, double frac) {
    const double emax = kernels::max_abs(e);
    if (emax == 0.0) return 0;
    int count = 0, last = 0;
    for (double v : e) {
        if (std::fabs(v) < frac * emax) continue;
        const int s = v > 0 ? 1 : -1;
        if (s != last) {
            ++count;
            last = s;
        }
    }
    return count;
}

namespace {

std::vector<double> weighted_errors_chebyshev(std::span<const double> a, std::span<const double> ps) {
    std::vector<double> e(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) e[i] = ps[i] * chebyshev_eval(a, ps[i]) - p_log_p(ps[i]);
    return e;
}

std::vector<double> weighted_errors_bernstein(std::span<const double> c, std::span<const double> ps) {
    auto e = expected_values(c, ps);
    for (std::size_t i = 0; i < ps.size(); ++i) e[i] = ps[i] == 0.0 ? 0.0 : ps[i] * e[i] - p_log_p(ps[i]);
    return e;
}

}  // namespace

MinimaxResult solve_minimax(int K, const Grid& grid, const MinimaxOptions& opt) {
    if (K < 1) throw DomainError("solve_minimax: K must be positive");
    if (!(opt.tol > 0.0)) throw DomainError("solve_minimax: tol must be positive");
    const auto lp = build_lp(K, grid, opt.basis);
    const auto sol = solve_lp(lp, {opt.tol, 0});

    std::vector<double> coeffs;
    double rounding = 0.0;
    std::vector<double> cheb;
    if (opt.basis == LpBasis::chebyshev) {
        auto conv = chebyshev_to_bernstein(sol.x);
        coeffs = std::move(conv.coeffs);
        rounding = conv.rounding_bound;
        cheb = sol.x;
    } else {
        coeffs = sol.x;
    }
    const auto grid_err = opt.basis == LpBasis::chebyshev ? weighted_errors_chebyshev(cheb, grid.points())
                                                          : weighted_errors_bernstein(coeffs, grid.points());
    const double eps = kernels::max_abs(grid_err);

    double eps_cert = 0.0;
    std::size_t cert_size = 0;
    if (opt.certify) {
        const auto cg = certification_grid(K, opt.certify_solve_M);
        cert_size = cg.size();
        const auto ce = opt.basis == LpBasis::chebyshev ? weighted_errors_chebyshev(cheb, cg.points())
                                                        : weighted_errors_bernstein(coeffs, cg.points());
        eps_cert = kernels::max_abs(ce);
    }
    const int alt = count_alternations(grid_err);

    Json meta = {{"epsilon", eps},
                 {"epsilon_certified", opt.certify ? Json(eps_cert) : Json(nullptr)},
                 {"grid", grid.size()},
                 {"grid_scheme", to_string(grid.scheme())},
                 {"certification_grid", cert_size},
                 {"lp_basis", opt.basis == LpBasis::chebyshev ? "chebyshev" : "bernstein"},
                 {"lp_iterations", sol.iterations},
                 {"tol", opt.tol},
                 {"alternations", alt},
                 {"rounding_bound", rounding},
                 {"representable", rounding <= 0.05 * eps}};
    if (!cheb.empty()) meta["chebyshev"] = cheb;
    if (alt < K + 2) meta["alternation_warning"] = true;

    MinimaxResult r{EstimatorTable(K, 1.0, Method::minimax, std::move(coeffs), std::move(meta))};
    r.epsilon = eps;
    r.epsilon_certified = eps_cert;
    r.certified = !opt.certify || eps_cert <= 1.05 * eps;
    r.chebyshev = std::move(cheb);
    r.rounding_bound = rounding;
    r.representable = rounding <= 0.05 * eps;
    r.alternations = alt;
    r.iterations = sol.iterations;
    return r;
}

MinimaxResult solve_minimax(int K, int M, const MinimaxOptions& opt) {
    return solve_minimax(K, build_grid(K, M, GridScheme::boundary_refined), opt);
}

double minimax_weighted_error(const MinimaxResult& r, double p) {
    if (p == 0.0) return 0.0;
    if (!r.chebyshev.empty()) return p * chebyshev_eval(r.chebyshev, p) - p_log_p(p);
    return p * expected_value(r.table, p) - p_log_p(p);
}

double minimax_c0(int K) {
    MinimaxOptions opt;
    opt.certify = false;
    return solve_minimax(K, kDefaultSolveGrid, opt).c0();
}

std::vector<ScalingRow> scaling_study(const std::vector<int>& Ks, int M, bool certify) {
    for (std::size_t i = 1; i < Ks.size(); ++i)
        if (Ks[i] <= Ks[i - 1]) throw ValidationError("scaling_study: Ks must be strictly increasing");
    std::vector<ScalingRow> rows;
    MinimaxOptions opt;
    opt.certify = certify;
    for (int K : Ks) {
        if (K < 1) throw ValidationError("scaling_study: every K must be >= 1");
        const auto r = solve_minimax(K, M, opt);
        const double ratio = rows.empty() ? std::numeric_limits<double>::quiet_NaN() : r.epsilon / rows.back().epsilon;
        rows.push_back({K, r.epsilon, r.epsilon_certified, ratio});
    }
    return rows;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
    std::ostringstream os;
    os << "K,epsilon,ratio_to_prev\n";
    char buf[96];
    for (const auto& r : rows) {
        if (std::isnan(r.ratio_to_prev))
            std::snprintf(buf, sizeof buf, "%d,%.17g,\n", r.K, r.epsilon);
        else
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", r.K, r.epsilon, r.ratio_to_prev);
        os << buf;
    }
    return os.str();
}

}  // namespace kest
