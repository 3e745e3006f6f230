#include "kest/aqp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "kest/binom.hpp"
#include "kest/chebyshev.hpp"
#include "kest/errors.hpp"
#include "kest/estimators.hpp"
#include "kest/kernels.hpp"
#include "kest/minimax.hpp"

namespace kest {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct Problem {
    Mat Bq;   // J x n, basis values on the moment grid
    Mat Ab;   // M x n, rows p_m B_k(p_m)
    Mat Ac;   // M x n, rows p_m T_j(2 p_m - 1): the solver works in the Chebyshev basis
    Mat T;    // n x n, Bernstein coefficients of T_j (column j)
    Vec f;    // p_m log p_m
    double eps = 0.0;
    Eigen::Index n = 0;

};

Problem make_problem(int K, const Grid& bias_grid, int moment_points, double eps) {
    Problem pr;
    pr.n = K + 1;
    pr.eps = eps;
    const auto mg = build_grid(K, moment_points, GridScheme::chebyshev);
    pr.Bq.resize(static_cast<Eigen::Index>(mg.size()), pr.n);
    for (std::size_t j = 0; j < mg.size(); ++j) {
        const auto row = bernstein_row(K, mg[j]);
        for (Eigen::Index k = 0; k < pr.n; ++k) pr.Bq(static_cast<Eigen::Index>(j), k) = row[static_cast<std::size_t>(k)];
    }
    std::vector<double> ps;
    for (double p : bias_grid.points())
        if (p > 0.0) ps.push_back(p);
    pr.Ab.resize(static_cast<Eigen::Index>(ps.size()), pr.n);
    pr.Ac.resize(static_cast<Eigen::Index>(ps.size()), pr.n);
    pr.f.resize(static_cast<Eigen::Index>(ps.size()));
    std::vector<double> trow(static_cast<std::size_t>(pr.n));
    for (std::size_t m = 0; m < ps.size(); ++m) {
        const auto row = bernstein_row(K, ps[m]);
        chebyshev_row(K, ps[m], trow);
        const auto i = static_cast<Eigen::Index>(m);
        for (Eigen::Index k = 0; k < pr.n; ++k) {
            pr.Ab(i, k) = ps[m] * row[static_cast<std::size_t>(k)];
            pr.Ac(i, k) = ps[m] * trow[static_cast<std::size_t>(k)];
        }
        pr.f[i] = p_log_p(ps[m]);
    }
    pr.T.resize(pr.n, pr.n);
    std::vector<double> e(static_cast<std::size_t>(pr.n), 0.0);
    for (Eigen::Index j = 0; j < pr.n; ++j) {
        e[static_cast<std::size_t>(j)] = 1.0;
        const auto conv = chebyshev_to_bernstein(e);
        for (Eigen::Index k = 0; k < pr.n; ++k) pr.T(k, j) = conv.coeffs[static_cast<std::size_t>(k)];
        e[static_cast<std::size_t>(j)] = 0.0;
    }
    return pr;
}

double sup_bias_on(const Problem& pr, const Vec& c) { return (pr.Ab * c - pr.f).cwiseAbs().maxCoeff(); }

// Conic form in x = (a, u, v) with Bernstein coefficients c = T a:
//   minimise v  s.t.  G x + s = h,  s in R_+^L x (Q^3)^n
//   linear rows:  Bq u - v <= 0,   Ac a <= f + eps,   -Ac a <= eps - f
//   cone k:       (u_k + 1, u_k - 1, 2 c_k) in Q^3   <=>   c_k^2 <= u_k
struct Conic {
    const Problem& pr;
    Eigen::Index n, J, M, L, nx;
    Vec h_lin;
    explicit Conic(const Problem& p)
        : pr(p), n(p.n), J(p.Bq.rows()), M(p.Ab.rows()), L(p.Bq.rows() + 2 * p.Ab.rows()), nx(2 * p.n + 1) {
        h_lin.resize(L);
        h_lin.head(J).setZero();
        h_lin.segment(J, M) = (pr.f.array() + pr.eps).matrix();
        h_lin.tail(M) = (pr.eps - pr.f.array()).matrix();
    }
    // G x for the linear rows
    Vec g_lin(const Vec& x) const {
        Vec o(L);
        o.head(J) = (pr.Bq * x.segment(n, n)).array() - x[2 * n];
        const Vec a = pr.Ac * x.head(n);
        o.segment(J, M) = a;
        o.tail(M) = -a;
        return o;
    }
    // G x for cone k
    Eigen::Vector3d g_cone(const Vec& x, Eigen::Index k) const {
        return {-x[n + k], -x[n + k], -2.0 * pr.T.row(k).dot(x.head(n))};
    }
    static Eigen::Vector3d h_cone() { return {1.0, -1.0, 0.0}; }
    // G^T y
    Vec gt(const Vec& ylin, const Mat& ycone) const {
        Vec o = Vec::Zero(nx);
        o.head(n) = pr.Ac.transpose() * (ylin.segment(J, M) - ylin.tail(M)) - 2.0 * pr.T.transpose() * ycone.row(2).transpose();
        o.segment(n, n) = pr.Bq.transpose() * ylin.head(J);
        o[2 * n] = -ylin.head(J).sum();
        for (Eigen::Index k = 0; k < n; ++k) o[n + k] += -ycone(0, k) - ycone(1, k);
        return o;
    }
};

// |G|^T |y|: scale for the dual residual
Vec gt_abs(const Conic& C, const Vec& ylin, const Mat& ycone) {
    const auto& pr = C.pr;
    const Eigen::Index n = C.n, J = C.J, M = C.M;
    Vec o = Vec::Zero(C.nx);
    o.head(n) = pr.Ac.cwiseAbs().transpose() * (ylin.segment(J, M).cwiseAbs() + ylin.tail(M).cwiseAbs()) +
                2.0 * pr.T.cwiseAbs().transpose() * ycone.row(2).cwiseAbs().transpose();
    o.segment(n, n) = pr.Bq.transpose() * ylin.head(J).cwiseAbs();
    o[2 * n] = ylin.head(J).cwiseAbs().sum();
    for (Eigen::Index k = 0; k < n; ++k) o[n + k] += std::fabs(ycone(0, k)) + std::fabs(ycone(1, k));
    return o;
}

// second-order cone helpers (dimension 3, column vectors)
double soc_det(const Eigen::Vector3d& x) { return x[0] * x[0] - x[1] * x[1] - x[2] * x[2]; }

Eigen::Vector3d jordan(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
    return {x.dot(y), x[0] * y[1] + y[0] * x[1], x[0] * y[2] + y[0] * x[2]};
}

// u with lam o u = d
Eigen::Vector3d jordan_solve(const Eigen::Vector3d& lam, const Eigen::Vector3d& d) {
    const double det = soc_det(lam);
    const double u0 = (lam[0] * d[0] - lam[1] * d[1] - lam[2] * d[2]) / det;
    return {u0, (d[1] - u0 * lam[1]) / lam[0], (d[2] - u0 * lam[2]) / lam[0]};
}

// largest a in [0, amax] with x + a dx in the cone
double soc_step(const Eigen::Vector3d& x, const Eigen::Vector3d& dx, double amax) {
    const double a = soc_det(dx);
    const double b = x[0] * dx[0] - x[1] * dx[1] - x[2] * dx[2];
    const double c = soc_det(x);
    double t = amax;
    // det(x + t dx) = a t^2 + 2 b t + c must stay >= 0, and x0 + t dx0 >= 0
    if (dx[0] < 0.0) t = std::min(t, -x[0] / dx[0]);
    if (a == 0.0) {
        if (b < 0.0) t = std::min(t, -c / (2.0 * b));
    } else {
        const double disc = b * b - a * c;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            // roots of a t^2 + 2 b t + c, computed stably
            const double q = -(b + std::copysign(sq, b));
            for (double r : {q / a, q != 0.0 ? c / q : INFINITY})
                if (r > 0.0) t = std::min(t, r);
        }
    }
    return t;
}

// Nesterov-Todd scaling for one cone: W = eta * Wbar with W z = W^{-1} s
struct SocScaling {
    double eta;
    Eigen::Matrix3d W, Winv;
};

SocScaling soc_scaling(const Eigen::Vector3d& s, const Eigen::Vector3d& z) {
    const double a = std::sqrt(soc_det(s)), b = std::sqrt(soc_det(z));
    const Eigen::Vector3d sb = s / a, zb = z / b;
    const double gamma = std::sqrt((1.0 + sb.dot(zb)) / 2.0);
    const Eigen::Vector3d w = (sb + Eigen::Vector3d(zb[0], -zb[1], -zb[2])) / (2.0 * gamma);
    Eigen::Matrix3d Wb;
    const Eigen::Vector2d w1 = w.tail<2>();
    Wb(0, 0) = w[0];
    Wb.block<1, 2>(0, 1) = w1.transpose();
    Wb.block<2, 1>(1, 0) = w1;
    Wb.block<2, 2>(1, 1) = Eigen::Matrix2d::Identity() + w1 * w1.transpose() / (1.0 + w[0]);
    const Eigen::Matrix3d Jm = Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
    SocScaling sc;
    sc.eta = std::sqrt(a / b);
    sc.W = sc.eta * Wb;
    sc.Winv = (Jm * Wb * Jm) / sc.eta;
    return sc;
}

struct IpmResult {
    Vec c;
    int iterations = 0;
    double gap = 0.0;
    double primal_res = 0.0;
    double dual_res = 0.0;
    double score = INFINITY;  // residuals scaled by their tolerances; <= 1 means converged
    bool converged = false;
};

IpmResult conic_ipm(const Problem& pr, double tol, int max_iter = 600) {
    const Conic C(pr);
    const Eigen::Index n = C.n, L = C.L, nx = C.nx;
    const double degree = static_cast<double>(L + n);
    Vec x = Vec::Zero(nx);
    x.segment(n, n).setOnes();
    x[2 * n] = (pr.Bq * x.segment(n, n)).maxCoeff() + 1.0;
    Vec sl = (C.h_lin - C.g_lin(x)).cwiseMax(1.0);
    Vec zl = Vec::Ones(L);
    Mat sc(3, n), zc(3, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        sc.col(k) = Conic::h_cone() - C.g_cone(x, k);
        zc.col(k) = Eigen::Vector3d(1.0, 0.0, 0.0);
    }
    Vec cobj = Vec::Zero(nx);
    cobj[2 * n] = 1.0;

    IpmResult out;
    Vec best = x;
    double rx0 = 1.0, mu0 = 1.0;
    for (int it = 0; it < max_iter; ++it) {
        const Vec rx = cobj + C.gt(zl, zc);
        const Vec rzl = C.g_lin(x) + sl - C.h_lin;
        Mat rzc(3, n);
        for (Eigen::Index k = 0; k < n; ++k) rzc.col(k) = C.g_cone(x, k) + sc.col(k) - Conic::h_cone();
        double gap = sl.dot(zl);
        for (Eigen::Index k = 0; k < n; ++k) gap += sc.col(k).dot(zc.col(k));
        const double mu = gap / degree;
        const double pres = std::max(rzl.cwiseAbs().maxCoeff(), rzc.cwiseAbs().maxCoeff());
        // residuals relative to the size of the terms that produce them
        const double dres = rx.cwiseAbs().maxCoeff() / (1.0 + gt_abs(C, zl, zc).maxCoeff());
        const double vobj = x[2 * n];
        const double score = std::max({gap / (tol * std::max(1.0, std::fabs(vobj))),
                                       pres / (1e-8 * pr.eps + 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff())),
                                       dres / 1e-9});
        if (score < out.score) {
            out.score = score;
            out.iterations = it;
            out.gap = gap;
            out.primal_res = pres;
            out.dual_res = dres;
            best = x;
        }
        if (score <= 1.0) {
            out.converged = true;
            break;
        }
        if (it == 0) {
            rx0 = std::max(dres, 1e-300);
            mu0 = mu;
        }

        // scaling
        const Vec wl = (sl.cwiseQuotient(zl)).cwiseSqrt();  // W for the orthant
        const Vec laml = (sl.cwiseProduct(zl)).cwiseSqrt();
        std::vector<SocScaling> scl(static_cast<std::size_t>(n));
        Mat lamc(3, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            scl[static_cast<std::size_t>(k)] = soc_scaling(sc.col(k), zc.col(k));
            lamc.col(k) = scl[static_cast<std::size_t>(k)].W * zc.col(k);
        }
        // normal matrix  G^T W^{-2} G
        const Vec d2 = wl.cwiseAbs2().cwiseInverse();  // z/s
        Mat H = Mat::Zero(nx, nx);
        {
            const Eigen::Index J = C.J, M = C.M;
            Mat Gm(J, n + 1);
            Gm.leftCols(n) = pr.Bq;
            Gm.col(n).setConstant(-1.0);
            H.bottomRightCorner(n + 1, n + 1).noalias() += Gm.transpose() * d2.head(J).asDiagonal() * Gm;
            H.topLeftCorner(n, n).noalias() +=
                pr.Ac.transpose() * (d2.segment(J, M) + d2.tail(M)).asDiagonal() * pr.Ac;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            // W^{-1} G_k = pu e_{u_k}^T + pc T_k^T
            const auto& Wi = scl[static_cast<std::size_t>(k)].Winv;
            const Eigen::Vector3d pu = -(Wi.col(0) + Wi.col(1));
            const Eigen::Vector3d pc = -2.0 * Wi.col(2);
            const Vec Tk = pr.T.row(k).transpose();
            H.topLeftCorner(n, n).noalias() += pc.squaredNorm() * Tk * Tk.transpose();
            H.block(0, n + k, n, 1) += pu.dot(pc) * Tk;
            H.block(n + k, 0, 1, n) += pu.dot(pc) * Tk.transpose();
            H(n + k, n + k) += pu.squaredNorm();
        }
        const Vec ds = H.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
        const Mat Hs = ds.asDiagonal() * H * ds.asDiagonal();
        const auto fact = Hs.ldlt();

        // solve for a given complementarity right-hand side (dl, dc): lam o (W dz + W^{-1} ds) = d
        auto direction = [&](const Vec& dl, const Mat& dc, Vec& dx, Vec& dsl, Vec& dzl, Mat& dsc, Mat& dzc) {
            // t = lam \ d  and  q = W^{-1} r_z + t
            const Vec tl = dl.cwiseQuotient(laml);
            const Vec ql = rzl.cwiseQuotient(wl) + tl;
            Mat tc(3, n), qc(3, n);
            for (Eigen::Index k = 0; k < n; ++k) {
                tc.col(k) = jordan_solve(lamc.col(k), dc.col(k));
                qc.col(k) = scl[static_cast<std::size_t>(k)].Winv * rzc.col(k) + tc.col(k);
            }
            // rhs = -r_x - G^T W^{-1} q
            Mat wq(3, n);
            for (Eigen::Index k = 0; k < n; ++k) wq.col(k) = scl[static_cast<std::size_t>(k)].Winv * qc.col(k);
            const Vec rhs = -rx - C.gt(ql.cwiseQuotient(wl), wq);
            dx = ds.asDiagonal() * fact.solve(ds.asDiagonal() * rhs);
            dx += ds.asDiagonal() * fact.solve(ds.asDiagonal() * (rhs - H * dx));
            // W dz = W^{-1} G dx + q ;  W^{-1} ds = t - W dz
            const Vec zt = C.g_lin(dx).cwiseQuotient(wl) + ql;
            dzl = zt.cwiseQuotient(wl);
            dsl = (tl - zt).cwiseProduct(wl);
            dsc.resize(3, n);
            dzc.resize(3, n);
            for (Eigen::Index k = 0; k < n; ++k) {
                const auto& S = scl[static_cast<std::size_t>(k)];
                const Eigen::Vector3d ztk = S.Winv * C.g_cone(dx, k) + qc.col(k);
                dzc.col(k) = S.Winv * ztk;
                dsc.col(k) = S.W * (tc.col(k) - ztk);
            }
        };
        auto max_step = [&](const Vec& dsl, const Vec& dzl, const Mat& dsc, const Mat& dzc) {
            double a = 1.0;
            for (Eigen::Index i = 0; i < L; ++i) {
                if (dsl[i] < 0.0) a = std::min(a, -sl[i] / dsl[i]);
                if (dzl[i] < 0.0) a = std::min(a, -zl[i] / dzl[i]);
            }
            for (Eigen::Index k = 0; k < n; ++k) {
                a = soc_step(sc.col(k), dsc.col(k), a);
                a = soc_step(zc.col(k), dzc.col(k), a);
            }
            return a;
        };

        Vec dx, dsl, dzl;
        Mat dsc, dzc;
        // affine direction: d = -lam o lam
        Vec dl = -laml.cwiseAbs2();
        Mat dcm(3, n);
        for (Eigen::Index k = 0; k < n; ++k) dcm.col(k) = -jordan(lamc.col(k), lamc.col(k));
        direction(dl, dcm, dx, dsl, dzl, dsc, dzc);
        if (!dx.allFinite()) break;
        const double aa = max_step(dsl, dzl, dsc, dzc);
        double gap_aff = (sl + aa * dsl).dot(zl + aa * dzl);
        for (Eigen::Index k = 0; k < n; ++k) gap_aff += (sc.col(k) + aa * dsc.col(k)).dot(zc.col(k) + aa * dzc.col(k));
        double sigma = std::pow(std::clamp(gap_aff / gap, 0.0, 1.0), 3);
        // keep complementarity from running ahead of dual feasibility
        if (dres / rx0 > 10.0 * mu / mu0) sigma = std::max(sigma, 0.5);

        // corrector: d = -lam o lam - (W^{-1} ds_a) o (W dz_a) + sigma mu e
        dl = -laml.cwiseAbs2() - (dsl.cwiseQuotient(wl)).cwiseProduct(dzl.cwiseProduct(wl)) + Vec::Constant(L, sigma * mu);
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto& S = scl[static_cast<std::size_t>(k)];
            dcm.col(k) = -jordan(lamc.col(k), lamc.col(k)) - jordan(S.Winv * dsc.col(k), S.W * dzc.col(k)) +
                         Eigen::Vector3d(sigma * mu, 0.0, 0.0);
        }
        direction(dl, dcm, dx, dsl, dzl, dsc, dzc);
        if (!dx.allFinite()) break;
        const double a = std::min(1.0, 0.99 * max_step(dsl, dzl, dsc, dzc));
        x += a * dx;
        sl += a * dsl;
        zl += a * dzl;
        sc += a * dsc;
        zc += a * dzc;
    }
    out.c = best.head(n);  // Chebyshev coefficients
    return out;
}

}  // namespace

static ParetoPoint solve_aqp_from(int K, const Grid& bias_grid, double epsilon, const AqpOptions& opt,
                                  const MinimaxResult& mm) {
    if (!(epsilon > 0.0)) throw ValidationError("solve_aqp: epsilon must be positive");
    auto pr = make_problem(K, bias_grid, opt.moment_grid, epsilon);
    const Vec cstar = Eigen::Map<const Vec>(mm.table.coeffs().data(), K + 1);
    const double eps_min = sup_bias_on(pr, cstar);
    if (epsilon < mm.epsilon * (1.0 - 1e-9))
        throw InfeasibleError("solve_aqp: budget " + std::to_string(epsilon) + " is below the minimax bias " +
                                  std::to_string(mm.epsilon),
                              mm.epsilon);
    // a representable minimax table fixes the smallest budget that is feasible in double precision
    const double eps_eff = mm.representable ? std::max(epsilon, eps_min) : epsilon;
    pr.eps = eps_eff;

    Json meta = {{"epsilon", epsilon}, {"epsilon_effective", eps_eff}, {"moment_grid", opt.moment_grid},
                 {"bias_grid", bias_grid.size()}};
    Vec c;
    std::vector<double> cheb;
    if (pr.f.cwiseAbs().maxCoeff() <= eps_eff) {
        // the zero table is the unique minimiser (v = 0) whenever it fits the budget
        c = Vec::Zero(K + 1);
        meta["status"] = "zero-table";
    } else if (mm.representable && epsilon <= eps_min * (1.0 + 1e-6)) {
        // the feasible set has collapsed onto the minimax table (up to rounding)
        c = cstar;
        meta["status"] = "minimax";
    } else {
        auto r = conic_ipm(pr, opt.tol);
        cheb.assign(r.c.data(), r.c.data() + r.c.size());
        const auto conv = chebyshev_to_bernstein(cheb);
        c = Eigen::Map<const Vec>(conv.coeffs.data(), K + 1);
        meta["iterations"] = r.iterations;
        meta["gap"] = r.gap;
        meta["primal_residual"] = r.primal_res;
        meta["dual_residual"] = r.dual_res;
        if (!r.converged) {
            if (!(sup_bias_on(pr, c) <= eps_eff * (1.0 + 1e-6)) || !(r.score <= 1e4))
                throw SolverError("aqp: interior point did not converge (gap=" + std::to_string(r.gap) +
                                  ", dual residual=" + std::to_string(r.dual_res) + ")");
            meta["status"] = "precision-limited";
        } else {
            meta["status"] = "converged";
        }
    }
    if (!cheb.empty()) meta["chebyshev"] = cheb;
    std::vector<double> coeffs(c.data(), c.data() + c.size());
    const double v_grid = (pr.Bq * c.cwiseProduct(c)).maxCoeff();
    meta["v"] = v_grid;

    ParetoPoint pt{epsilon, eps_eff, v_grid, EstimatorTable(K, 1.0, Method::aqp, coeffs, meta), 0.0, 0.0, false};
    if (opt.certify) {
        const auto prof = bias_profile(pt.table, certification_grid(K));
        pt.v_dense = prof.sup_second_moment;
        pt.sup_bias_dense = prof.sup_bias;
        pt.certified = prof.sup_bias <= 1.05 * eps_eff;
        meta["v_dense"] = pt.v_dense;
        meta["sup_bias_dense"] = pt.sup_bias_dense;
        meta["certified"] = pt.certified;
        pt.table = EstimatorTable(K, 1.0, Method::aqp, coeffs, meta);
    }
    return pt;
}

ParetoPoint solve_aqp(int K, const Grid& bias_grid, double epsilon, const AqpOptions& opt) {
    MinimaxOptions mo;
    mo.certify = false;
    const auto mm = solve_minimax(K, bias_grid, mo);
    return solve_aqp_from(K, bias_grid, epsilon, opt, mm);
}

std::vector<ParetoPoint> pareto_trace(int K, const Grid& bias_grid, const std::vector<double>& eps,
                                      const AqpOptions& opt) {
    if (eps.empty()) return {};
    for (std::size_t i = 1; i < eps.size(); ++i)
        if (!(eps[i] > eps[i - 1])) throw ValidationError("pareto_trace: epsilons must be strictly increasing");
    MinimaxOptions mo;
    mo.certify = false;
    const auto mm = solve_minimax(K, bias_grid, mo);
    std::vector<ParetoPoint> out;
    for (double e : eps) out.push_back(solve_aqp_from(K, bias_grid, e, opt, mm));
    return out;
}

std::string pareto_csv(const std::vector<ParetoPoint>& pts) {
    std::ostringstream os;
    os << "epsilon,v\n";
    char buf[80];
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.epsilon, p.v);
        os << buf;
    }
    return os.str();
}

bool DominanceReport::all_comparable_dominated() const {
    for (const auto& c : competitors)
        if (c.comparable && !c.dominated) return false;
    return true;
}

DominanceReport dominance_check(int K, const ParetoPoint& point, double taylor_c0, int Z_size) {
    const auto grid = certification_grid(K);
    const auto prof = bias_profile(point.table, grid);
    DominanceReport rep;
    rep.max_second_moment = prof.sup_second_moment;
    for (double c : point.table.coeffs()) rep.max_coeff_sq = std::max(rep.max_coeff_sq, c * c);
    rep.boundary_bounded = rep.max_second_moment <= rep.max_coeff_sq + 1e-9;
    const double budget = point.epsilon_effective;
    auto add = [&](std::string name, const EstimatorTable& t) {
        const auto cp = bias_profile(t, grid);
        Competitor c{std::move(name), cp.sup_bias, cp.sup_second_moment};
        c.comparable = cp.sup_bias <= budget;
        c.dominated = c.comparable && prof.sup_second_moment <= cp.sup_second_moment;
        rep.competitors.push_back(std::move(c));
    };
    add("taylor_bt", taylor_bt_table(K, 1.0, taylor_c0));
    for (double a : {0.25, 0.5, 1.0}) {
        char nm[48];
        std::snprintf(nm, sizeof nm, "plugin_log(alpha=%g)", a);
        add(nm, plugin_log_table(K, 1.0, a, Z_size));
    }
    return rep;
}

}  // namespace kest
