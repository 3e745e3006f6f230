#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>

#include "kest/binom.hpp"
#include "kest/chebyshev.hpp"
#include "kest/errors.hpp"
#include "kest/minimax.hpp"

namespace kest {

namespace {

double werr(const std::vector<double>& a, double p) { return p * chebyshev_eval(a, p) - p_log_p(p); }

struct Extremum {
    double p;
    double e;
};

std::vector<double> scan_grid(int n, int K) {
    std::vector<double> g;
    for (int i = 1; i < n; ++i) {
        const double s = std::sin(0.5 * std::numbers::pi * i / (n - 1));
        g.push_back(s * s);
    }
    g.back() = 1.0;
    for (int j = 0; j <= 40; ++j) g.push_back(std::ldexp(1.0, -j) / K);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    while (!g.empty() && g.back() > 1.0) g.pop_back();
    return g;
}

// One extremum per maximal same-sign run, refined by Brent on the neighbouring bracket.
std::vector<Extremum> alternating_extrema(const std::vector<double>& a, const std::vector<double>& g) {
    std::vector<double> e(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) e[i] = werr(a, g[i]);
    std::vector<Extremum> out;
    std::size_t i = 0;
    while (i < g.size()) {
        if (e[i] == 0.0) {
            ++i;
            continue;
        }
        const int s = e[i] > 0 ? 1 : -1;
        std::size_t best = i, j = i;
        while (j < g.size() && (e[j] > 0 ? 1 : (e[j] < 0 ? -1 : 0)) == s) {
            if (std::fabs(e[j]) > std::fabs(e[best])) best = j;
            ++j;
        }
        const double lo = best > 0 ? g[best - 1] : g[best] * 0.5;
        const double hi = best + 1 < g.size() ? g[best + 1] : g[best];
        auto neg = [&](double p) { return -s * werr(a, p); };
        auto [pm, fm] = boost::math::tools::brent_find_minima(neg, lo, hi, std::numeric_limits<double>::digits / 2 + 4);
        Extremum x{g[best], e[best]};
        if (-fm > std::fabs(e[best])) x = {pm, werr(a, pm)};
        out.push_back(x);
        i = j;
    }
    return out;
}

}  // namespace

RemezResult remez_minimax(int K, const RemezOptions& opt) {
    if (K < 1) throw DomainError("remez_minimax: K must be positive");
    const int n = K + 1;
    const int m = K + 2;
    std::vector<double> ref(m);
    for (int i = 0; i < m; ++i) {
        const double s = std::sin(0.5 * std::numbers::pi * (i + 1) / m);
        ref[i] = s * s;
    }
    ref.back() = 1.0;
    const auto grid = scan_grid(opt.scan_points, K);
    RemezResult res;
    std::vector<double> a(n), row(n);
    for (int it = 1; it <= opt.max_iter; ++it) {
        Eigen::MatrixXd A(m, m);
        Eigen::VectorXd rhs(m);
        for (int i = 0; i < m; ++i) {
            chebyshev_row(K, ref[i], row);
            for (int j = 0; j < n; ++j) A(i, j) = ref[i] * row[j];
            A(i, n) = (i % 2 == 0) ? -1.0 : 1.0;
            rhs[i] = p_log_p(ref[i]);
        }
        const Eigen::VectorXd sol = A.partialPivLu().solve(rhs);
        for (int j = 0; j < n; ++j) a[j] = sol[j];
        const double level = std::fabs(sol[n]);

        auto ext = alternating_extrema(a, grid);
        if (static_cast<int>(ext.size()) < m)
            throw SolverError("remez: only " + std::to_string(ext.size()) + " alternating extrema, need " +
                              std::to_string(m));
        std::size_t gmax = 0;
        for (std::size_t k = 1; k < ext.size(); ++k)
            if (std::fabs(ext[k].e) > std::fabs(ext[gmax].e)) gmax = k;
        const double emax = std::fabs(ext[gmax].e);
        // trim to m points from the ends, never dropping the global maximum
        std::size_t lo = 0, hi = ext.size();
        while (hi - lo > static_cast<std::size_t>(m)) {
            const bool drop_front =
                gmax != lo && (gmax == hi - 1 || std::fabs(ext[lo].e) <= std::fabs(ext[hi - 1].e));
            if (drop_front)
                ++lo;
            else
                --hi;
        }
        for (int k = 0; k < m; ++k) ref[k] = ext[lo + k].p;
        res.iterations = it;
        res.epsilon = emax;
        res.chebyshev = a;
        res.reference = ref;
        if ((emax - level) <= opt.tol * emax) {
            res.converged = true;
            break;
        }
    }
    return res;
}

}  // namespace kest
