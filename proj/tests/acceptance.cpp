// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kest/analysis.hpp"
#include "kest/aqp.hpp"
#include "kest/binom.hpp"
#include "kest/cli.hpp"
#include "kest/estimators.hpp"
#include "kest/game.hpp"
#include "kest/grid.hpp"
#include "kest/minimax.hpp"

using namespace kest;
using Rational = boost::multiprecision::cpp_rational;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> notes;  // informational lines, do not affect the verdict
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void require(Outcome& o, bool cond, const std::string& what) {
    if (!cond) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : "; ") + what;
    }
}

Rational rpow(const Rational& x, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

Rational choose(int n, int k) {
    boost::multiprecision::cpp_int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return Rational(r);
}

// ---------------------------------------------------------------------------

Outcome c1_unbiasedness() {
    Outcome o;
    const auto g = build_grid(1, 101, GridScheme::uniform);
    double worst = 0.0;
    for (int K : {2, 4, 8, 16, 32})
        for (int d = 1; d <= std::min(K, 4); ++d)
            for (GameSign s : {GameSign::coherence, GameSign::diversity}) {
                std::vector<double> c(d);
                for (int m = 0; m < d; ++m) c[m] = 0.5 + 0.25 * m;
                const PolynomialReward r(c, s, 1.0);
                const auto t = u_statistic_table(r, K);
                for (double p : g.points()) worst = std::max(worst, std::fabs(expected_value(t, p) - r.reward(p)));
            }
    require(o, worst <= 1e-12, fmt("max |E - target| = %.3g", worst));

    // exact: sum_X C(K,X) p^X (1-p)^(K-X) (X)_m/(K)_m == p^m, and the library rounds correctly
    bool exact = true;
    double max_round = 0.0;
    for (int K : {2, 4, 8, 12})
        for (int m = 1; m <= std::min(K, 4); ++m) {
            std::vector<Rational> tab(K + 1);
            for (int X = 0; X <= K; ++X) {
                Rational num = 1, den = 1;
                for (int i = 0; i < m; ++i) num *= X - i, den *= K - i;
                tab[X] = num / den;
                max_round = std::max(max_round, std::fabs(falling_factorial_estimate(X, K, m) -
                                                          static_cast<double>(tab[X])));
            }
            for (auto [a, b] : {std::pair{0, 1}, {1, 4}, {1, 2}, {3, 4}, {1, 1}}) {
                const Rational p(a, b);
                Rational s = 0;
                for (int X = 0; X <= K; ++X) s += tab[X] * choose(K, X) * rpow(p, X) * rpow(1 - p, K - X);
                exact = exact && s == rpow(p, m);
            }
        }
    require(o, exact, "rational identity violated");
    require(o, max_round <= 2.3e-16, fmt("rounding %.3g", max_round));
    if (o.pass) o.detail = fmt("max |E - target| = %.3g; rational identity exact for K <= 12", worst);
    return o;
}

Outcome c2_scaling() {
    Outcome o;
    const auto rows = scaling_study({8, 16, 32, 64});
    std::string s;
    for (const auto& r : rows) {
        s += fmt(" K=%d eps=%.6g", r.K, r.epsilon);
        if (!std::isnan(r.ratio_to_prev)) {
            s += fmt(" (ratio %.3f)", r.ratio_to_prev);
            require(o, r.ratio_to_prev >= 0.18 && r.ratio_to_prev <= 0.35, fmt("ratio at K=%d out of band", r.K));
        }
        const double rel = std::fabs(r.epsilon_certified - r.epsilon) / r.epsilon;
        require(o, rel <= 0.05, fmt("K=%d certified eps off by %.3g", r.K, rel));
    }
    o.detail = (o.pass ? "" : o.detail + " |") + s;
    return o;
}

Outcome c3_oracle() {
    Outcome o;
    std::string s;
    for (int K : {4, 8, 16}) {
        MinimaxOptions mo;
        mo.certify = false;
        const double lp = solve_minimax(K, kDefaultSolveGrid, mo).epsilon;
        const auto rz = remez_minimax(K);
        const double rel = std::fabs(lp - rz.epsilon) / rz.epsilon;
        s += fmt(" K=%d lp=%.8g exchange=%.8g rel=%.2g", K, lp, rz.epsilon, rel);
        require(o, rz.converged, fmt("exchange oracle did not converge at K=%d", K));
        require(o, rel <= 0.01, fmt("K=%d disagreement %.3g", K, rel));
    }
    o.detail = (o.pass ? "" : o.detail + " |") + s;
    return o;
}

void taylor_checks(Outcome& o, const std::vector<TaylorFailureRow>& rows, std::string& s) {
    double lo = INFINITY, hi = 0.0, prev_ratio = -INFINITY;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double es = solve_minimax(r.K).epsilon;
        const double ratio = r.sup_bias / es;
        s += fmt(" K=%d sup=%.4g", r.K, r.sup_bias);
        if (i > 0) {
            const double d = r.sup_bias / rows[i - 1].sup_bias;
            s += fmt(" (x%.3f)", d);
            require(o, d >= 0.35 && d <= 0.65, fmt("doubling ratio %.3f at K=%d", d, r.K));
        }
        s += fmt(" sup/eps*=%.3g", ratio);
        require(o, ratio > prev_ratio, fmt("sup/eps* not increasing at K=%d", r.K));
        prev_ratio = ratio;
        lo = std::min(lo, r.bias_half_K2);
        hi = std::max(hi, r.bias_half_K2);
    }
    s += fmt(" bias(1/2)K^2 max/min=%.3g", hi / lo);
    require(o, hi / lo <= 4.0, fmt("bias(1/2)K^2 spread %.3g", hi / lo));
}

Outcome c4_taylor() {
    Outcome o;
    std::string s;
    taylor_checks(o, taylor_uniform_failure({16, 32, 64, 128}), s);
    o.detail = (o.pass ? "" : o.detail + " |") + s;
    Outcome fb;
    std::string sf;
    taylor_checks(fb, taylor_uniform_failure({16, 32, 64, 128}, c0_rule_from_string("fallback")), sf);
    o.notes.push_back(fmt("c0 = -log K - 1/2 instead of c0*: %s%s", fb.pass ? "would pass" : "would also fail",
                          sf.c_str()));
    return o;
}

Outcome c5_laplace() {
    Outcome o;
    std::string s;
    double prev = 0.0;
    for (int K : {16, 32, 64, 128}) {
        const double sup = bias_profile(plugin_log_table(K, 1.0, 1.0, 2), build_grid(K, kDefaultSolveGrid)).sup_bias;
        s += fmt(" K=%d sup=%.4g", K, sup);
        if (prev > 0.0) {
            const double d = sup / prev;
            s += fmt(" (x%.3f)", d);
            require(o, d >= 0.35 && d <= 0.65, fmt("doubling ratio %.3f at K=%d", d, K));
        }
        prev = sup;
    }
    o.detail = (o.pass ? "" : o.detail + " |") + s;
    return o;
}

Outcome c6_frontier() {
    Outcome o;
    const int K = 16;
    const auto g = build_grid(K, kDefaultSolveGrid);
    const auto mm = solve_minimax(K);
    const auto cert = certification_grid(K);
    const double v_mm = bias_profile(mm.table, cert).sup_second_moment;
    std::vector<double> eps;
    for (int j = 0; j <= 6; ++j) eps.push_back(mm.epsilon * std::ldexp(1.0, j));
    const auto pts = pareto_trace(K, g, eps);
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        s += fmt(" %gx:v=%.4g%s", std::ldexp(1.0, static_cast<int>(i)), pts[i].v, pts[i].certified ? "" : "(uncert)");
        require(o, pts[i].certified, fmt("point %zu fails dense bias certification", i));
        if (i > 0) require(o, pts[i].v <= pts[i - 1].v, fmt("v increases at point %zu", i));
    }
    const double rel = std::fabs(pts[0].v - v_mm) / v_mm;
    s += fmt(" | v(eps*)/maxS(minimax)-1=%.3g", pts[0].v / v_mm - 1.0);
    require(o, rel <= 0.05, fmt("v(eps*) off minimax max S by %.3g", rel));

    const auto t = taylor_bt_table(K, 1.0, mm.c0());
    double st = 0.0;
    for (double p : cert.points())
        if (p > 0.0 && p <= 2.0 / K) st = std::max(st, second_moment(t, p));
    const double factor = st / pts[2].v;
    s += fmt(" | taylor max S on (0,2/K]=%.4g, v(4eps*)=%.4g, factor=%.3g", st, pts[2].v, factor);
    require(o, factor >= 2.0, fmt("factor %.3g < 2 at 4eps*", factor));
    o.detail = (o.pass ? "" : o.detail + " |") + s;
    return o;
}

Outcome c7_split() {
    Outcome o;
    std::string s;
    const auto base = method_table(Method::taylor_bt, 32);
    for (double p : {0.1, 0.3, 0.5}) {
        const auto r = split_estimator_stats(64, 32, p);
        const double vr = r.var_split / r.var_full, br = r.bias_split / r.bias_full;
        const double rbv = table_variance(rao_blackwell_table(base, 32, r.gamma_star), p);
        s += fmt(" p=%.1f var=%.3f bias=%.3f rb/split=%.3f", p, vr, br, rbv / r.var_split);
        require(o, vr >= 0.9 && vr <= 1.1, fmt("variance ratio %.3f at p=%.1f", vr, p));
        require(o, br >= 3.0 && br <= 5.0, fmt("bias ratio %.3f at p=%.1f", br, p));
        require(o, rbv <= r.var_split, fmt("Rao-Blackwell variance above split at p=%.1f", p));
    }
    o.detail = (o.pass ? "" : o.detail + " |") + s;
    return o;
}

GameSpec toy(bool kl) {
    GameSpec s;
    s.traces = {"y1", "y2", "y3", "y4", "y5", "y6"};
    s.answers = {"a", "b", "c"};
    s.parser = {0, 0, 1, 1, 2, 2};
    s.beta = 1.0;
    s.K = 16;
    if (kl) {
        s.pi0 = {0.25, 0.15, 0.2, 0.1, 0.2, 0.1};
        s.geometry = Geometry::kl;
        s.alignment = Alignment::coherence_empirical;
        s.sign = -1;
    } else {
        s.pi0 = {0.3, 0.1, 0.2, 0.15, 0.15, 0.1};
        s.geometry = Geometry::euclid;
        s.alignment = Alignment::diversity_collision;
        s.sign = +1;
    }
    return s;
}

Outcome c8_polynomial() {
    Outcome o;
    const auto spec = toy(false);
    const auto reward = geometry_reward(spec);
    const int seeds = 8;
    const std::vector<int> Ts = {100, 1000, 10000};
    std::vector<double> gap(Ts.size(), 0.0);
    for (int seed = 0; seed < seeds; ++seed) {
        const auto tr = run_mirror_descent(spec, reward, 10000, StepRule{}, seed);
        for (const auto& r : tr.records)
            for (std::size_t i = 0; i < Ts.size(); ++i)
                if (r.t == Ts[i]) gap[i] += r.gap / seeds;
    }
    // least-squares slope of log gap on log T
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < Ts.size(); ++i) mx += std::log(Ts[i]) / 3, my += std::log(gap[i]) / 3;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        sxy += (std::log(Ts[i]) - mx) * (std::log(gap[i]) - my);
        sxx += (std::log(Ts[i]) - mx) * (std::log(Ts[i]) - mx);
    }
    const double slope = sxy / sxx;
    require(o, slope >= -0.65 && slope <= -0.35, fmt("slope %.3f outside [-0.65,-0.35]", slope));
    require(o, gap.back() <= 1e-2, fmt("final gap %.3g", gap.back()));
    const auto det = run_mirror_descent(spec, reward, 2000, StepRule{StepRule::Kind::constant, 0.5}, 0, true);
    require(o, det.final().gap <= 1e-9, fmt("deterministic gap %.3g", det.final().gap));
    const std::string s = fmt(" mean gap over %d seeds: T=1e2 %.3g, 1e3 %.3g, 1e4 %.3g; slope %.3f; deterministic %.3g",
                              seeds, gap[0], gap[1], gap[2], slope, det.final().gap);
    o.detail = (o.pass ? "" : o.detail + " |") + s;
    return o;
}

Outcome c9_kl_ordering() {
    Outcome o;
    const auto spec = toy(true);
    const auto mm = solve_minimax(16);
    const auto plug = plugin_log_table(16, 1.0, 1.0, 3);
    AqpOptions ao;
    ao.certify = false;
    const auto aqp = solve_aqp(16, build_grid(16, kDefaultSolveGrid), 2.0 * mm.epsilon, ao);
    std::vector<double> em, ep;
    int aqp_ok = 0;
    const int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
        const double a = run_game_grpo(spec, mm.table, 2000, 0.1, seed).final().l1_error;
        const double b = run_game_grpo(spec, plug, 2000, 0.1, seed).final().l1_error;
        const double c = run_game_grpo(spec, aqp.table, 2000, 0.1, seed).final().l1_error;
        em.push_back(a);
        ep.push_back(b);
        if (c <= a) ++aqp_ok;
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    };
    const double mmed = median(em), pmed = median(ep), frac = static_cast<double>(aqp_ok) / seeds;
    require(o, mmed < pmed, fmt("median minimax %.4g >= plug-in %.4g", mmed, pmed));
    require(o, frac >= 0.6, fmt("aqp <= minimax in only %.0f%% of seeds", 100 * frac));
    const std::string s = fmt(" median l1: minimax %.4g, plugin_log(alpha=1) %.4g; aqp(2eps*) <= minimax in %d/%d seeds",
                              mmed, pmed, aqp_ok, seeds);
    o.detail = (o.pass ? "" : o.detail + " |") + s;
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome c10_replay() {
    Outcome o;
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "kest_acceptance_replay";
    fs::remove_all(dir);
    fs::create_directories(dir);
    unsetenv("KEST_OUT_DIR");
    std::ostringstream sink, err;
    const auto spec_e = dir / "euclid.json", spec_k = dir / "kl.json";
    std::ofstream(spec_e) << game_spec_to_json(toy(false));
    std::ofstream(spec_k) << game_spec_to_json(toy(true));
    const std::string d = dir.string();
    run_command({"--out-dir", d, "synth", "ustat", "--K", "16", "--degree", "1", "--coeffs", "1", "--sign", "+1"}, sink,
                err);
    run_command({"--out-dir", d, "synth", "closed-form", "--method", "plugin_log", "--K", "16", "--alpha", "1", "--Z",
                 "3"},
                sink, err);
    const std::vector<std::pair<std::vector<std::string>, std::string>> jobs = {
        {{"simulate", "--spec", spec_e.string(), "--table", d + "/ustat_K16_d1.json", "--T", "2000", "--seed", "7"},
         "trace_grpo_seed7"},
        {{"simulate", "--spec", spec_k.string(), "--table", d + "/plugin_log_K16.json", "--T", "500", "--seed", "3",
          "--policy-step", "grpo"},
         "trace_grpo_seed3"},
        {{"simulate", "--spec", spec_e.string(), "--T", "3000", "--seed", "11", "--mode", "mirror"},
         "trace_mirror_seed11"},
    };
    int compared = 0;
    for (const auto& [args, stem] : jobs) {
        std::string first[2];
        for (int rep = 0; rep < 2; ++rep) {
            std::vector<std::string> full = {"--out-dir", d};
            full.insert(full.end(), args.begin(), args.end());
            const int code = run_command(full, sink, err);
            require(o, code == 0, "simulate failed: " + err.str());
            const auto csv = slurp(dir / (stem + ".csv")), json = slurp(dir / (stem + ".json"));
            require(o, !csv.empty() && !json.empty(), "missing output for " + stem);
            if (rep == 0)
                first[0] = csv, first[1] = json;
            else
                require(o, first[0] == csv && first[1] == json, "outputs differ for " + stem);
            fs::remove(dir / (stem + ".csv"));
            fs::remove(dir / (stem + ".json"));
        }
        ++compared;
    }
    fs::remove_all(dir);
    if (o.pass) o.detail = fmt(" %d simulate jobs rerun, CSV and JSON byte-identical", compared);
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        std::string name;
        std::function<Outcome()> run;
        double budget_s;  // wall-clock limit
    };
    const std::vector<Criterion> criteria = {
        {"C1 exact U-statistic unbiasedness", c1_unbiasedness, 5},
        {"C2 minimax 1/K^2 scaling", c2_scaling, 120},
        {"C3 LP vs exchange oracle", c3_oracle, 60},
        {"C4 Taylor uniform failure", c4_taylor, 60},
        {"C5 Laplace smoothing failure", c5_laplace, 30},
        {"C6 AQP frontier", c6_frontier, 180},
        {"C7 split neutrality", c7_split, 30},
        {"C8 polynomial-game convergence", c8_polynomial, 120},
        {"C9 KL-game estimator ordering", c9_kl_ordering, 300},
        {"C10 replay determinism", c10_replay, 30},
    };
    int failed = 0;
    for (const auto& [name, run, budget] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > budget) {
            o.pass = false;
            o.detail = fmt("over the %.0fs budget |", budget) + o.detail;
        }
        std::printf("%s %s [%.1fs]:%s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs,
                    o.detail.empty() || o.detail[0] == ' ' ? "" : " ", o.detail.c_str());
        for (const auto& n : o.notes) std::printf("     note: %s\n", n.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
