#include "kest/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "kest/analysis.hpp"
#include "kest/aqp.hpp"
#include "kest/binom.hpp"
#include "kest/errors.hpp"
#include "kest/estimators.hpp"
#include "kest/game.hpp"
#include "kest/grid.hpp"
#include "kest/minimax.hpp"

namespace kest {

namespace fs = std::filesystem;

namespace {

std::string g(double x, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
    if (!os) throw std::runtime_error("write failed for " + path.string());
}

// Every CSV starts with the job configuration as a '#'-prefixed JSON line.
std::string with_header(const Json& config, const std::string& csv) { return "# " + config.dump() + "\n" + csv; }

EstimatorTable scaled(const EstimatorTable& t, double beta, Json extra = Json::object()) {
    std::vector<double> c(t.coeffs().begin(), t.coeffs().end());
    for (double& x : c) x *= beta / t.beta();
    Json meta = t.meta();
    for (auto& [k, v] : extra.items()) meta[k] = v;
    return EstimatorTable(t.K(), beta, t.method(), std::move(c), std::move(meta));
}

// "auto" = eps*·2^{0..6}; "mult:a,b" = multiples of eps*; otherwise absolute values.
std::vector<double> parse_eps_grid(const std::string& spec, int K, int M, bool* relative) {
    auto split_doubles = [](const std::string& s) {
        std::vector<double> v;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            std::size_t pos = 0;
            double x = 0.0;
            try {
                x = std::stod(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || !std::isfinite(x) || x <= 0.0)
                throw ValidationError("bad epsilon value '" + tok + "'");
            v.push_back(x);
        }
        if (v.empty()) throw ValidationError("empty epsilon list");
        return v;
    };
    std::vector<double> mult;
    if (spec == "auto") {
        for (int i = 0; i <= 6; ++i) mult.push_back(std::ldexp(1.0, i));
    } else if (spec.rfind("mult:", 0) == 0) {
        mult = split_doubles(spec.substr(5));
    } else {
        *relative = false;
        return split_doubles(spec);
    }
    *relative = true;
    MinimaxOptions mo;
    mo.certify = false;
    const double eps_star = solve_minimax(K, M, mo).epsilon;
    for (double& m : mult) m *= eps_star;
    return mult;
}

struct Ctx {
    std::ostream& out;
    std::ostream& err;
    fs::path out_dir;
    bool verbose = false;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"kest: small-sample reward estimators and alignment-game simulations", "kest"};
    app.require_subcommand(1);
    std::string out_dir_flag;
    bool verbose = false;
    app.add_option("--out-dir", out_dir_flag, "output directory (KEST_OUT_DIR takes precedence)");
    app.add_flag("--verbose,-v", verbose, "print details");

    // synth
    auto* synth = app.add_subcommand("synth", "synthesise an estimator table");
    synth->require_subcommand(1);

    int mm_K = 0, mm_M = kDefaultSolveGrid;
    double mm_beta = 1.0;
    auto* s_mm = synth->add_subcommand("minimax", "minimax bias table");
    s_mm->add_option("--K", mm_K, "group size")->required()->check(CLI::Range(1, 4096));
    s_mm->add_option("--M", mm_M, "solve grid size")->check(CLI::Range(8, 1 << 20));
    s_mm->add_option("--beta", mm_beta, "reward scale")->check(CLI::PositiveNumber);

    int aq_K = 0, aq_M = kDefaultSolveGrid;
    std::string aq_eps;
    auto* s_aq = synth->add_subcommand("aqp", "variance-optimal table(s) under a bias budget");
    s_aq->add_option("--K", aq_K, "group size")->required()->check(CLI::Range(1, 4096));
    s_aq->add_option("--epsilon", aq_eps, "value, list a,b,..., 'auto' or 'mult:a,b'")->required();
    s_aq->add_option("--M", aq_M, "bias grid size")->check(CLI::Range(8, 1 << 20));

    int us_K = 0, us_deg = 0, us_sign = 0;
    double us_beta = 1.0;
    std::vector<double> us_coeffs;
    auto* s_us = synth->add_subcommand("ustat", "U-statistic table of a polynomial reward");
    s_us->add_option("--K", us_K, "group size")->required()->check(CLI::Range(1, 4096));
    s_us->add_option("--degree", us_deg, "polynomial degree")->required()->check(CLI::Range(1, 4096));
    s_us->add_option("--coeffs", us_coeffs, "c_1,...,c_d")->required()->delimiter(',');
    s_us->add_option("--sign", us_sign, "+1 (diversity) or -1 (coherence)")->required()->check(CLI::IsMember({-1, 1}));
    s_us->add_option("--beta", us_beta, "reward scale")->check(CLI::PositiveNumber);

    std::string cf_method, cf_c0 = "minimax";
    int cf_K = 0, cf_Z = 2;
    double cf_beta = 1.0, cf_alpha = 0.5;
    bool cf_clamp = false;
    auto* s_cf = synth->add_subcommand("closed-form", "plugin_log or taylor_bt table");
    s_cf->add_option("--method", cf_method, "plugin_log|taylor_bt")
        ->required()
        ->check(CLI::IsMember({"plugin_log", "taylor_bt"}));
    s_cf->add_option("--K", cf_K, "group size")->required()->check(CLI::Range(1, 4096));
    s_cf->add_option("--beta", cf_beta, "reward scale")->check(CLI::PositiveNumber);
    s_cf->add_option("--alpha", cf_alpha, "plugin_log smoothing")->check(CLI::NonNegativeNumber);
    s_cf->add_option("--Z", cf_Z, "answer-space size for plugin_log")->check(CLI::Range(1, 1 << 20));
    s_cf->add_flag("--clamp", cf_clamp, "plugin_log with alpha=0: set c_0 := c_1");
    s_cf->add_option("--c0", cf_c0, "taylor_bt boundary value: minimax|fallback|<number>");

    // profile
    std::string pr_table;
    int pr_M = kDefaultSolveGrid;
    auto* s_pr = app.add_subcommand("profile", "bias and second-moment profile of a table");
    s_pr->add_option("--table", pr_table, "table file")->required()->check(CLI::ExistingFile);
    s_pr->add_option("--grid", pr_M, "grid size")->check(CLI::Range(8, 1 << 22));

    // pareto
    int pa_K = 0, pa_M = kDefaultSolveGrid;
    std::string pa_eps = "auto";
    auto* s_pa = app.add_subcommand("pareto", "bias-variance frontier");
    s_pa->add_option("--K", pa_K, "group size")->required()->check(CLI::Range(1, 4096));
    s_pa->add_option("--eps-grid", pa_eps, "'auto', 'mult:a,b' or absolute a,b")->required();
    s_pa->add_option("--M", pa_M, "bias grid size")->check(CLI::Range(8, 1 << 20));

    // study
    auto* study = app.add_subcommand("study", "batch studies");
    study->require_subcommand(1);
    std::vector<int> sc_Ks;
    int sc_M = kDefaultSolveGrid;
    bool sc_nocert = false;
    auto* s_sc = study->add_subcommand("scaling", "minimax epsilon versus K");
    s_sc->add_option("--Ks", sc_Ks, "list of K (may be empty)")->delimiter(',')->check(CLI::Range(1, 4096));
    s_sc->add_option("--M", sc_M, "solve grid size")->check(CLI::Range(8, 1 << 20));
    s_sc->add_flag("--no-certify", sc_nocert, "skip dense certification");

    int sp_K = 0, sp_K1 = 0;
    std::vector<double> sp_p;
    std::string sp_gamma = "optimal", sp_method = "taylor_bt", sp_c0 = "minimax";
    auto* s_sp = study->add_subcommand("split", "sample-splitting statistics");
    s_sp->add_option("--K", sp_K, "total sample size")->required()->check(CLI::Range(2, 4096));
    s_sp->add_option("--K1", sp_K1, "first split size")->required()->check(CLI::Range(1, 4095));
    s_sp->add_option("--p", sp_p, "probabilities")->required()->delimiter(',');
    s_sp->add_option("--gamma", sp_gamma, "'optimal' or a number");
    s_sp->add_option("--method", sp_method, "base method")
        ->check(CLI::IsMember({"taylor_bt", "plugin_log", "euclid", "quadratic", "minimax"}));
    s_sp->add_option("--c0", sp_c0, "taylor_bt c0 rule: minimax|fallback")->check(CLI::IsMember({"minimax", "fallback"}));

    std::vector<int> ta_Ks;
    std::string ta_c0 = "minimax";
    int ta_M = 4096;
    auto* s_ta = study->add_subcommand("taylor", "uniform failure of the Taylor correction");
    s_ta->add_option("--Ks", ta_Ks, "list of K")->required()->delimiter(',')->check(CLI::Range(1, 4096));
    s_ta->add_option("--c0", ta_c0, "minimax|fallback")->check(CLI::IsMember({"minimax", "fallback"}));
    s_ta->add_option("--M", ta_M, "grid size")->check(CLI::Range(8, 1 << 20));

    // simulate
    std::string si_spec, si_table, si_mode = "grpo", si_step = "expected", si_rule = "inv_sqrt";
    int si_T = 0;
    std::uint64_t si_seed = 0;
    double si_lr = 0.1, si_eta0 = 0.5;
    bool si_det = false;
    auto* s_si = app.add_subcommand("simulate", "run the alignment game");
    s_si->add_option("--spec", si_spec, "game spec file")->required()->check(CLI::ExistingFile);
    auto* o_table = s_si->add_option("--table", si_table, "estimator table file")->check(CLI::ExistingFile);
    s_si->add_option("--T", si_T, "iterations")->required()->check(CLI::Range(0, 100000000));
    auto* o_seed = s_si->add_option("--seed", si_seed, "RNG seed (default: the spec's)");
    s_si->add_option("--mode", si_mode, "grpo|mirror")->check(CLI::IsMember({"grpo", "mirror"}));
    s_si->add_option("--lr", si_lr, "grpo step size")->check(CLI::PositiveNumber);
    s_si->add_option("--policy-step", si_step, "expected|grpo")->check(CLI::IsMember({"expected", "grpo"}));
    s_si->add_option("--step-rule", si_rule, "constant|inv_sqrt|inv_t")
        ->check(CLI::IsMember({"constant", "inv_sqrt", "inv_t"}));
    s_si->add_option("--eta0", si_eta0, "mirror step scale")->check(CLI::PositiveNumber);
    s_si->add_flag("--deterministic", si_det, "mirror mode with exact marginals");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "kest: " << msg << "\n";
        return kExitUsage;
    }

    Ctx ctx{out, err, ".", verbose};
    if (const char* env = std::getenv("KEST_OUT_DIR"); env && *env)
        ctx.out_dir = env;
    else if (!out_dir_flag.empty())
        ctx.out_dir = out_dir_flag;

    try {
        if (*s_mm) {
            MinimaxOptions opt;
            opt.certify_solve_M = mm_M;
            const auto r = solve_minimax(mm_K, mm_M, opt);
            Json cfg = {{"command", "synth minimax"}, {"K", mm_K}, {"M", mm_M}, {"beta", mm_beta}};
            const auto table = scaled(r.table, mm_beta, {{"job", cfg}});
            const auto tpath = ctx.out_dir / ("minimax_K" + std::to_string(mm_K) + ".json");
            save_table(table, tpath);
            std::ostringstream rep;
            rep << "K,beta,epsilon,epsilon_certified,certified,representable,rounding_bound,alternations,iterations\n"
                << mm_K << ',' << g(mm_beta, 17) << ',' << g(r.epsilon, 17) << ',' << g(r.epsilon_certified, 17) << ','
                << r.certified << ',' << r.representable << ',' << g(r.rounding_bound, 17) << ',' << r.alternations
                << ',' << r.iterations << '\n';
            const auto rpath = ctx.out_dir / ("minimax_K" + std::to_string(mm_K) + "_report.csv");
            write_file(rpath, with_header(cfg, rep.str()));
            out << "minimax K=" << mm_K << " eps=" << g(r.epsilon) << " certified=" << (r.certified ? "yes" : "no")
                << " -> " << tpath.string() << "\n";
            if (ctx.verbose)
                out << "  eps_cert=" << g(r.epsilon_certified) << " rounding=" << g(r.rounding_bound)
                    << " alternations=" << r.alternations << " iterations=" << r.iterations << "\n";
            return r.certified ? 0 : kExitUncertified;
        }
        if (*s_aq || *s_pa) {
            const bool is_pareto = static_cast<bool>(*s_pa);
            const int K = is_pareto ? pa_K : aq_K;
            const int M = is_pareto ? pa_M : aq_M;
            const std::string eps_spec = is_pareto ? pa_eps : aq_eps;
            bool relative = false;
            const auto eps = parse_eps_grid(eps_spec, K, M, &relative);
            Json cfg = {{"command", is_pareto ? "pareto" : "synth aqp"}, {"K", K}, {"M", M}, {"epsilon", eps_spec}};
            const auto grid = build_grid(K, M);
            const auto pts = pareto_trace(K, grid, eps);
            bool all_cert = true;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                all_cert = all_cert && pts[i].certified;
                if (!is_pareto) {
                    const auto name = "aqp_K" + std::to_string(K) + (pts.size() > 1 ? "_" + std::to_string(i) : "") + ".json";
                    save_table(pts[i].table.with_meta("job", cfg), ctx.out_dir / name);
                }
                if (ctx.verbose)
                    out << "  eps=" << g(pts[i].epsilon) << " v=" << g(pts[i].v)
                        << " status=" << pts[i].table.meta().value("status", "") << " certified=" << pts[i].certified
                        << "\n";
            }
            const auto path = ctx.out_dir / ((is_pareto ? "pareto_K" : "aqp_K") + std::to_string(K) + "_frontier.csv");
            write_file(path, with_header(cfg, pareto_csv(pts)));
            out << (is_pareto ? "pareto" : "aqp") << " K=" << K << " points=" << pts.size()
                << " v=[" << g(pts.front().v) << " .. " << g(pts.back().v) << "] certified=" << (all_cert ? "yes" : "no")
                << " -> " << path.string() << "\n";
            return all_cert ? 0 : kExitUncertified;
        }
        if (*s_us) {
            if (static_cast<int>(us_coeffs.size()) != us_deg)
                throw ValidationError("--coeffs must list exactly --degree values");
            const PolynomialReward rw(us_coeffs, us_sign > 0 ? GameSign::diversity : GameSign::coherence, us_beta);
            Json cfg = {{"command", "synth ustat"}, {"K", us_K}, {"degree", us_deg}, {"coeffs", us_coeffs},
                        {"sign", us_sign}, {"beta", us_beta}};
            const auto t = u_statistic_table(rw, us_K).with_meta("job", cfg);
            const auto path = ctx.out_dir / ("ustat_K" + std::to_string(us_K) + "_d" + std::to_string(us_deg) + ".json");
            save_table(t, path);
            out << "ustat K=" << us_K << " degree=" << us_deg << " c_0=" << g(t[0]) << " c_K=" << g(t[us_K]) << " -> "
                << path.string() << "\n";
            return 0;
        }
        if (*s_cf) {
            Json cfg = {{"command", "synth closed-form"}, {"method", cf_method}, {"K", cf_K}, {"beta", cf_beta}};
            EstimatorTable t = [&] {
                if (cf_method == "plugin_log") {
                    cfg["alpha"] = cf_alpha;
                    cfg["Z"] = cf_Z;
                    cfg["clamp"] = cf_clamp;
                    return plugin_log_table(cf_K, cf_beta, cf_alpha, cf_Z, cf_clamp);
                }
                double c0 = 0.0;
                if (cf_c0 == "minimax")
                    c0 = minimax_c0(cf_K);
                else if (cf_c0 == "fallback")
                    c0 = taylor_c0_fallback(cf_K);
                else {
                    std::size_t pos = 0;
                    try {
                        c0 = std::stod(cf_c0, &pos);
                    } catch (const std::exception&) {
                        pos = 0;
                    }
                    if (pos != cf_c0.size()) throw ValidationError("--c0 must be minimax, fallback or a number");
                }
                cfg["c0"] = cf_c0;
                return taylor_bt_table(cf_K, cf_beta, c0);
            }();
            t = t.with_meta("job", cfg);
            const auto path = ctx.out_dir / (cf_method + "_K" + std::to_string(cf_K) + ".json");
            save_table(t, path);
            out << cf_method << " K=" << cf_K << " c_0=" << g(t[0]) << " -> " << path.string() << "\n";
            return 0;
        }
        if (*s_pr) {
            const auto t = load_table(pr_table);
            const auto prof = bias_profile(t, build_grid(t.K(), pr_M));
            std::ostringstream csv;
            csv << "p,weighted_bias,second_moment\n";
            for (std::size_t i = 0; i < prof.grid.size(); ++i)
                csv << g(prof.grid[i], 17) << ',' << g(prof.weighted_bias[i], 17) << ','
                    << g(prof.second_moment[i], 17) << '\n';
            Json cfg = {{"command", "profile"}, {"table", pr_table}, {"grid", pr_M}};
            const auto path = ctx.out_dir / (fs::path(pr_table).stem().string() + "_profile.csv");
            write_file(path, with_header(cfg, csv.str()));
            out << "profile K=" << t.K() << " sup_bias=" << g(prof.sup_bias, 10) << " at p="
                << g(prof.grid[prof.argmax_bias]) << " max_S=" << g(prof.sup_second_moment) << " -> " << path.string()
                << "\n";
            return 0;
        }
        if (*s_sc) {
            const auto rows = scaling_study(sc_Ks, sc_M, !sc_nocert);
            Json cfg = {{"command", "study scaling"}, {"Ks", sc_Ks}, {"M", sc_M}, {"certify", !sc_nocert}};
            const auto path = ctx.out_dir / "scaling.csv";
            write_file(path, with_header(cfg, scaling_csv(rows)));
            bool ok = true;
            for (const auto& r : rows)
                if (!sc_nocert && r.epsilon_certified > 1.05 * r.epsilon) ok = false;
            out << "scaling Ks=" << rows.size();
            if (!rows.empty()) out << " eps[last]=" << g(rows.back().epsilon);
            out << " -> " << path.string() << "\n";
            return ok ? 0 : kExitUncertified;
        }
        if (*s_sp) {
            if (sp_K1 >= sp_K) throw ValidationError("--K1 must be smaller than --K");
            std::optional<double> gamma;
            if (sp_gamma != "optimal") {
                std::size_t pos = 0;
                try {
                    gamma = std::stod(sp_gamma, &pos);
                } catch (const std::exception&) {
                    pos = 0;
                }
                if (pos != sp_gamma.size()) throw ValidationError("--gamma must be 'optimal' or a number");
            }
            const auto rule = c0_rule_from_string(sp_c0);
            const auto m = method_from_string(sp_method);
            const auto base = method_table(m, sp_K1, 1.0, rule);
            const auto full = method_table(m, sp_K, 1.0, rule);
            std::vector<SplitReport> rows;
            for (double p : sp_p) rows.push_back(split_estimator_stats(base, full, p, gamma));
            Json cfg = {{"command", "study split"}, {"K", sp_K},         {"K1", sp_K1}, {"p", sp_p},
                        {"gamma", sp_gamma},        {"method", sp_method}, {"c0", sp_c0}};
            const auto path = ctx.out_dir / ("split_K" + std::to_string(sp_K) + "_K1_" + std::to_string(sp_K1) + ".csv");
            write_file(path, with_header(cfg, split_csv(rows)));
            out << "split K=" << sp_K << " K1=" << sp_K1 << " rows=" << rows.size()
                << " var_ratio[0]=" << g(rows[0].var_split / rows[0].var_full) << " -> " << path.string() << "\n";
            return 0;
        }
        if (*s_ta) {
            std::vector<int> Ks = ta_Ks;
            if (!std::is_sorted(Ks.begin(), Ks.end())) throw ValidationError("--Ks must be sorted");
            const auto rows = taylor_uniform_failure(Ks, c0_rule_from_string(ta_c0), ta_M);
            Json cfg = {{"command", "study taylor"}, {"Ks", Ks}, {"c0", ta_c0}, {"M", ta_M}};
            const auto path = ctx.out_dir / "taylor_failure.csv";
            write_file(path, with_header(cfg, taylor_failure_csv(rows)));
            out << "taylor Ks=" << rows.size() << " sup_bias*K=[" << g(rows.front().sup_bias_K) << " .. "
                << g(rows.back().sup_bias_K) << "] -> " << path.string() << "\n";
            return 0;
        }
        if (*s_si) {
            const auto spec = load_game_spec(si_spec);
            const std::uint64_t seed = o_seed->count() ? si_seed : spec.seed;
            Json cfg = {{"command", "simulate"}, {"spec", si_spec}, {"table", si_table}, {"T", si_T},
                        {"seed", seed},          {"mode", si_mode}};
            GameTrace tr;
            if (si_mode == "grpo") {
                if (!o_table->count()) throw ValidationError("--table is required in grpo mode");
                cfg["lr"] = si_lr;
                cfg["policy_step"] = si_step;
                tr = run_game_grpo(spec, load_table(si_table), si_T, si_lr, seed, policy_step_from_string(si_step));
            } else {
                const auto reward = geometry_reward(spec);
                if (o_table->count()) {
                    const auto t = load_table(si_table);
                    const auto ref = u_statistic_table(reward, spec.K);
                    bool same = t.K() == ref.K();
                    for (int k = 0; same && k <= ref.K(); ++k) same = std::fabs(t[k] - ref[k]) <= 1e-12;
                    if (!same) throw ValidationError("mirror mode: table is not the geometry's U-statistic table");
                }
                const auto rule = step_rule_from_string(si_rule, si_eta0);
                cfg["step_rule"] = si_rule;
                cfg["eta0"] = si_eta0;
                cfg["deterministic"] = si_det;
                tr = run_mirror_descent(spec, reward, si_T, rule, seed, si_det);
            }
            const auto stem = "trace_" + si_mode + "_seed" + std::to_string(seed);
            const auto cpath = ctx.out_dir / (stem + ".csv");
            write_file(cpath, with_header(cfg, trace_csv(tr)));
            Json side = Json::parse(trace_json(tr, spec));
            side["job"] = cfg;
            write_file(ctx.out_dir / (stem + ".json"), side.dump(2) + "\n");
            out << "simulate " << tr.mode << " T=" << si_T << " seed=" << seed << " gap=" << g(tr.final().gap)
                << " l1=" << g(tr.final().l1_error) << " -> " << cpath.string() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "kest: error: " << msg << "\n";
        return kExitError;
    }
    err << "kest: no command\n";
    return kExitUsage;
}

}  // namespace kest
