#include "kest/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kest/binom.hpp"
#include "kest/errors.hpp"

namespace kest {

namespace {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double entropy(std::span<const double> p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log(x);
    return h;
}

double kl_div(std::span<const double> p, std::span<const double> q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) s += p[i] * (std::log(p[i]) - std::log(q[i]));
    return std::max(s, 0.0);
}

Vec softmax(std::span<const double> logits) {
    const double m = *std::max_element(logits.begin(), logits.end());
    Vec out(logits.size());
    double z = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) z += out[i] = std::exp(logits[i] - m);
    for (double& x : out) x /= z;
    return out;
}

// Phi(nu) for the polynomial geometries.
double phi_value(Geometry g, std::span<const double> nu) {
    double s = 0.0;
    for (double x : nu) s += g == Geometry::euclid ? 0.5 * x * x : x * x * x / 3.0;
    return s;
}

// argmax over the simplex of <nu,u> - beta Phi(nu): sparsemax for euclid,
// square-root water-filling for cubic.
Vec conjugate_argmax(Geometry g, std::span<const double> u, double beta) {
    if (g == Geometry::euclid) {
        Vec v(u.begin(), u.end());
        for (double& x : v) x /= beta;
        return sparsemax_project(v);
    }
    const double umax = *std::max_element(u.begin(), u.end());
    auto mass = [&](double lam) {
        double s = 0.0;
        for (double x : u) s += std::sqrt(std::max(x - lam, 0.0) / beta);
        return s;
    };
    double lo = umax - beta, hi = umax;  // mass(lo) >= 1 >= mass(hi) = 0
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::fabs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass(mid) >= 1.0 ? lo : hi) = mid;
    }
    Vec nu(u.size());
    double tot = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) tot += nu[i] = std::sqrt(std::max(u[i] - lo, 0.0) / beta);
    for (double& x : nu) x /= tot;
    return nu;
}

double conjugate(Geometry g, std::span<const double> u, double beta) {
    const auto nu = conjugate_argmax(g, u, beta);
    return dot(nu, u) - beta * phi_value(g, nu);
}

// Euclidean projection onto {q >= qmin, sum q = 1}.
Vec floor_project(std::span<const double> raw, double qmin) {
    const double n = static_cast<double>(raw.size());
    const double mass = 1.0 - n * qmin;
    Vec shifted(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) shifted[i] = (raw[i] - qmin) / mass;
    auto out = sparsemax_project(shifted);
    for (double& x : out) x = qmin + mass * x;
    return out;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int sample_index(std::span<const double> cdf, std::mt19937_64& rng) {
    const double r = uniform01(rng) * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

std::vector<int> sample_counts(const GameSpec& spec, std::span<const double> pi, std::mt19937_64& rng,
                               std::vector<int>* traces) {
    Vec cdf(pi.size());
    std::partial_sum(pi.begin(), pi.end(), cdf.begin());
    std::vector<int> counts(spec.nZ(), 0);
    if (traces) traces->resize(spec.K);
    for (int i = 0; i < spec.K; ++i) {
        const int y = sample_index(cdf, rng);
        if (traces) (*traces)[i] = y;
        ++counts[spec.parser[y]];
    }
    return counts;
}

double l1(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

}  // namespace

std::string to_string(Geometry g) {
    switch (g) {
        case Geometry::kl: return "kl";
        case Geometry::euclid: return "euclid";
        case Geometry::cubic: return "cubic";
    }
    return "?";
}

std::string to_string(Alignment a) {
    return a == Alignment::coherence_empirical ? "coherence_empirical" : "diversity_collision";
}

Geometry geometry_from_string(const std::string& s) {
    if (s == "kl") return Geometry::kl;
    if (s == "euclid") return Geometry::euclid;
    if (s == "cubic") return Geometry::cubic;
    throw ValidationError("unknown geometry '" + s + "'");
}

Alignment alignment_from_string(const std::string& s) {
    if (s == "coherence_empirical") return Alignment::coherence_empirical;
    if (s == "diversity_collision") return Alignment::diversity_collision;
    throw ValidationError("unknown alignment '" + s + "'");
}

void GameSpec::validate() const {
    if (traces.empty() || answers.empty()) throw ValidationError("game spec: traces and answers must be non-empty");
    if (parser.size() != traces.size()) throw ValidationError("game spec: parser must map every trace");
    if (pi0.size() != traces.size()) throw ValidationError("game spec: pi0 length differs from the trace count");
    std::vector<int> pre(answers.size(), 0);
    for (int z : parser) {
        if (z < 0 || z >= nZ()) throw ValidationError("game spec: parser maps to an unknown answer");
        ++pre[z];
    }
    for (std::size_t z = 0; z < pre.size(); ++z)
        if (pre[z] == 0) throw ValidationError("game spec: answer '" + answers[z] + "' has no preimage");
    double s = 0.0;
    for (double p : pi0) {
        if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("game spec: pi0 must be strictly positive");
        s += p;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw ValidationError("game spec: pi0 must sum to 1");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("game spec: beta must be positive");
    if (K < 1) throw ValidationError("game spec: K must be positive");
    if (geometry == Geometry::kl) {
        if (sign != -1 || alignment != Alignment::coherence_empirical)
            throw ValidationError("game spec: the kl geometry pairs with s = -1 and coherence_empirical");
    } else if (sign != +1 || alignment != Alignment::diversity_collision) {
        throw ValidationError("game spec: polynomial geometries pair with s = +1 and diversity_collision");
    }
}

std::vector<double> answer_marginal(std::span<const double> policy, std::span<const int> parser, int nZ) {
    if (policy.size() != parser.size()) throw ValidationError("answer_marginal: policy and parser sizes differ");
    std::vector<CompensatedSum> acc(nZ);
    for (std::size_t y = 0; y < policy.size(); ++y) acc[parser[y]].add(policy[y]);
    Vec nu(nZ);
    for (int z = 0; z < nZ; ++z) nu[z] = acc[z].value();
    return nu;
}

std::vector<double> sparsemax_project(std::span<const double> v) {
    if (v.empty()) return {};
    for (double x : v)
        if (!std::isfinite(x)) throw DomainError("sparsemax_project: non-finite input");
    Vec s(v.begin(), v.end());
    std::sort(s.begin(), s.end(), std::greater<>());
    double css = 0.0, tau = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        css += s[k];
        const double t = (css - 1.0) / static_cast<double>(k + 1);
        if (s[k] > t) tau = t;
    }
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - tau, 0.0);
    return out;
}

std::vector<double> link(const GameSpec& spec, std::span<const double> q) {
    if (static_cast<int>(q.size()) != spec.nZ()) throw ValidationError("link: q has the wrong length");
    Vec u(q.size());
    for (std::size_t z = 0; z < q.size(); ++z) {
        double g = 0.0;
        switch (spec.geometry) {
            case Geometry::kl:
                if (!(q[z] > 0.0)) throw DomainError("link: the kl geometry needs an interior target");
                g = std::log(q[z]) + 1.0;
                break;
            case Geometry::euclid: g = q[z]; break;
            case Geometry::cubic: g = q[z] * q[z]; break;
        }
        u[z] = spec.sign * spec.beta * g;
    }
    return u;
}

std::vector<double> policy_best_response(const GameSpec& spec, std::span<const double> u) {
    if (static_cast<int>(u.size()) != spec.nZ()) throw ValidationError("policy_best_response: u has the wrong length");
    Vec v(spec.pi0.size());
    if (spec.geometry == Geometry::kl) {
        for (std::size_t y = 0; y < v.size(); ++y) v[y] = std::log(spec.pi0[y]) - u[spec.parser[y]] / spec.beta;
        return softmax(v);
    }
    for (std::size_t y = 0; y < v.size(); ++y) v[y] = spec.pi0[y] - u[spec.parser[y]] / spec.beta;
    return sparsemax_project(v);
}

std::vector<double> optimal_policy(const GameSpec& spec, std::span<const double> q) {
    if (static_cast<int>(q.size()) != spec.nZ()) throw ValidationError("optimal_policy: q has the wrong length");
    if (spec.geometry == Geometry::kl) {
        Vec w(spec.pi0.size());
        double z = 0.0;
        for (std::size_t y = 0; y < w.size(); ++y) {
            const double qz = q[spec.parser[y]];
            if (!(qz > 0.0)) throw DomainError("optimal_policy: kl target vanishes on an answer with reference mass");
            z += w[y] = spec.pi0[y] * qz;
        }
        for (double& x : w) x /= z;
        return w;
    }
    return policy_best_response(spec, link(spec, q));
}

TargetResponse target_best_response(const GameSpec& spec, std::span<const int> counts) {
    if (static_cast<int>(counts.size()) != spec.nZ())
        throw ValidationError("target_best_response: counts has the wrong length");
    long total = 0;
    for (int c : counts) {
        if (c < 0) throw ValidationError("target_best_response: negative count");
        total += c;
    }
    if (total == 0) throw ValidationError("target_best_response: zero total count");
    if (total != spec.K) throw ValidationError("target_best_response: counts must sum to K");
    TargetResponse r;
    r.q.resize(counts.size());
    if (spec.alignment == Alignment::coherence_empirical) {
        Vec raw(counts.size());
        for (std::size_t z = 0; z < raw.size(); ++z) raw[z] = static_cast<double>(counts[z]) / spec.K;
        r.q = floor_project(raw, spec.q_min());
    } else {
        double s = 0.0;
        for (std::size_t z = 0; z < r.q.size(); ++z) s += r.q[z] = 1.0 / (counts[z] + 1.0);
        for (double& x : r.q) x /= s;
    }
    r.u = link(spec, r.q);
    return r;
}

std::vector<double> exact_target(const GameSpec& spec, std::span<const double> policy) {
    auto nu = answer_marginal(policy, spec.parser, spec.nZ());
    if (spec.alignment == Alignment::coherence_empirical) return floor_project(nu, spec.q_min());
    return nu;
}

double duality_gap(const GameSpec& spec, std::span<const double> policy, std::span<const double> u) {
    if (policy.size() != spec.pi0.size()) throw ValidationError("duality_gap: policy has the wrong length");
    if (static_cast<int>(u.size()) != spec.nZ()) throw ValidationError("duality_gap: u has the wrong length");
    const double b = spec.beta;
    if (spec.geometry == Geometry::kl) {
        Vec logits(u.size());
        for (std::size_t z = 0; z < u.size(); ++z) logits[z] = -u[z] / b;
        const auto q = softmax(logits);
        double cross = 0.0, part = 0.0;
        for (std::size_t y = 0; y < policy.size(); ++y) {
            const double lq = std::log(q[spec.parser[y]]);
            if (policy[y] > 0.0) cross += policy[y] * lq;
            part += spec.pi0[y] * q[spec.parser[y]];
        }
        const double value = b * kl_div(policy, spec.pi0) - b * cross;
        const double best = -b * std::log(part);
        return (value - best) + b * kl_div(exact_target(spec, policy), q);
    }
    const auto nu = answer_marginal(policy, spec.parser, spec.nZ());
    double d2 = 0.0;
    for (std::size_t y = 0; y < policy.size(); ++y) d2 += (policy[y] - spec.pi0[y]) * (policy[y] - spec.pi0[y]);
    const double primal = 0.5 * b * d2 + b * phi_value(spec.geometry, nu);
    const auto br = policy_best_response(spec, u);
    const auto nbr = answer_marginal(br, spec.parser, spec.nZ());
    double e2 = 0.0;
    for (std::size_t y = 0; y < br.size(); ++y) e2 += (br[y] - spec.pi0[y]) * (br[y] - spec.pi0[y]);
    const double dual = 0.5 * b * e2 + dot(nbr, u) - conjugate(spec.geometry, u, b);
    return primal - dual;
}

double exploitability(const GameSpec& spec, std::span<const double> policy) {
    return duality_gap(spec, policy, link(spec, exact_target(spec, policy)));
}

Equilibrium reference_equilibrium(const GameSpec& spec, double tol, int max_iter) {
    spec.validate();
    Vec q(spec.nZ(), 1.0 / spec.nZ());
    Equilibrium eq;
    for (int it = 1; it <= max_iter; ++it) {
        const auto t = exact_target(spec, optimal_policy(spec, q));
        double diff = 0.0;
        for (std::size_t z = 0; z < q.size(); ++z) {
            const double nq = 0.5 * q[z] + 0.5 * t[z];
            diff = std::max(diff, std::fabs(nq - q[z]));
            q[z] = nq;
        }
        eq.iterations = it;
        if (diff < tol) break;
        if (it == max_iter) throw SolverError("reference_equilibrium: no fixed point within the iteration cap");
    }
    eq.q = q;
    eq.policy = optimal_policy(spec, q);
    eq.u = link(spec, q);
    eq.nu = answer_marginal(eq.policy, spec.parser, spec.nZ());
    return eq;
}

std::string to_string(PolicyStep s) { return s == PolicyStep::expected ? "expected" : "grpo"; }

PolicyStep policy_step_from_string(const std::string& s) {
    if (s == "expected") return PolicyStep::expected;
    if (s == "grpo") return PolicyStep::grpo;
    throw ValidationError("unknown policy step '" + s + "' (expected|grpo)");
}

namespace {

GameRecord make_record(const GameSpec& spec, int t, Vec policy, Vec q, Vec u, const Vec& ref_nu, double gap) {
    GameRecord r;
    r.t = t;
    r.entropy = entropy(policy);
    r.l1_error = l1(answer_marginal(policy, spec.parser, spec.nZ()), ref_nu);
    r.gap = gap;
    r.policy = std::move(policy);
    r.q = std::move(q);
    r.u = std::move(u);
    return r;
}

}  // namespace

GameTrace run_game_grpo(const GameSpec& spec, const EstimatorTable& table, int T, double lr, std::uint64_t seed,
                        PolicyStep step) {
    spec.validate();
    if (table.K() != spec.K) throw ValidationError("run_game_grpo: table K differs from the game's K");
    if (!(lr > 0.0) || !std::isfinite(lr)) throw ValidationError("run_game_grpo: lr must be positive");
    if (T < 0) throw ValidationError("run_game_grpo: T must be non-negative");

    const int nY = spec.nY(), nZ = spec.nZ(), K = spec.K;
    const double b = spec.beta;
    const bool kl = spec.geometry == Geometry::kl;
    GameTrace tr;
    tr.mode = "grpo/" + to_string(step);
    tr.seed = seed;
    tr.reference_nu = reference_equilibrium(spec).nu;

    std::mt19937_64 rng(seed);
    Vec pi = spec.pi0;
    Vec logpi0(nY), logpi(nY);
    for (int y = 0; y < nY; ++y) logpi[y] = logpi0[y] = std::log(spec.pi0[y]);
    Vec q(nZ, 1.0 / nZ);
    Vec u = link(spec, q);
    tr.records.push_back(make_record(spec, 0, pi, q, u, tr.reference_nu, exploitability(spec, pi)));

    std::vector<int> ys;
    double g2 = 0.0;
    for (int t = 1; t <= T; ++t) {
        const auto nu = answer_marginal(pi, spec.parser, nZ);
        for (int z = 0; z < nZ; ++z) tr.max_weight_ratio = std::max(tr.max_weight_ratio, nu[z] / q[z]);

        const auto counts = sample_counts(spec, pi, rng, &ys);
        Vec R(K), A(K);
        for (int i = 0; i < K; ++i) R[i] = table[counts[spec.parser[ys[i]]]];
        const double mean = std::accumulate(R.begin(), R.end(), 0.0) / K;
        double var = 0.0;
        for (double r : R) var += (r - mean) * (r - mean);
        const double sd = std::sqrt(var / K);
        for (int i = 0; i < K; ++i) A[i] = (R[i] - mean) / (sd + 1e-8);

        Vec g(nY);  // ascent direction in the step's own coordinates
        if (step == PolicyStep::expected) {
            for (int y = 0; y < nY; ++y) {
                const double adv = table[counts[spec.parser[y]]] - mean;
                g[y] = kl ? adv - b * (logpi[y] - logpi0[y]) : adv - b * (pi[y] - spec.pi0[y]);
            }
        } else {
            Vec hit(nY, 0.0);
            double asum = 0.0;
            for (int i = 0; i < K; ++i) {
                hit[ys[i]] += A[i] / K;
                asum += A[i] / K;
            }
            if (kl) {
                double klv = 0.0;
                for (int y = 0; y < nY; ++y) klv += pi[y] * (logpi[y] - logpi0[y]);
                for (int y = 0; y < nY; ++y)
                    g[y] = hit[y] - pi[y] * asum - b * pi[y] * (logpi[y] - logpi0[y] - klv);
            } else {
                for (int y = 0; y < nY; ++y) g[y] = hit[y] - b * (pi[y] - spec.pi0[y]);
            }
        }
        g2 += dot(g, g);

        if (kl) {
            for (int y = 0; y < nY; ++y) logpi[y] += lr * g[y];
            pi = softmax(logpi);
            for (int y = 0; y < nY; ++y) logpi[y] = std::log(pi[y]);
        } else {
            Vec v(nY);
            for (int y = 0; y < nY; ++y) v[y] = pi[y] + lr * g[y];
            pi = sparsemax_project(v);
        }

        auto target = target_best_response(spec, counts);
        q = target.q;
        u = target.u;
        auto rec = make_record(spec, t, pi, q, u, tr.reference_nu, exploitability(spec, pi));
        rec.counts = counts;
        rec.rewards = std::move(R);
        rec.advantages = std::move(A);
        tr.records.push_back(std::move(rec));
    }
    if (T > 0) tr.grad_second_moment = g2 / T;
    return tr;
}

double StepRule::operator()(int t) const {
    switch (kind) {
        case Kind::constant: return eta0;
        case Kind::inv_sqrt: return eta0 / std::sqrt(static_cast<double>(t));
        case Kind::inv_t: return eta0 / t;
    }
    return eta0;
}

void StepRule::validate() const {
    if (!(eta0 > 0.0) || !std::isfinite(eta0)) throw ValidationError("step rule: eta0 must be positive and finite");
}

StepRule step_rule_from_string(const std::string& s, double eta0) {
    StepRule r;
    r.eta0 = eta0;
    if (s == "constant")
        r.kind = StepRule::Kind::constant;
    else if (s == "inv_sqrt")
        r.kind = StepRule::Kind::inv_sqrt;
    else if (s == "inv_t")
        r.kind = StepRule::Kind::inv_t;
    else
        throw ValidationError("unknown step rule '" + s + "' (constant|inv_sqrt|inv_t)");
    r.validate();
    return r;
}

std::string to_string(const StepRule& r) {
    switch (r.kind) {
        case StepRule::Kind::constant: return "constant";
        case StepRule::Kind::inv_sqrt: return "inv_sqrt";
        case StepRule::Kind::inv_t: return "inv_t";
    }
    return "?";
}

PolynomialReward geometry_reward(const GameSpec& spec) {
    switch (spec.geometry) {
        case Geometry::euclid: return PolynomialReward({1.0}, GameSign::diversity, spec.beta);
        case Geometry::cubic: return PolynomialReward({0.0, 1.0}, GameSign::diversity, spec.beta);
        default: throw ValidationError("geometry_reward: the kl geometry has no polynomial reward");
    }
}

GameTrace run_mirror_descent(const GameSpec& spec, const PolynomialReward& reward, int T, const StepRule& rule,
                             std::uint64_t seed, bool deterministic) {
    spec.validate();
    if (!spec.polynomial()) throw ValidationError("run_mirror_descent: needs a polynomial geometry");
    rule.validate();
    if (T < 0) throw ValidationError("run_mirror_descent: T must be non-negative");
    if (reward.degree() > spec.K) throw ValidationError("run_mirror_descent: reward degree exceeds K");
    if (reward.sign != GameSign::diversity || std::fabs(reward.beta - spec.beta) > 1e-15)
        throw ValidationError("run_mirror_descent: reward sign/beta disagree with the game");
    const auto expect = geometry_reward(spec);
    for (double x : {0.1, 0.37, 0.8})
        if (std::fabs(expect.link(x) - reward.link(x)) > 1e-12)
            throw ValidationError("run_mirror_descent: reward polynomial does not match the geometry");

    const int nY = spec.nY(), nZ = spec.nZ();
    const double b = spec.beta;
    const auto table = u_statistic_table(reward, spec.K);
    const double shift = reward.shift_value();

    GameTrace tr;
    tr.mode = deterministic ? "mirror/deterministic" : "mirror/" + to_string(rule);
    tr.seed = seed;
    tr.reference_nu = reference_equilibrium(spec).nu;

    std::mt19937_64 rng(seed);
    Vec pi = spec.pi0;
    Vec u = link(spec, Vec(nZ, 1.0 / nZ));
    Vec spi(nY, 0.0), su(nZ, 0.0);
    auto qof = [&](const Vec& uu) { return conjugate_argmax(spec.geometry, uu, b); };
    tr.records.push_back(make_record(spec, 0, pi, qof(u), u, tr.reference_nu, duality_gap(spec, pi, u)));

    auto on_schedule = [T](int t) {
        if (t == T) return true;
        long m = 1;
        while (m <= t) {
            if (t == m || t == 2 * m || t == 5 * m) return true;
            m *= 10;
        }
        return false;
    };

    double g2 = 0.0;
    for (int t = 1; t <= T; ++t) {
        for (int y = 0; y < nY; ++y) spi[y] += pi[y];
        for (int z = 0; z < nZ; ++z) su[z] += u[z];
        const double eta = rule(t);

        Vec uhat(nZ), nuhat(nZ);
        if (deterministic) {
            nuhat = answer_marginal(pi, spec.parser, nZ);
            uhat = link(spec, nuhat);
        } else {
            const auto counts = sample_counts(spec, pi, rng, nullptr);
            for (int z = 0; z < nZ; ++z) {
                uhat[z] = shift - table[counts[z]];
                nuhat[z] = static_cast<double>(counts[z]) / spec.K;
            }
        }

        // the deterministic variant reports the iterate entering step t
        if (deterministic && on_schedule(t)) {
            auto q = qof(u);
            tr.records.push_back(make_record(spec, t, pi, std::move(q), u, tr.reference_nu, duality_gap(spec, pi, u)));
        }

        Vec v(nY);
        for (int y = 0; y < nY; ++y) {
            const double gy = b * (pi[y] - spec.pi0[y]) + uhat[spec.parser[y]];
            g2 += gy * gy;
            v[y] = pi[y] - eta * gy;
        }
        const auto grad_star = qof(u);
        pi = sparsemax_project(v);
        for (int z = 0; z < nZ; ++z) u[z] += eta * (nuhat[z] - grad_star[z]);

        if (!deterministic && on_schedule(t)) {
            Vec ap(nY), au(nZ);
            for (int y = 0; y < nY; ++y) ap[y] = spi[y] / t;
            for (int z = 0; z < nZ; ++z) au[z] = su[z] / t;
            const double gap = duality_gap(spec, ap, au);
            auto q = qof(au);
            tr.records.push_back(make_record(spec, t, std::move(ap), std::move(q), std::move(au), tr.reference_nu, gap));
        }
    }
    if (T > 0) tr.grad_second_moment = g2 / T;
    return tr;
}

}  // namespace kest
