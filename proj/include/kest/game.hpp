#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kest/estimators.hpp"
#include "kest/table.hpp"

namespace kest {

enum class Geometry { kl, euclid, cubic };
enum class Alignment { coherence_empirical, diversity_collision };

std::string to_string(Geometry g);
std::string to_string(Alignment a);
Geometry geometry_from_string(const std::string& s);
Alignment alignment_from_string(const std::string& s);

// One prompt, finite traces Y and answers Z, parser E: Y -> Z.
struct GameSpec {
    std::vector<std::string> traces;
    std::vector<std::string> answers;
    std::vector<int> parser;  // answer index of each trace
    std::vector<double> pi0;
    double beta = 1.0;
    Geometry geometry = Geometry::kl;
    Alignment alignment = Alignment::coherence_empirical;
    int sign = -1;
    int K = 16;
    std::uint64_t seed = 0;

    int nY() const { return static_cast<int>(traces.size()); }
    int nZ() const { return static_cast<int>(answers.size()); }
    double q_min() const { return 1.0 / (2.0 * K * nZ()); }
    bool polynomial() const { return geometry != Geometry::kl; }
    void validate() const;
};

GameSpec game_spec_from_json(const std::string& text, const std::string& origin = "<string>");
std::string game_spec_to_json(const GameSpec& spec);
GameSpec load_game_spec(const std::filesystem::path& path);

std::vector<double> answer_marginal(std::span<const double> policy, std::span<const int> parser, int nZ);

// Euclidean projection onto the probability simplex.
std::vector<double> sparsemax_project(std::span<const double> v);

// Closed-form policy best response to a target q (kl: pi0 * q(E), normalised; euclid/cubic: sparsemax).
std::vector<double> optimal_policy(const GameSpec& spec, std::span<const double> q);
// Same, against an arbitrary dual vector u.
std::vector<double> policy_best_response(const GameSpec& spec, std::span<const double> u);

// u = s * beta * grad Phi(q).
std::vector<double> link(const GameSpec& spec, std::span<const double> q);

struct TargetResponse {
    std::vector<double> q;
    std::vector<double> u;
};

// Sample-based target step from answer counts of one group.
TargetResponse target_best_response(const GameSpec& spec, std::span<const int> counts);

// Exact target response to a policy: floored marginal (coherence) or the marginal itself (diversity).
std::vector<double> exact_target(const GameSpec& spec, std::span<const double> policy);

// max_u L(pi,u) - min_pi L(pi,u) for the polynomial games; for the KL coherence game the
// policy exploitability plus beta*KL(q*(pi) || q), q = softmax(-u/beta). Shift-invariant in u.
double duality_gap(const GameSpec& spec, std::span<const double> policy, std::span<const double> u);
// Gap against the exact dual best response of the policy.
double exploitability(const GameSpec& spec, std::span<const double> policy);

struct Equilibrium {
    std::vector<double> policy;
    std::vector<double> q;
    std::vector<double> u;
    std::vector<double> nu;
    int iterations = 0;
};

// Damped alternating exact best responses (damping 0.5) to a fixed point.
Equilibrium reference_equilibrium(const GameSpec& spec, double tol = 1e-12, int max_iter = 1000000);

struct GameRecord {
    int t = 0;
    std::vector<double> policy;
    std::vector<double> q;
    std::vector<double> u;
    std::vector<int> counts;
    std::vector<double> rewards;     // per sampled trace
    std::vector<double> advantages;  // standardised, per sampled trace
    double gap = 0.0;
    double entropy = 0.0;
    double l1_error = 0.0;  // ||nu_pi - nu_ref||_1
};

struct GameTrace {
    std::string mode;
    std::uint64_t seed = 0;
    std::vector<GameRecord> records;  // append-only
    std::vector<double> reference_nu;
    double max_weight_ratio = 0.0;    // max over t, z of nu_pi(z) / q_t(z)
    double grad_second_moment = 0.0;  // mean squared norm of the stochastic policy direction
    const GameRecord& final() const { return records.back(); }
};

// expected: full-vector mean-centred step on every trace (entropic for kl, projected otherwise).
// grpo: per-trace standardised advantages, REINFORCE-style step on the sampled traces only.
enum class PolicyStep { expected, grpo };
std::string to_string(PolicyStep s);
PolicyStep policy_step_from_string(const std::string& s);

GameTrace run_game_grpo(const GameSpec& spec, const EstimatorTable& table, int T, double lr, std::uint64_t seed,
                        PolicyStep step = PolicyStep::expected);

struct StepRule {
    enum class Kind { constant, inv_sqrt, inv_t } kind = Kind::inv_sqrt;
    double eta0 = 0.5;
    double operator()(int t) const;  // t >= 1
    void validate() const;
};
StepRule step_rule_from_string(const std::string& s, double eta0);
std::string to_string(const StepRule& r);

// Stochastic projected mirror descent; the policy step uses the U-statistic reward estimate.
// Records the gap of the uniform averages on a 1-2-5 logarithmic schedule (and at T).
// deterministic: exact marginals, last-iterate gap.
GameTrace run_mirror_descent(const GameSpec& spec, const PolynomialReward& reward, int T, const StepRule& rule,
                             std::uint64_t seed, bool deterministic = false);

// Reward polynomial matching a polynomial geometry (euclid: q, cubic: q^2).
PolynomialReward geometry_reward(const GameSpec& spec);

// CSV "t,gap,entropy_of_policy,l1_error_to_ref_NE" and a JSON sidecar with the final state.
std::string trace_csv(const GameTrace& trace);
std::string trace_json(const GameTrace& trace, const GameSpec& spec);

}  // namespace kest
