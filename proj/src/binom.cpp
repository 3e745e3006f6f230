#include "kest/binom.hpp"

#include <array>
#include <cmath>
#include <string>

#include "kest/errors.hpp"
#include "kest/kernels.hpp"

namespace kest {

namespace {

constexpr int kLogFactTable = 4097;

long double log_factorial(int n) {
    static const auto table = [] {
        std::array<long double, kLogFactTable> t{};
        int sign = 0;
        for (int i = 0; i < kLogFactTable; ++i) t[i] = lgammal_r(static_cast<long double>(i) + 1.0L, &sign);
        return t;
    }();
    if (n < kLogFactTable) return table[static_cast<std::size_t>(n)];
    int sign = 0;
    return lgammal_r(static_cast<long double>(n) + 1.0L, &sign);
}

void check_args(int K, int k, double p) {
    if (K < 1) throw DomainError("bernstein_basis: K must be positive, got " + std::to_string(K));
    if (k < 0 || k > K)
        throw DomainError("bernstein_basis: k=" + std::to_string(k) + " outside [0," + std::to_string(K) + "]");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernstein_basis: p outside [0,1]");
}

double basis_unchecked(int K, int k, double p, long double logp, long double log1mp) {
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == K ? 1.0 : 0.0;
    const long double lb = log_factorial(K) - log_factorial(k) - log_factorial(K - k) +
                           static_cast<long double>(k) * logp + static_cast<long double>(K - k) * log1mp;
    return static_cast<double>(expl(lb));
}

}  // namespace

double p_log_p(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

double bernstein_basis(int K, int k, double p) {
    check_args(K, k, p);
    const long double lp = p > 0.0 ? logl(static_cast<long double>(p)) : 0.0L;
    const long double lq = p < 1.0 ? log1pl(-static_cast<long double>(p)) : 0.0L;
    return basis_unchecked(K, k, p, lp, lq);
}

std::vector<double> bernstein_row(int K, double p) {
    check_args(K, 0, p);
    const long double lp = p > 0.0 ? logl(static_cast<long double>(p)) : 0.0L;
    const long double lq = p < 1.0 ? log1pl(-static_cast<long double>(p)) : 0.0L;
    std::vector<double> row(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) row[static_cast<std::size_t>(k)] = basis_unchecked(K, k, p, lp, lq);
    return row;
}

double expected_value(std::span<const double> coeffs, double p) {
    const int K = static_cast<int>(coeffs.size()) - 1;
    const auto row = bernstein_row(K, p);
    CompensatedSum s;
    for (std::size_t k = 0; k < row.size(); ++k) s.add(coeffs[k] * row[k]);
    return s.value();
}

double expected_value(const EstimatorTable& table, double p) { return expected_value(table.coeffs(), p); }

double second_moment(const EstimatorTable& table, double p) {
    const auto row = bernstein_row(table.K(), p);
    CompensatedSum s;
    for (std::size_t k = 0; k < row.size(); ++k) s.add(table[static_cast<int>(k)] * table[static_cast<int>(k)] * row[k]);
    return s.value();
}

double gradient_weighted_bias(const EstimatorTable& table, double p) {
    const double ev = expected_value(table, p);
    if (p == 0.0) return 0.0 * ev;
    return p * ev - table.beta() * p_log_p(p);
}

std::vector<double> expected_values(std::span<const double> coeffs, std::span<const double> ps) {
    std::vector<double> out(ps.size());
    kernels::bernstein_eval(coeffs, ps, out);
    return out;
}

std::vector<double> second_moments(std::span<const double> coeffs, std::span<const double> ps) {
    std::vector<double> sq(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) sq[k] = coeffs[k] * coeffs[k];
    return expected_values(sq, ps);
}

BiasProfile bias_profile(const EstimatorTable& table, const Grid& grid) {
    if (grid.scheme() == GridScheme::boundary_refined && grid.K() != table.K())
        throw ValidationError("bias_profile: boundary-refined grid was built for K=" + std::to_string(grid.K()) +
                              ", table has K=" + std::to_string(table.K()));
    const auto ps = grid.points();
    BiasProfile prof{grid, expected_values(table.coeffs(), ps), second_moments(table.coeffs(), ps)};
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double p = ps[i];
        prof.weighted_bias[i] = p == 0.0 ? 0.0 * prof.weighted_bias[i]
                                         : p * prof.weighted_bias[i] - table.beta() * p_log_p(p);
    }
    prof.sup_bias = kernels::max_abs(prof.weighted_bias, &prof.argmax_bias);
    prof.sup_second_moment = kernels::max_abs(prof.second_moment, &prof.argmax_second_moment);
    return prof;
}

}  // namespace kest
