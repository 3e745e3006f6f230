#include "kest/chebyshev.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace kest {

namespace mp = boost::multiprecision;
using Big = mp::number<mp::cpp_bin_float<160>>;

void chebyshev_row(int K, double p, std::span<double> out) {
    const double x = 2.0 * p - 1.0;
    out[0] = 1.0;
    if (K >= 1) out[1] = x;
    for (int j = 2; j <= K; ++j) out[j] = 2.0 * x * out[j - 1] - out[j - 2];
}

double chebyshev_eval(std::span<const double> a, double p) {
    const double x = 2.0 * p - 1.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t j = a.size(); j-- > 1;) {
        const double b0 = a[j] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return a.empty() ? 0.0 : a[0] + x * b1 - b2;
}

BernsteinConversion chebyshev_to_bernstein(std::span<const double> a) {
    const int K = static_cast<int>(a.size()) - 1;
    // power-basis coefficients of T_j(2p-1) in p, exact integers
    std::vector<std::vector<mp::cpp_int>> t(static_cast<std::size_t>(K) + 1);
    t[0] = {1};
    if (K >= 1) t[1] = {-1, 2};
    for (int j = 2; j <= K; ++j) {
        auto& cur = t[j];
        cur.assign(static_cast<std::size_t>(j) + 1, 0);
        const auto& p1 = t[j - 1];
        const auto& p2 = t[j - 2];
        for (std::size_t i = 0; i < p1.size(); ++i) {
            cur[i] -= 2 * p1[i];
            cur[i + 1] += 4 * p1[i];
        }
        for (std::size_t i = 0; i < p2.size(); ++i) cur[i] -= p2[i];
    }
    std::vector<Big> m(static_cast<std::size_t>(K) + 1, Big(0));
    for (int j = 0; j <= K; ++j) {
        const Big aj(a[j]);
        for (int i = 0; i <= j; ++i) m[i] += aj * Big(t[j][i]);
    }
    // p^i = sum_{k>=i} C(k,i)/C(K,i) B_{k,K}(p)
    std::vector<std::vector<mp::cpp_int>> binom(static_cast<std::size_t>(K) + 1);
    for (int n = 0; n <= K; ++n) {
        binom[n].assign(static_cast<std::size_t>(n) + 1, 1);
        for (int r = 1; r < n; ++r) binom[n][r] = binom[n - 1][r - 1] + binom[n - 1][r];
    }
    BernsteinConversion out;
    out.coeffs.resize(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) {
        Big ck = 0;
        for (int i = 0; i <= k; ++i) ck += m[i] * Big(binom[k][i]) / Big(binom[K][i]);
        const double d = static_cast<double>(ck);
        out.coeffs[k] = d;
        const double err = static_cast<double>(mp::abs(Big(d) - ck));
        out.rounding_bound = std::max(out.rounding_bound, err);
        out.max_abs_coeff = std::max(out.max_abs_coeff, std::fabs(d));
    }
    return out;
}

}  // namespace kest
