#pragma once

#include <span>
#include <vector>

namespace kest {

// Polynomials on [0,1] written as P(p) = sum_j a_j T_j(2p - 1).

// T_j(2p-1), j = 0..K, into out (size K+1).
void chebyshev_row(int K, double p, std::span<double> out);

// Clenshaw evaluation of sum_j a_j T_j(2p-1).
double chebyshev_eval(std::span<const double> a, double p);

struct BernsteinConversion {
    std::vector<double> coeffs;  // nearest doubles to the exact Bernstein coefficients
    double rounding_bound = 0.0; // max_k |coeffs[k] - exact_k|
    double max_abs_coeff = 0.0;
};

// Exact change of basis (carried out in 160-digit arithmetic) followed by one rounding.
BernsteinConversion chebyshev_to_bernstein(std::span<const double> a);

}  // namespace kest
