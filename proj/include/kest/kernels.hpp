#pragma once

#include <cstddef>
#include <span>

// Batch numeric kernels with a scalar reference and an AVX2/FMA variant.
// Both variants perform the same fused operations in the same order, so their
// outputs are bit-identical; the scalar path is the specification.
namespace kest::kernels {

enum class Backend { scalar, avx2 };

bool avx2_supported();
Backend active_backend();
// Pin a backend (tests, benchmarking). Requesting avx2 on a machine without it
// falls back to scalar. KEST_SIMD=scalar in the environment has the same effect.
void force_backend(Backend b);
const char* backend_name(Backend b);

// out[i] = sum_k coeffs[k] * B_{k,K}(ps[i]) by de Casteljau, K = coeffs.size()-1.
void bernstein_eval(std::span<const double> coeffs, std::span<const double> ps, std::span<double> out);

// y = sum_j x[j] * col_j, with A stored column-major as `cols` columns of length y.size().
void matvec_colmajor(const double* A, std::span<const double> x, std::span<double> y);

// max_i |v[i]|; index of the first maximiser written to *argmax when non-null.
double max_abs(std::span<const double> v, std::size_t* argmax = nullptr);

namespace scalar {
void bernstein_eval(std::span<const double> coeffs, std::span<const double> ps, std::span<double> out);
void matvec_colmajor(const double* A, std::span<const double> x, std::span<double> y);
double max_abs(std::span<const double> v, std::size_t* argmax);
}  // namespace scalar

namespace avx2 {
void bernstein_eval(std::span<const double> coeffs, std::span<const double> ps, std::span<double> out);
void matvec_colmajor(const double* A, std::span<const double> x, std::span<double> y);
double max_abs(std::span<const double> v, std::size_t* argmax);
}  // namespace avx2

}  // namespace kest::kernels
