#include "kest/kernels.hpp"

#if defined(KEST_HAVE_AVX2_TU)

#include <immintrin.h>

#include <cmath>
#include <vector>

namespace kest::kernels::avx2 {

void bernstein_eval(std::span<const double> coeffs, std::span<const double> ps, std::span<double> out) {
    const std::size_t n = coeffs.size();
    const std::size_t full = ps.size() / 4 * 4;
    std::vector<double> buf(4 * n);
    double* b = buf.data();
    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t i = 0; i < full; i += 4) {
        const __m256d p = _mm256_loadu_pd(ps.data() + i);
        const __m256d q = _mm256_sub_pd(one, p);
        for (std::size_t k = 0; k < n; ++k) _mm256_storeu_pd(b + 4 * k, _mm256_set1_pd(coeffs[k]));
        for (std::size_t r = 1; r < n; ++r) {
            __m256d lo = _mm256_loadu_pd(b);
            for (std::size_t k = 0; k + r < n; ++k) {
                const __m256d hi = _mm256_loadu_pd(b + 4 * (k + 1));
                _mm256_storeu_pd(b + 4 * k, _mm256_fmadd_pd(p, hi, _mm256_mul_pd(q, lo)));
                lo = hi;
            }
        }
        _mm256_storeu_pd(out.data() + i, _mm256_loadu_pd(b));
    }
    if (full < ps.size())
        scalar::bernstein_eval(coeffs, ps.subspan(full), out.subspan(full));
}

void matvec_colmajor(const double* A, std::span<const double> x, std::span<double> y) {
    const std::size_t m = y.size();
    const std::size_t full = m / 4 * 4;
    for (std::size_t i = 0; i < m; ++i) y[i] = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double* col = A + j * m;
        const __m256d xj = _mm256_set1_pd(x[j]);
        std::size_t i = 0;
        for (; i < full; i += 4) {
            __m256d acc = _mm256_loadu_pd(y.data() + i);
            acc = _mm256_fmadd_pd(xj, _mm256_loadu_pd(col + i), acc);
            _mm256_storeu_pd(y.data() + i, acc);
        }
        for (; i < m; ++i) y[i] = std::fma(x[j], col[i], y[i]);
    }
}

double max_abs(std::span<const double> v, std::size_t* argmax) {
    const std::size_t n = v.size();
    const std::size_t full = n / 4 * 4;
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d mx = _mm256_setzero_pd();
    for (std::size_t i = 0; i < full; i += 4)
        mx = _mm256_max_pd(mx, _mm256_andnot_pd(sign, _mm256_loadu_pd(v.data() + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, mx);
    double best = 0.0;
    for (double l : lanes)
        if (l > best) best = l;
    for (std::size_t i = full; i < n; ++i)
        if (std::fabs(v[i]) > best) best = std::fabs(v[i]);
    if (argmax) {
        // first index attaining the maximum, matching the scalar scan
        std::size_t idx = 0;
        if (best > 0.0)
            for (std::size_t i = 0; i < n; ++i)
                if (std::fabs(v[i]) == best) {
                    idx = i;
                    break;
                }
        *argmax = idx;
    }
    return best;
}

}  // namespace kest::kernels::avx2

#endif
