#include "kest/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace kest::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(KEST_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend() {
    if (const char* env = std::getenv("KEST_SIMD"); env && std::strcmp(env, "scalar") == 0)
        return Backend::scalar;
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{initial_backend()};
    return slot;
}

}  // namespace

bool avx2_supported() {
    static const bool ok = cpu_has_avx2();
    return ok;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported()) b = Backend::scalar;
    backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void bernstein_eval(std::span<const double> coeffs, std::span<const double> ps, std::span<double> out) {
    if (active_backend() == Backend::avx2) return avx2::bernstein_eval(coeffs, ps, out);
    scalar::bernstein_eval(coeffs, ps, out);
}

void matvec_colmajor(const double* A, std::span<const double> x, std::span<double> y) {
    if (active_backend() == Backend::avx2) return avx2::matvec_colmajor(A, x, y);
    scalar::matvec_colmajor(A, x, y);
}

double max_abs(std::span<const double> v, std::size_t* argmax) {
    if (active_backend() == Backend::avx2) return avx2::max_abs(v, argmax);
    return scalar::max_abs(v, argmax);
}

namespace scalar {

void bernstein_eval(std::span<const double> coeffs, std::span<const double> ps, std::span<double> out) {
    const std::size_t n = coeffs.size();
    std::vector<double> b(n);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double p = ps[i];
        const double q = 1.0 - p;
        std::memcpy(b.data(), coeffs.data(), n * sizeof(double));
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t k = 0; k + r < n; ++k) b[k] = std::fma(p, b[k + 1], q * b[k]);
        out[i] = b[0];
    }
}

void matvec_colmajor(const double* A, std::span<const double> x, std::span<double> y) {
    const std::size_t m = y.size();
    for (std::size_t i = 0; i < m; ++i) y[i] = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double xj = x[j];
        const double* col = A + j * m;
        for (std::size_t i = 0; i < m; ++i) y[i] = std::fma(xj, col[i], y[i]);
    }
}

double max_abs(std::span<const double> v, std::size_t* argmax) {
    double best = 0.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::fabs(v[i]);
        if (a > best) {
            best = a;
            idx = i;
        }
    }
    if (argmax) *argmax = idx;
    return best;
}

}  // namespace scalar

#if !defined(KEST_HAVE_AVX2_TU)
namespace avx2 {
void bernstein_eval(std::span<const double> c, std::span<const double> ps, std::span<double> out) {
    scalar::bernstein_eval(c, ps, out);
}
void matvec_colmajor(const double* A, std::span<const double> x, std::span<double> y) {
    scalar::matvec_colmajor(A, x, y);
}
double max_abs(std::span<const double> v, std::size_t* argmax) { return scalar::max_abs(v, argmax); }
}  // namespace avx2
#endif

}  // namespace kest::kernels
