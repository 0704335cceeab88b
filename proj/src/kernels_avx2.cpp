#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

// AVX2 variants. This TU is compiled with -mavx2; nothing here runs unless
// dispatch confirmed CPU support. minmax/affine_unit/discretize perform the
// same per-element operation sequence as the scalar reference and stay
// bit-identical. log_sum_exp uses a polynomial exp (Cephes coefficients,
// ~1 ulp) and a different accumulation order, so it is tolerance-matched
// instead.

namespace cloud::kernels::detail {
namespace {

MinMax minmax_avx2(const double* v, std::size_t n) {
    std::size_t i = 0;
    double lo, hi;
    if (n >= 4) {
        __m256d vlo = _mm256_loadu_pd(v);
        __m256d vhi = vlo;
        for (i = 4; i + 4 <= n; i += 4) {
            const __m256d x = _mm256_loadu_pd(v + i);
            vlo = _mm256_min_pd(vlo, x);
            vhi = _mm256_max_pd(vhi, x);
        }
        __m128d lo2 = _mm_min_pd(_mm256_castpd256_pd128(vlo), _mm256_extractf128_pd(vlo, 1));
        __m128d hi2 = _mm_max_pd(_mm256_castpd256_pd128(vhi), _mm256_extractf128_pd(vhi, 1));
        lo = std::min(_mm_cvtsd_f64(lo2), _mm_cvtsd_f64(_mm_unpackhi_pd(lo2, lo2)));
        hi = std::max(_mm_cvtsd_f64(hi2), _mm_cvtsd_f64(_mm_unpackhi_pd(hi2, hi2)));
    } else {
        lo = hi = v[0];
        i = 1;
    }
    for (; i < n; ++i) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
    }
    return {lo, hi};
}

void affine_unit_avx2(const double* v, std::size_t n, double lo, double inv_range,
                      double top, double* out) {
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vinv = _mm256_set1_pd(inv_range);
    const __m256d vtop = _mm256_set1_pd(top);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(v + i);
        const __m256d u = _mm256_mul_pd(_mm256_sub_pd(x, vlo), vinv);
        _mm256_storeu_pd(out + i, _mm256_min_pd(u, vtop));
    }
    for (; i < n; ++i) out[i] = std::min((v[i] - lo) * inv_range, top);
}

void discretize_avx2(const double* v, std::size_t n, std::uint32_t m,
                     std::uint32_t* out) {
    const double md = double(m);
    const double topd = double(m - 1);
    const __m256d vm = _mm256_set1_pd(md);
    const __m256d vtop = _mm256_set1_pd(topd);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(v + i);
        const __m256d k = _mm256_min_pd(_mm256_floor_pd(_mm256_mul_pd(x, vm)), vtop);
        const __m128i ki = _mm256_cvttpd_epi32(k);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i), ki);
    }
    for (; i < n; ++i) {
        out[i] = std::uint32_t(std::min(std::floor(v[i] * md), topd));
    }
}

// exp(x) for x <= 0, Cephes expansion: x reduced by n*ln2 (Cody-Waite split),
// then the Pade form 1 + 2p/(q - p), scaled by 2^n through the exponent bits.
__m256d exp_neg_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);

    // Arguments below exp's underflow-to-normal range contribute nothing
    // after the max shift; clamp instead of branching.
    x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));

    const __m256d nf = _mm256_floor_pd(_mm256_add_pd(_mm256_mul_pd(x, log2e), half));
    x = _mm256_sub_pd(x, _mm256_mul_pd(nf, c1));
    x = _mm256_sub_pd(x, _mm256_mul_pd(nf, c2));

    const __m256d xx = _mm256_mul_pd(x, x);
    __m256d p = _mm256_add_pd(_mm256_mul_pd(p0, xx), p1);
    p = _mm256_add_pd(_mm256_mul_pd(p, xx), p2);
    p = _mm256_mul_pd(p, x);
    __m256d q = _mm256_add_pd(_mm256_mul_pd(q0, xx), q1);
    q = _mm256_add_pd(_mm256_mul_pd(q, xx), q2);
    q = _mm256_add_pd(_mm256_mul_pd(q, xx), q3);
    const __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    const __m256d e = _mm256_add_pd(one, _mm256_mul_pd(two, r));

    // 2^n: n is in [-1021, 1], so (n + 1023) << 52 is a normal double.
    const __m128i n32 = _mm256_cvtpd_epi32(nf);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
}

double log_sum_exp_avx2(const double* t, std::size_t n) {
    double mx = minmax_avx2(t, n).hi;
    const __m256d vmx = _mm256_set1_pd(mx);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_sub_pd(_mm256_loadu_pd(t + i), vmx);
        acc = _mm256_add_pd(acc, exp_neg_pd(x));
    }
    __m128d s2 = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    double sum = _mm_cvtsd_f64(s2) + _mm_cvtsd_f64(_mm_unpackhi_pd(s2, s2));
    for (; i < n; ++i) sum += std::exp(t[i] - mx);
    return mx + std::log(sum);
}

}  // namespace

const Backend* avx2_backend() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Backend b = {minmax_avx2, affine_unit_avx2, discretize_avx2,
                              log_sum_exp_avx2, "avx2"};
    return &b;
}

}  // namespace cloud::kernels::detail
