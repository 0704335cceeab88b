#pragma once

#include <cstddef>
#include <cstdint>

// Low-level array kernels with a scalar reference implementation and an AVX2
// variant chosen at runtime. minmax/affine_unit/discretize are bit-identical
// across backends (each step is a single correctly-rounded operation and the
// build disables FP contraction); log_sum_exp may differ by rounding noise and
// is held to a relative tolerance instead.
//
// Backend selection: CLOUD_SIMD=scalar|avx2|auto (default auto). The choice is
// made once, on first use.

namespace cloud::kernels {

struct MinMax {
    double lo;
    double hi;
};

// Smallest and largest element; n >= 1. NaN inputs are the caller's error.
MinMax minmax(const double* v, std::size_t n);

// out[i] = min((v[i] - lo) * inv_range, top); the scaling step of the unit map.
void affine_unit(const double* v, std::size_t n, double lo, double inv_range,
                 double top, double* out);

// out[i] = min(floor(v[i] * m), m - 1) for v[i] in [0, 1).
void discretize(const double* v, std::size_t n, std::uint32_t m,
                std::uint32_t* out);

// log(sum_i exp(t[i])) in natural log, max-shifted; n >= 1.
double log_sum_exp(const double* t, std::size_t n);

// "scalar" or "avx2"; resolves the dispatch if not yet done.
const char* active_backend();

}  // namespace cloud::kernels
