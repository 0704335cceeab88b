#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

// Reference implementations. The AVX2 variant must match minmax/affine_unit/
// discretize bit-for-bit, so every element goes through the same sequence of
// individually-rounded operations; keep these loops free of clever
// refactorings that change the arithmetic.

namespace cloud::kernels::detail {
namespace {

MinMax minmax_scalar(const double* v, std::size_t n) {
    double lo = v[0];
    double hi = v[0];
    for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
    }
    return {lo, hi};
}

void affine_unit_scalar(const double* v, std::size_t n, double lo, double inv_range,
                        double top, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::min((v[i] - lo) * inv_range, top);
    }
}

void discretize_scalar(const double* v, std::size_t n, std::uint32_t m,
                       std::uint32_t* out) {
    const double md = double(m);
    const double top = double(m - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::uint32_t(std::min(std::floor(v[i] * md), top));
    }
}

double log_sum_exp_scalar(const double* t, std::size_t n) {
    double mx = t[0];
    for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, t[i]);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::exp(t[i] - mx);
    return mx + std::log(sum);
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b = {minmax_scalar, affine_unit_scalar, discretize_scalar,
                              log_sum_exp_scalar, "scalar"};
    return b;
}

}  // namespace cloud::kernels::detail
