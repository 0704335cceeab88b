#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace cloud::kernels {
namespace {

using detail::Backend;

// CLOUD_SIMD=scalar forces the reference path; =avx2 requests the vector path
// (falling back to scalar when the CPU lacks it); anything else is auto.
const Backend& select_backend() {
    const char* req = std::getenv("CLOUD_SIMD");
    if (req != nullptr && std::strcmp(req, "scalar") == 0) return detail::scalar_backend();
    const Backend* avx2 = detail::avx2_backend();
    return avx2 != nullptr ? *avx2 : detail::scalar_backend();
}

const Backend& active() {
    static const Backend& b = select_backend();
    return b;
}

}  // namespace

MinMax minmax(const double* v, std::size_t n) { return active().minmax(v, n); }

void affine_unit(const double* v, std::size_t n, double lo, double inv_range,
                 double top, double* out) {
    active().affine_unit(v, n, lo, inv_range, top, out);
}

void discretize(const double* v, std::size_t n, std::uint32_t m, std::uint32_t* out) {
    active().discretize(v, n, m, out);
}

double log_sum_exp(const double* t, std::size_t n) { return active().log_sum_exp(t, n); }

const char* active_backend() { return active().name; }

}  // namespace cloud::kernels
