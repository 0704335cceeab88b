#pragma once

#include "cloud/kernels.hpp"

// Internal backend table. Each variant fills every slot; dispatch picks one
// table at startup and never mixes slots across variants.

namespace cloud::kernels::detail {

struct Backend {
    MinMax (*minmax)(const double*, std::size_t);
    void (*affine_unit)(const double*, std::size_t, double, double, double, double*);
    void (*discretize)(const double*, std::size_t, std::uint32_t, std::uint32_t*);
    double (*log_sum_exp)(const double*, std::size_t);
    const char* name;
};

const Backend& scalar_backend();
// Null when the CPU lacks AVX2.
const Backend* avx2_backend();

}  // namespace cloud::kernels::detail
