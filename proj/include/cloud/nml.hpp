#pragma once

#include <cstdint>
#include <span>

// Stochastic-complexity primitives for categorical data. All codelengths are
// base-2 bits throughout the library.

namespace cloud {

// log2 of the multinomial parametric complexity C(K, n):
//
//   C(1, n) = 1
//   C(2, n) = sum_{h=0}^{n} binom(n, h) (h/n)^h ((n-h)/n)^(n-h)   (0^0 = 1)
//   C(K+2, n) = C(K+1, n) + (n/K) C(K, n)
//
// The C(2, n) sum and the recurrence run in log domain; cost O(n + K) on the
// first call, then cached per (n, K) within the calling thread.
// Throws std::invalid_argument for K == 0 or n == 0.
double log_multinomial_complexity(std::uint64_t K, std::uint64_t n);

// Rissanen universal-integer codelength
//   log*(m) = log2(c) + log2(m) + log2(log2(m)) + ...   (c ~ 2.865),
// summing while the terms stay positive. Throws for m == 0.
double log_star(std::uint64_t m);

// -sum_k counts[k] * log2(counts[k] / n) with 0 log 0 = 0; n = sum(counts).
// Zero for an empty or all-zero vector.
double categorical_nll(std::span<const std::uint64_t> counts);

// NML codelength of a categorical sample: NLL plus log2 C(K, n) with
// K = counts.size(). Zero when n == 0.
double sc_categorical(std::span<const std::uint64_t> counts);

}  // namespace cloud
