#include "cloud/nml.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cloud/kernels.hpp"

namespace cloud {
namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kRissanenC = 2.865;

// ln C(2, n) by the exact sum over split points,
//   C(2, n) = sum_h binom(n, h) (h/n)^h ((n-h)/n)^(n-h),
// with binom through running log-factorials. log-sum-exp keeps n = 10^6 in
// range (the raw terms span hundreds of orders of magnitude).
double ln_c2(std::uint64_t n) {
    std::vector<double> lf(n + 1);
    lf[0] = 0.0;
    for (std::uint64_t h = 1; h <= n; ++h) lf[h] = lf[h - 1] + std::log(double(h));
    const double ln_n = std::log(double(n));
    std::vector<double> t(n + 1);
    for (std::uint64_t h = 0; h <= n; ++h) {
        double v = lf[n] - lf[h] - lf[n - h];
        if (h > 0) v += double(h) * (std::log(double(h)) - ln_n);
        if (n - h > 0) v += double(n - h) * (std::log(double(n - h)) - ln_n);
        t[h] = v;
    }
    return kernels::log_sum_exp(t.data(), t.size());
}

double log_add_exp(double a, double b) {
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

// ln C(k, n) for k = 1..K, extended on demand via
// C(K+2, n) = C(K+1, n) + (n/K) C(K, n). Thread-local, so grid search over
// many K at a fixed n costs one C(2, n) sum per thread.
const std::vector<double>& ln_c_table(std::uint64_t K, std::uint64_t n) {
    thread_local std::unordered_map<std::uint64_t, std::vector<double>> cache;
    std::vector<double>& ln_c = cache[n];
    if (ln_c.empty()) {
        ln_c.push_back(0.0);          // C(1, n) = 1
        ln_c.push_back(ln_c2(n));
    }
    const double ln_n = std::log(double(n));
    while (ln_c.size() < K) {
        const std::uint64_t k = ln_c.size() - 1;   // producing C(k+2, n)
        ln_c.push_back(log_add_exp(ln_c[k], ln_n - std::log(double(k)) + ln_c[k - 1]));
    }
    return ln_c;
}

}  // namespace

double log_multinomial_complexity(std::uint64_t K, std::uint64_t n) {
    if (K == 0 || n == 0) {
        throw std::invalid_argument("log_multinomial_complexity: K and n must be positive");
    }
    if (K == 1) return 0.0;
    return ln_c_table(K, n)[K - 1] / kLn2;
}

double log_star(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("log_star: m must be positive");
    double total = std::log2(kRissanenC);
    double term = std::log2(double(m));
    while (term > 0.0) {
        total += term;
        term = std::log2(term);
    }
    return total;
}

double categorical_nll(std::span<const std::uint64_t> counts) {
    std::uint64_t n = 0;
    for (std::uint64_t c : counts) n += c;
    if (n == 0) return 0.0;
    const double log2_n = std::log2(double(n));
    double nll = 0.0;
    for (std::uint64_t c : counts) {
        if (c > 0) nll += double(c) * (log2_n - std::log2(double(c)));
    }
    return nll;
}

double sc_categorical(std::span<const std::uint64_t> counts) {
    std::uint64_t n = 0;
    for (std::uint64_t c : counts) n += c;
    if (n == 0) return 0.0;
    return categorical_nll(counts) + log_multinomial_complexity(counts.size(), n);
}

}  // namespace cloud
