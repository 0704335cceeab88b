#include "cloud/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cloud {
namespace {

// SplitMix64 finalizer; full 64-bit avalanche.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t scenario, std::uint64_t trial) {
    // Fold the three key parts through the mixer so nearby (seed, trial)
    // pairs land in unrelated streams.
    std::uint64_t k = mix(seed);
    k = mix(k ^ (scenario * 0xA24BAED4963EE407ull));
    k = mix(k ^ (trial * 0x9FB21C651E98DF25ull));
    key_ = k;
}

std::uint64_t Rng::next_u64() {
    return mix(key_ ^ (ctr_++ * 0xD6E8FEB86659FD93ull));
}

double Rng::uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) {
    return a + (b - a) * uniform();
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = hi - lo + 1;   // wraps to 0 for the full range
    if (span == 0) return next_u64();
    // Rejection above the largest multiple of span keeps the draw unbiased.
    const std::uint64_t limit = (~std::uint64_t(0) / span) * span;
    std::uint64_t u;
    do {
        u = next_u64();
    } while (u >= limit);
    return lo + u % span;
}

double Rng::normal(double mean, double sd) {
    if (has_spare_) {
        has_spare_ = false;
        return mean + sd * spare_;
    }
    // Box-Muller on (0, 1] x [0, 1).
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return mean + sd * (r * std::cos(a));
}

std::size_t Rng::categorical(std::span<const double> probs) {
    if (probs.empty()) throw std::invalid_argument("categorical: empty distribution");
    const double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return probs.size() - 1;   // u landed in rounding slack at the top
}

std::vector<double> Rng::flat_dirichlet(std::size_t k) {
    if (k == 0) throw std::invalid_argument("flat_dirichlet: k must be positive");
    std::vector<double> w(k);
    double sum = 0.0;
    for (double& v : w) {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        v = -std::log(u);
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

}  // namespace cloud
