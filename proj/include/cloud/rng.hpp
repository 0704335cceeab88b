#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Counter-based pseudo-random stream. The key folds (seed, scenario, trial),
// so trials are independent and may be generated concurrently in any order;
// identical keys replay identical streams on every platform.

namespace cloud {

class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t scenario, std::uint64_t trial);

    std::uint64_t next_u64();

    // [0, 1), 53-bit resolution.
    double uniform();
    // [a, b).
    double uniform(double a, double b);
    // {lo, ..., hi} inclusive, unbiased by rejection.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
    // Box-Muller; the spare deviate is kept, so draws come in deterministic pairs.
    double normal(double mean = 0.0, double sd = 1.0);
    // Index sampled by CDF scan over probs (assumed to sum to 1).
    std::size_t categorical(std::span<const double> probs);
    // Dirichlet(1,...,1): k exponentials normalized to a probability vector.
    std::vector<double> flat_dirichlet(std::size_t k);

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace cloud
