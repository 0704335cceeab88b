#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cloud/nml.hpp"

using cloud::categorical_nll;
using cloud::log_multinomial_complexity;
using cloud::log_star;
using cloud::sc_categorical;

namespace {

// Independent oracle: sum the maximized likelihood over every count vector
// (h_1..h_K), n!/(h_1!..h_K!) * prod (h_k/n)^h_k, by recursion over counts.
double brute_force_complexity(std::uint64_t K, std::uint64_t n) {
    std::vector<double> fact(n + 1, 1.0);
    for (std::uint64_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * double(i);

    double total = 0.0;
    std::vector<std::uint64_t> h(K, 0);
    auto rec = [&](auto&& self, std::uint64_t k, std::uint64_t left) -> void {
        if (k + 1 == K) {
            h[k] = left;
            double term = fact[n];
            for (std::uint64_t c : h) {
                term /= fact[c];
                if (c > 0) term *= std::pow(double(c) / double(n), double(c));
            }
            total += term;
            return;
        }
        for (std::uint64_t c = 0; c <= left; ++c) {
            h[k] = c;
            self(self, k + 1, left - c);
        }
    };
    rec(rec, 0, n);
    return total;
}

}  // namespace

TEST_CASE("complexity matches brute-force enumeration on small cases") {
    for (std::uint64_t K = 1; K <= 3; ++K) {
        for (std::uint64_t n = 1; n <= 6; ++n) {
            const double expect = std::log2(brute_force_complexity(K, n));
            const double got = log_multinomial_complexity(K, n);
            CHECK(got == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("complexity spot values") {
    CHECK(std::exp2(log_multinomial_complexity(2, 2)) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(std::exp2(log_multinomial_complexity(3, 2)) == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(std::exp2(log_multinomial_complexity(4, 2)) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(std::exp2(log_multinomial_complexity(3, 4)) ==
          doctest::Approx(7.21875).epsilon(1e-12));
    CHECK(std::exp2(log_multinomial_complexity(2, 8)) ==
          doctest::Approx(4.245018005371094).epsilon(1e-12));
    CHECK(std::exp2(log_multinomial_complexity(3, 3)) ==
          doctest::Approx(5.888888888888889).epsilon(1e-12));
}

TEST_CASE("single-category complexity is exactly zero bits") {
    for (std::uint64_t n : {std::uint64_t(1), std::uint64_t(17), std::uint64_t(1000000)}) {
        CHECK(log_multinomial_complexity(1, n) == 0.0);
    }
}

TEST_CASE("complexity grows in both arguments") {
    for (std::uint64_t K = 1; K <= 5; ++K) {
        CHECK(log_multinomial_complexity(K, 40) < log_multinomial_complexity(K + 1, 40));
    }
    for (std::uint64_t n = 1; n <= 40; ++n) {
        CHECK(log_multinomial_complexity(3, n) < log_multinomial_complexity(3, n + 1));
    }
}

TEST_CASE("complexity rejects zero arguments") {
    CHECK_THROWS_AS(log_multinomial_complexity(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_multinomial_complexity(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(log_multinomial_complexity(1, 0), std::invalid_argument);
}

TEST_CASE("log_star spot values and growth") {
    CHECK(log_star(1) == doctest::Approx(1.5185351389821802).epsilon(1e-12));
    CHECK(log_star(2) == doctest::Approx(2.5185351389821804).epsilon(1e-12));
    CHECK(log_star(3) == doctest::Approx(3.767946347157226).epsilon(1e-12));
    CHECK(log_star(4) == doctest::Approx(4.51853513898218).epsilon(1e-12));
    CHECK(log_star(16) == doctest::Approx(8.51853513898218).epsilon(1e-12));
    for (std::uint64_t m = 1; m < 64; ++m) CHECK(log_star(m) < log_star(m + 1));
    CHECK_THROWS_AS(log_star(0), std::invalid_argument);
}

TEST_CASE("categorical NLL at the maximum-likelihood parameters") {
    const std::uint64_t one_hot[] = {4, 0};
    CHECK(categorical_nll(one_hot) == 0.0);

    const std::uint64_t uneven[] = {3, 1};
    CHECK(categorical_nll(uneven) == doctest::Approx(3.2451124978365313).epsilon(1e-12));

    const std::uint64_t three[] = {2, 1, 1};
    CHECK(categorical_nll(three) == doctest::Approx(6.0).epsilon(1e-12));

    const std::uint64_t pair[] = {1, 1};
    CHECK(categorical_nll(pair) == doctest::Approx(2.0).epsilon(1e-12));

    const std::vector<std::uint64_t> empty;
    CHECK(categorical_nll(empty) == 0.0);
}

TEST_CASE("stochastic complexity is NLL plus the complexity penalty") {
    const std::uint64_t counts[] = {2, 1, 1};
    CHECK(sc_categorical(counts) == doctest::Approx(8.851749041416058).epsilon(1e-12));
    // One category trivially transmits the sample: zero bits total.
    const std::uint64_t single[] = {9};
    CHECK(sc_categorical(single) == 0.0);
    const std::vector<std::uint64_t> empty;
    CHECK(sc_categorical(empty) == 0.0);
}
