#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cloud/kernels.hpp"
#include "cloud/rng.hpp"
#include "kernels_impl.hpp"

using cloud::Rng;
using namespace cloud::kernels;

namespace {

bool same_bits(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

std::vector<double> random_values(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

const std::size_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 33, 64, 67, 1000};

}  // namespace

TEST_CASE("active backend reports a known name") {
    const std::string name = active_backend();
    CHECK((name == "scalar" || name == "avx2"));
}

TEST_CASE("scalar minmax matches std::minmax_element") {
    Rng rng(1, 0, 0);
    for (std::size_t n : kSizes) {
        const auto v = random_values(rng, n, -50.0, 50.0);
        const auto [lo, hi] = detail::scalar_backend().minmax(v.data(), n);
        const auto [it_lo, it_hi] = std::minmax_element(v.begin(), v.end());
        CHECK(lo == *it_lo);
        CHECK(hi == *it_hi);
    }
}

TEST_CASE("scalar affine_unit maps endpoints onto [0, top]") {
    const double top = std::nextafter(1.0, 0.0);
    const double v[] = {-2.0, 0.0, 1.0, 6.0};
    double out[4];
    detail::scalar_backend().affine_unit(v, 4, -2.0, 1.0 / 8.0, top, out);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.25);
    CHECK(out[3] == top);
    for (double x : out) {
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("scalar discretize bins the unit interval evenly") {
    const double v[] = {0.0, 0.32, 0.34, 0.999, std::nextafter(1.0, 0.0)};
    std::uint32_t out[5];
    detail::scalar_backend().discretize(v, 5, 3, out);
    CHECK(out[0] == 0);
    CHECK(out[1] == 0);
    CHECK(out[2] == 1);
    CHECK(out[3] == 2);
    CHECK(out[4] == 2);
}

TEST_CASE("scalar log_sum_exp matches the naive sum") {
    Rng rng(2, 0, 0);
    for (std::size_t n : {1, 2, 5, 33}) {
        const auto t = random_values(rng, n, -30.0, 5.0);
        double naive = 0.0;
        for (double x : t) naive += std::exp(x);
        const double got = detail::scalar_backend().log_sum_exp(t.data(), n);
        CHECK(got == doctest::Approx(std::log(naive)).epsilon(1e-12));
    }
}

TEST_CASE("log_sum_exp survives terms exp would overflow on") {
    const double t[] = {1000.0, 1000.0};
    const double got = detail::scalar_backend().log_sum_exp(t, 2);
    CHECK(got == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("avx2 backend agrees with scalar") {
    const detail::Backend* avx2 = detail::avx2_backend();
    if (avx2 == nullptr) return;  // host without AVX2

    Rng rng(3, 0, 0);
    for (std::size_t n : kSizes) {
        const auto v = random_values(rng, n, -100.0, 100.0);

        SUBCASE("") {}  // keep loop body in one assertion context

        const auto s_mm = detail::scalar_backend().minmax(v.data(), n);
        const auto a_mm = avx2->minmax(v.data(), n);
        REQUIRE(same_bits(s_mm.lo, a_mm.lo));
        REQUIRE(same_bits(s_mm.hi, a_mm.hi));

        const double top = std::nextafter(1.0, 0.0);
        const double inv = 1.0 / (s_mm.hi - s_mm.lo);
        std::vector<double> s_u(n), a_u(n);
        detail::scalar_backend().affine_unit(v.data(), n, s_mm.lo, inv, top, s_u.data());
        avx2->affine_unit(v.data(), n, s_mm.lo, inv, top, a_u.data());
        for (std::size_t i = 0; i < n; ++i) REQUIRE(same_bits(s_u[i], a_u[i]));

        for (std::uint32_t m : {2u, 3u, 7u, 16u}) {
            std::vector<std::uint32_t> s_d(n), a_d(n);
            detail::scalar_backend().discretize(s_u.data(), n, m, s_d.data());
            avx2->discretize(s_u.data(), n, m, a_d.data());
            REQUIRE(s_d == a_d);
        }

        // Log-domain terms as the complexity recurrence produces them.
        std::vector<double> t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = rng.uniform(-700.0, 0.0);
        const double s_l = detail::scalar_backend().log_sum_exp(t.data(), n);
        const double a_l = avx2->log_sum_exp(t.data(), n);
        REQUIRE(std::fabs(s_l - a_l) <= 1e-12 * std::max(1.0, std::fabs(s_l)));
    }
}
