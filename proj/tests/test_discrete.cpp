#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "cloud/discrete.hpp"
#include "cloud/nml.hpp"
#include "cloud/rng.hpp"

using namespace cloud;

namespace {

JointCounts random_table(Rng& rng, std::uint32_t mx, std::uint32_t my,
                         std::uint64_t max_cell) {
    JointCounts jc(mx, my);
    for (std::uint64_t& c : jc.cells) c = rng.uniform_int(0, max_cell);
    jc.n = std::accumulate(jc.cells.begin(), jc.cells.end(), std::uint64_t(0));
    return jc;
}

FunctionMap random_function(Rng& rng, std::uint32_t mx, std::uint32_t my) {
    FunctionMap f;
    f.m_y = my;
    f.values.resize(mx);
    do {
        for (std::uint32_t& v : f.values) v = std::uint32_t(rng.uniform_int(0, my - 1));
    } while (f.is_constant() && mx >= 2 && my >= 2);
    return f;
}

}  // namespace

TEST_CASE("from_labels tabulates and validates") {
    const std::uint32_t xs[] = {0, 1, 1, 2, 2, 2};
    const std::uint32_t ys[] = {1, 0, 0, 1, 1, 0};
    const JointCounts jc = JointCounts::from_labels(xs, ys, 3, 2);
    CHECK(jc.n == 6);
    CHECK(jc.at(0, 1) == 1);
    CHECK(jc.at(1, 0) == 2);
    CHECK(jc.at(2, 1) == 2);
    CHECK(jc.row_sums() == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(jc.col_sums() == std::vector<std::uint64_t>{3, 3});

    const std::uint32_t short_y[] = {0};
    CHECK_THROWS_AS(JointCounts::from_labels(xs, short_y, 3, 2), std::invalid_argument);
    const std::uint32_t bad[] = {0, 1, 1, 2, 2, 5};
    CHECK_THROWS_AS(JointCounts::from_labels(bad, ys, 3, 2), std::invalid_argument);
}

TEST_CASE("transpose is an involution that swaps the marginals") {
    Rng rng(10, 0, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const auto jc = random_table(rng, 2 + rep % 3, 2 + rep % 4, 5);
        const JointCounts jt = jc.transposed();
        CHECK(jt.m_x == jc.m_y);
        CHECK(jt.row_sums() == jc.col_sums());
        CHECK(jt.transposed().cells == jc.cells);
    }
}

TEST_CASE("residual counts rotate each row by its function value") {
    JointCounts jc(2, 2);
    jc.at(0, 0) = 2;
    jc.at(1, 1) = 3;
    jc.n = 5;
    CHECK(residual_counts(jc, {{0, 1}, 2}) == std::vector<std::uint64_t>{5, 0});
    CHECK(residual_counts(jc, {{0, 0}, 2}) == std::vector<std::uint64_t>{2, 3});
    CHECK(residual_counts(jc, {{1, 0}, 2}) == std::vector<std::uint64_t>{0, 5});
}

TEST_CASE("residual counts always sum to n") {
    Rng rng(11, 0, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const auto mx = std::uint32_t(2 + rep % 3);
        const auto my = std::uint32_t(2 + rep % 4);
        const auto jc = random_table(rng, mx, my, 6);
        const auto f = random_function(rng, mx, my);
        const auto r = residual_counts(jc, f);
        CHECK(std::accumulate(r.begin(), r.end(), std::uint64_t(0)) == jc.n);
    }
}

TEST_CASE("function count codelength matches the exact census") {
    CHECK(log_function_count(2, 2) == doctest::Approx(0.0).epsilon(1e-12));   // 2^1-1 = 1
    CHECK(log_function_count(2, 3) == doctest::Approx(1.0).epsilon(1e-12));   // 3^1-1 = 2
    CHECK(log_function_count(3, 3) == doctest::Approx(3.0).epsilon(1e-12));   // 3^2-1 = 8
    CHECK(std::exp2(log_function_count(4, 4)) == doctest::Approx(63.0).epsilon(1e-12));
    CHECK_THROWS_AS(log_function_count(1, 4), model_inapplicable);
    CHECK_THROWS_AS(log_function_count(4, 1), model_inapplicable);
}

TEST_CASE("codelengths of the 2x2 identity table") {
    JointCounts jc(2, 2);
    jc.at(0, 0) = 1;
    jc.at(1, 1) = 1;
    jc.n = 2;
    CHECK(codelength_indep(jc) == doctest::Approx(6.643856189774725).epsilon(1e-12));
    CHECK(codelength_confounded(jc) == doctest::Approx(4.807354922057604).epsilon(1e-12));
    const FunctionMap f{{0, 1}, 2};
    CHECK(codelength_directed(jc, Model::XtoY, f) ==
          doctest::Approx(4.643856189774725).epsilon(1e-12));
}

TEST_CASE("uniform 2x2 table where independence is the parsimonious fit") {
    JointCounts jc(2, 2);
    for (auto& c : jc.cells) c = 2;
    jc.n = 8;
    CHECK(codelength_indep(jc) == doctest::Approx(20.17154134605109).epsilon(1e-12));
    // Same NLL for every model here, so penalties decide. The saturated
    // penalty exceeds the two marginals; a binary function costs zero extra
    // bits, so the directed codelength exactly ties independence.
    CHECK(codelength_indep(jc) < codelength_confounded(jc));
    CHECK(codelength_directed(jc, Model::XtoY, {{0, 1}, 2}) ==
          doctest::Approx(codelength_indep(jc)).epsilon(1e-12));
}

TEST_CASE("directed codelength assembles from its public pieces") {
    JointCounts jc(3, 2);
    const std::uint64_t rows[3][2] = {{8, 2}, {2, 8}, {8, 2}};
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t j = 0; j < 2; ++j) jc.at(i, j) = rows[i][j];
    jc.n = 30;
    const FunctionMap f{{0, 1, 0}, 2};
    CHECK(residual_counts(jc, f) == std::vector<std::uint64_t>{24, 6});
    const double expect = categorical_nll(jc.row_sums()) +
                          categorical_nll(residual_counts(jc, f)) +
                          log_multinomial_complexity(3, 30) +
                          log_multinomial_complexity(2, 30) + log_function_count(3, 2);
    CHECK(codelength_directed(jc, Model::XtoY, f) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(codelength_directed(jc, Model::XtoY, f) ==
          doctest::Approx(78.9387742696597).epsilon(1e-12));
}

TEST_CASE("structural identities on random tables") {
    Rng rng(12, 0, 0);
    int tables = 0;
    while (tables < 200) {
        const auto mx = std::uint32_t(rng.uniform_int(2, 4));
        const auto my = std::uint32_t(rng.uniform_int(2, 4));
        auto jc = random_table(rng, mx, my, 4);
        if (jc.n == 0) continue;
        ++tables;

        // Saturated codelength == categorical stochastic complexity of the
        // flattened table.
        CHECK(codelength_confounded(jc) ==
              doctest::Approx(sc_categorical(jc.cells)).epsilon(1e-12));

        const auto f = random_function(rng, mx, my);
        const double base = codelength_directed(jc, Model::XtoY, f);

        // Constant shifts of f rotate the residual labels but not the bits.
        for (std::uint32_t s = 1; s < my; ++s) {
            FunctionMap g = f;
            for (std::uint32_t& v : g.values) v = (v + s) % my;
            CHECK(codelength_directed(jc, Model::XtoY, g) ==
                  doctest::Approx(base).epsilon(1e-12));
        }

        // The two directions are transposes of each other.
        const auto g = random_function(rng, my, mx);
        CHECK(codelength_directed(jc, Model::YtoX, g) ==
              doctest::Approx(codelength_directed(jc.transposed(), Model::XtoY, g))
                  .epsilon(1e-12));

        // The saturated NLL term is a lower bound on every model's data term.
        const double nll_joint = categorical_nll(jc.cells);
        const double nll_indep =
            categorical_nll(jc.row_sums()) + categorical_nll(jc.col_sums());
        const double nll_directed =
            categorical_nll(jc.row_sums()) + categorical_nll(residual_counts(jc, f));
        CHECK(nll_joint <= nll_indep + 1e-9);
        CHECK(nll_joint <= nll_directed + 1e-9);
    }
}

TEST_CASE("directed models reject arity-one tables") {
    JointCounts jc(1, 3);
    jc.cells = {2, 1, 1};
    jc.n = 4;
    CHECK_THROWS_AS(codelength_directed(jc, Model::XtoY, {{0}, 3}), model_inapplicable);
    CHECK_NOTHROW(codelength_indep(jc));
    CHECK_NOTHROW(codelength_confounded(jc));
}
