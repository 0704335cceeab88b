#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <vector>

#include "cloud/continuous.hpp"
#include "cloud/discrete.hpp"
#include "cloud/nml.hpp"
#include "cloud/rng.hpp"

using namespace cloud;

namespace {

const std::vector<double> kToyX = {0.05, 0.15, 0.35, 0.45, 0.65, 0.75, 0.85, 0.95};

std::vector<double> doubled(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = 2.0 * v[i];
    return out;
}

}  // namespace

TEST_CASE("scale_to_unit pins the range to the half-open unit interval") {
    const double raw[] = {3.0, -1.0, 7.0, 5.0};
    const ContinuousSeries s = scale_to_unit(raw);
    CHECK_FALSE(s.degenerate);
    CHECK(s.values[1] == 0.0);
    CHECK(s.values[2] == std::nextafter(1.0, 0.0));
    CHECK(s.values[0] == doctest::Approx(0.5).epsilon(1e-15));
    for (double v : s.values) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("scale_to_unit flags constant input instead of dividing by zero") {
    const double raw[] = {4.2, 4.2, 4.2};
    const ContinuousSeries s = scale_to_unit(raw);
    CHECK(s.degenerate);
    CHECK(s.values == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("scale_to_unit rejects unusable input") {
    CHECK_THROWS_AS(scale_to_unit(std::vector<double>{}), std::invalid_argument);
    const double nan[] = {1.0, std::nan("")};
    CHECK_THROWS_AS(scale_to_unit(nan), std::invalid_argument);
    const double inf[] = {1.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(scale_to_unit(inf), std::invalid_argument);
}

TEST_CASE("disc assigns equal-width bins and keeps the arity") {
    const ContinuousSeries s = scale_to_unit(kToyX);
    const DiscreteSeries d2 = disc(s, 2);
    CHECK(d2.m == 2);
    CHECK(d2.labels == std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1, 1, 1});
    const DiscreteSeries d3 = disc(s, 3);
    CHECK(d3.labels == std::vector<std::uint32_t>{0, 0, 1, 1, 2, 2, 2, 2});
    CHECK_THROWS_AS(disc(s, 0), std::invalid_argument);
}

TEST_CASE("cont spreads labels over the unit interval") {
    const DiscreteSeries d{{0, 2, 1}, 4};
    const ContinuousSeries c = cont(d, 4);
    CHECK(c.values == std::vector<double>{0.0, 0.5, 0.25});
    CHECK_THROWS_AS(cont(d, 3), std::invalid_argument);
}

TEST_CASE("discretization correction spot values") {
    CHECK(l_c2d(1, 10) == doctest::Approx(1.5185351389821802).epsilon(1e-12));
    CHECK(l_c2d(2, 4) == doctest::Approx(-1.4814648610178196).epsilon(1e-12));
    CHECK(l_c2d(4, 2) == doctest::Approx(0.5185351389821804).epsilon(1e-12));
    // -n log2 m + log*(m), assembled from the public pieces.
    CHECK(l_c2d(8, 100) ==
          doctest::Approx(-100.0 * 3.0 + log_star(8)).epsilon(1e-12));
}

TEST_CASE("continuous codelength is the discrete one plus both corrections") {
    const ContinuousSeries x = scale_to_unit(kToyX);
    const ContinuousSeries y = scale_to_unit(doubled(kToyX));
    const DiscreteSeries dx = disc(x, 3);
    const DiscreteSeries dy = disc(y, 2);
    const JointCounts jc = JointCounts::from_labels(dx.labels, dy.labels, 3, 2);
    const double expect = codelength_indep(jc) + l_c2d(3, 8) + l_c2d(2, 8);
    CHECK(codelength_continuous(x, y, 3, 2, Model::Independent) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("square grid sorts, dedupes, and orders pairs lexicographically") {
    const std::uint32_t axis[] = {3, 2, 3};
    const BinGrid g = BinGrid::square(axis);
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> expect = {
        {2, 2}, {2, 3}, {3, 2}, {3, 3}};
    CHECK(g.pairs == expect);
    const std::size_t side = std::size(kDefaultGridAxis);
    CHECK(BinGrid::default_grid().pairs.size() == side * side);
}

TEST_CASE("grid minimum on a linear toy sample") {
    const ContinuousSeries x = scale_to_unit(kToyX);
    const ContinuousSeries y = scale_to_unit(doubled(kToyX));
    const std::uint32_t axis[] = {2, 3};
    const BinGrid grid = BinGrid::square(axis);

    const GridScore indep = grid_min(x, y, grid, Model::Independent);
    const GridScore conf = grid_min(x, y, grid, Model::Confounded);
    const GridScore xy = grid_min(x, y, grid, Model::XtoY);
    const GridScore yx = grid_min(x, y, grid, Model::YtoX);

    CHECK(indep.bits == doctest::Approx(9.208611624015454).epsilon(1e-12));
    CHECK(conf.bits == doctest::Approx(1.9062058417865124).epsilon(1e-12));
    CHECK(xy.bits == doctest::Approx(1.2086116240154539).epsilon(1e-12));
    CHECK(yx.bits == doctest::Approx(xy.bits).epsilon(1e-12));
    CHECK(xy.f.has_value());
    CHECK_FALSE(indep.f.has_value());

    // The reported pair reproduces the reported bits when scored directly.
    CHECK(codelength_continuous(x, y, xy.m_x, xy.m_y, Model::XtoY) ==
          doctest::Approx(xy.bits).epsilon(1e-12));
}

TEST_CASE("directed grid search skips unusable resolutions") {
    const ContinuousSeries x = scale_to_unit(kToyX);
    const ContinuousSeries y = scale_to_unit(doubled(kToyX));

    const std::uint32_t mixed_axis[] = {1, 2};
    const GridScore xy = grid_min(x, y, BinGrid::square(mixed_axis), Model::XtoY);
    CHECK(xy.m_x == 2);
    CHECK(xy.m_y == 2);

    const std::uint32_t unit_axis[] = {1};
    const GridScore none = grid_min(x, y, BinGrid::square(unit_axis), Model::XtoY);
    CHECK(std::isinf(none.bits));
    CHECK_FALSE(none.f.has_value());
}

TEST_CASE("codelength ranking is invariant under positive affine rescaling") {
    Rng rng(30, 0, 0);
    std::vector<double> x(200), y(200);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.normal();
        y[i] = 0.8 * x[i] + 0.3 * rng.normal();
    }
    std::vector<double> x2(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) x2[i] = 250.0 * x[i] + 17.0;

    const ContinuousSeries sx = scale_to_unit(x);
    const ContinuousSeries sx2 = scale_to_unit(x2);
    const ContinuousSeries sy = scale_to_unit(y);
    const BinGrid grid = BinGrid::default_grid();
    for (Model m : {Model::Independent, Model::XtoY, Model::YtoX, Model::Confounded}) {
        const GridScore a = grid_min(sx, sy, grid, m);
        const GridScore b = grid_min(sx2, sy, grid, m);
        CHECK(a.bits == doctest::Approx(b.bits).epsilon(1e-9));
        CHECK(a.m_x == b.m_x);
        CHECK(a.m_y == b.m_y);
    }
}
