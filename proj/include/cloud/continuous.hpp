#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cloud/discrete.hpp"

// Continuous-case machinery: unit-interval scaling, equal-width
// discretization, the continuous-to-discrete codelength correction, and the
// bin-grid search. A continuous codelength at bins (m_x, m_y) is the discrete
// codelength of the discretized sample plus one correction per axis; the
// precision constant shared by all models is dropped.

namespace cloud {

// Values in [0, 1); degenerate marks a constant input column.
struct ContinuousSeries {
    std::vector<double> values;
    bool degenerate = false;

    std::uint64_t n() const { return values.size(); }
};

// Integer labels in [0, m).
struct DiscreteSeries {
    std::vector<std::uint32_t> labels;
    std::uint32_t m = 1;

    std::uint64_t n() const { return labels.size(); }
};

// Candidate (m_x, m_y) bin pairs, kept sorted and unique so grid ties resolve
// to the lexicographically smallest pair.
struct BinGrid {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

    // kDefaultGridAxis on each axis.
    static BinGrid default_grid();
    // axis x axis.
    static BinGrid square(std::span<const std::uint32_t> axis);
};

// Roughly geometric from 2 to 64. The top of the range matters: directed
// models shed their residual misfit quadratically as bins shrink while the
// confounded model's complexity keeps growing, so capping the axis too low
// flips large-sample selections on directed data toward the confounded model.
inline const std::uint32_t kDefaultGridAxis[] = {2, 3, 4, 5, 6, 8, 10, 12, 16, 24, 32, 48, 64};

// v -> (v - min) / (max - min), with the top value nudged just below 1 so the
// half-open cells cover it. A constant column becomes all zeros and is
// flagged. Throws std::invalid_argument on non-finite input or empty input.
ContinuousSeries scale_to_unit(std::span<const double> raw);

// label = min(floor(v * m), m - 1); cells [k/m, (k+1)/m).
DiscreteSeries disc(const ContinuousSeries& x, std::uint32_t m);

// label / m; disc(cont(y, m), m) round-trips exactly.
ContinuousSeries cont(const DiscreteSeries& y, std::uint32_t m);

// L_c2d(m, n) = -n log2(m) + log*(m). A correction term; may be negative.
double l_c2d(std::uint32_t m, std::uint64_t n);

// Discretize both series at (m_x, m_y), evaluate the discrete codelength of
// the given model (directed models run the function search), add both
// corrections. Throws model_inapplicable when the model is undefined at these
// bins. f_out, when non-null, receives the fitted function of a directed
// model.
double codelength_continuous(const ContinuousSeries& x, const ContinuousSeries& y,
                             std::uint32_t m_x, std::uint32_t m_y, Model model,
                             std::uint32_t max_sweeps = 10,
                             FunctionMap* f_out = nullptr);

struct GridScore {
    double bits;                    // +inf when no grid pair is applicable
    std::uint32_t m_x = 0;          // minimizer, valid when bits is finite
    std::uint32_t m_y = 0;
    std::optional<FunctionMap> f;   // directed models only
};

// Minimum of codelength_continuous over the applicable grid pairs; ties go to
// the lexicographically smallest (m_x, m_y). Throws std::invalid_argument on
// an empty grid.
GridScore grid_min(const ContinuousSeries& x, const ContinuousSeries& y,
                   const BinGrid& grid, Model model, std::uint32_t max_sweeps = 10);

}  // namespace cloud
