#pragma once

#include <cstdint>

#include "cloud/discrete.hpp"

// Maximum-likelihood estimation of the regression function by coordinate
// ascent over the contingency table. Deterministic: fixed sweep order and tie
// rules make repeated runs identical.

namespace cloud {

// f(x) = argmax_y table[x][y], ties toward the smallest y. A constant result
// is repaired by switching the row with the largest second-best count to that
// second-best value. Throws model_inapplicable for arities < 2.
FunctionMap init_function(const JointCounts& counts);

// categorical_nll of residual_counts(counts, f); the l_{Y|X}(f) term.
double conditional_nll(const JointCounts& counts, const FunctionMap& f);

// Coordinate ascent from init_function: sweep x ascending, for each x pick the
// value minimizing the residual NLL subject to the map staying non-constant
// (strict improvement only, so ties keep the incumbent; among new values the
// smallest y wins). Stops when a full sweep changes nothing or after
// max_sweeps. The residual NLL never increases across accepted updates.
FunctionMap optimize_function(const JointCounts& counts, std::uint32_t max_sweeps = 10);

}  // namespace cloud
