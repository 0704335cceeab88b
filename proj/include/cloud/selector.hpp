#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cloud/continuous.hpp"
#include "cloud/discrete.hpp"

// Top-level inference: evaluate every candidate model's codelength and select
// the argmin. Ties prefer the model with smaller parametric complexity:
// Independent > XtoY > YtoX > Confounded.

namespace cloud {

enum class DataKind { Discrete, MixedXCont, MixedYCont, Continuous };

const char* data_kind_name(DataKind k);

// The four models in tie-preference order.
std::span<const Model> all_models();

struct ModelScore {
    double bits;                                              // +inf: inapplicable
    std::optional<std::pair<std::uint32_t, std::uint32_t>> bins;  // continuous/mixed minimizer
    std::optional<FunctionMap> f;                             // directed models

    bool operator==(const ModelScore&) const = default;
};

struct InferenceResult {
    std::vector<std::pair<Model, ModelScore>> per_model;  // in preference order
    Model selected = Model::Independent;
    double delta = 0.0;            // bits per sample between best and runner-up
    std::uint64_t n = 0;
    DataKind data_kind = DataKind::Discrete;
    std::vector<std::string> warnings;

    const ModelScore* score(Model m) const;
    bool operator==(const InferenceResult&) const = default;
};

// (second smallest - smallest) / n over the finite entries; 0 when fewer than
// two are finite.
double delta_confidence(std::span<const double> bits, std::uint64_t n);

// Contingency-table inference over the given candidates (all four when empty
// is rejected: throws std::invalid_argument). Degenerate input (an arity-1
// column or n < 4) forces Independent with a warning, reporting only that
// model.
InferenceResult infer_discrete(const DiscreteSeries& x, const DiscreteSeries& y,
                               std::span<const Model> candidates,
                               std::uint32_t max_sweeps = 10);

// Scales both columns, runs the bin-grid search per candidate, selects the
// overall argmin. Constant columns and n < 4 take the degenerate path.
InferenceResult infer_continuous(std::span<const double> x_raw,
                                 std::span<const double> y_raw,
                                 const BinGrid& grid,
                                 std::span<const Model> candidates,
                                 std::uint32_t max_sweeps = 10);

// One continuous and one discrete column. The discrete side's bin count is
// fixed to its arity; the grid axis applies to the continuous side only.
// orientation_x_cont tells whether the continuous column is the one named X;
// XtoY always means "column named X causes column named Y".
InferenceResult infer_mixed(std::span<const double> cont_raw,
                            const DiscreteSeries& discrete,
                            std::span<const std::uint32_t> grid_axis,
                            std::span<const Model> candidates,
                            bool orientation_x_cont,
                            std::uint32_t max_sweeps = 10);

}  // namespace cloud
