#include "cloud/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cloud/function_search.hpp"
#include "cloud/nml.hpp"

namespace cloud {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Model kPreferenceOrder[] = {Model::Independent, Model::XtoY, Model::YtoX,
                                  Model::Confounded};

struct Eval {
    double bits = kInf;
    std::optional<FunctionMap> f;
};

// One model on one contingency table (X on rows). Directed models at arity 1
// are inapplicable and come back infinite.
Eval eval_model(const JointCounts& jc, Model model, std::uint32_t max_sweeps) {
    Eval e;
    switch (model) {
        case Model::Independent:
            e.bits = codelength_indep(jc);
            break;
        case Model::Confounded:
            e.bits = codelength_confounded(jc);
            break;
        case Model::XtoY: {
            if (jc.m_x < 2 || jc.m_y < 2) break;
            FunctionMap f = optimize_function(jc, max_sweeps);
            e.bits = codelength_directed(jc, Model::XtoY, f);
            e.f = std::move(f);
            break;
        }
        case Model::YtoX: {
            if (jc.m_x < 2 || jc.m_y < 2) break;
            const JointCounts jt = jc.transposed();
            FunctionMap g = optimize_function(jt, max_sweeps);
            e.bits = codelength_directed(jt, Model::XtoY, g);
            e.f = std::move(g);
            break;
        }
    }
    return e;
}

void validate_candidates(std::span<const Model> candidates) {
    if (candidates.empty()) throw std::invalid_argument("inference: empty candidate set");
}

bool wants(std::span<const Model> candidates, Model m) {
    return std::find(candidates.begin(), candidates.end(), m) != candidates.end();
}

// Argmin over the finite entries in preference order (strict improvement, so
// earlier models win ties) plus the confidence gap.
void finalize(InferenceResult& res) {
    double best = kInf;
    std::vector<double> bits;
    bits.reserve(res.per_model.size());
    for (const auto& [model, score] : res.per_model) {
        bits.push_back(score.bits);
        if (score.bits < best) {
            best = score.bits;
            res.selected = model;
        }
    }
    res.delta = delta_confidence(bits, res.n);
}

InferenceResult degenerate_result(std::uint64_t n, DataKind kind, ModelScore indep_score,
                                  std::string warning) {
    InferenceResult res;
    res.n = n;
    res.data_kind = kind;
    res.per_model.emplace_back(Model::Independent, std::move(indep_score));
    res.selected = Model::Independent;
    res.delta = 0.0;
    res.warnings.push_back(std::move(warning));
    return res;
}

}  // namespace

const char* data_kind_name(DataKind k) {
    switch (k) {
        case DataKind::Discrete: return "discrete";
        case DataKind::MixedXCont: return "mixed_x_cont";
        case DataKind::MixedYCont: return "mixed_y_cont";
        case DataKind::Continuous: return "continuous";
    }
    return "?";
}

std::span<const Model> all_models() { return kPreferenceOrder; }

const ModelScore* InferenceResult::score(Model m) const {
    for (const auto& [model, s] : per_model) {
        if (model == m) return &s;
    }
    return nullptr;
}

double delta_confidence(std::span<const double> bits, std::uint64_t n) {
    double best = kInf;
    double second = kInf;
    for (double b : bits) {
        if (!std::isfinite(b)) continue;
        if (b < best) {
            second = best;
            best = b;
        } else if (b < second) {
            second = b;
        }
    }
    if (!std::isfinite(second)) return 0.0;
    return (second - best) / double(n);
}

InferenceResult infer_discrete(const DiscreteSeries& x, const DiscreteSeries& y,
                               std::span<const Model> candidates,
                               std::uint32_t max_sweeps) {
    validate_candidates(candidates);
    if (x.n() != y.n()) throw std::invalid_argument("infer_discrete: column lengths differ");
    const std::uint64_t n = x.n();
    const JointCounts jc = JointCounts::from_labels(x.labels, y.labels, x.m, y.m);

    if (n < 4 || x.m < 2 || y.m < 2) {
        std::string why = n < 4 ? "short_sample" : (x.m < 2 ? "constant_x" : "constant_y");
        return degenerate_result(n, DataKind::Discrete,
                                 ModelScore{n > 0 ? codelength_indep(jc) : 0.0, {}, {}},
                                 "degenerate_input:" + why);
    }

    InferenceResult res;
    res.n = n;
    res.data_kind = DataKind::Discrete;
    for (Model m : kPreferenceOrder) {
        if (!wants(candidates, m)) continue;
        Eval e = eval_model(jc, m, max_sweeps);
        res.per_model.emplace_back(m, ModelScore{e.bits, {}, std::move(e.f)});
    }
    finalize(res);
    return res;
}

InferenceResult infer_continuous(std::span<const double> x_raw,
                                 std::span<const double> y_raw,
                                 const BinGrid& grid,
                                 std::span<const Model> candidates,
                                 std::uint32_t max_sweeps) {
    validate_candidates(candidates);
    if (x_raw.size() != y_raw.size()) {
        throw std::invalid_argument("infer_continuous: column lengths differ");
    }
    if (grid.pairs.empty()) throw std::invalid_argument("infer_continuous: empty grid");
    const std::uint64_t n = x_raw.size();
    const ContinuousSeries x = scale_to_unit(x_raw);
    const ContinuousSeries y = scale_to_unit(y_raw);

    if (n < 4 || x.degenerate || y.degenerate) {
        GridScore gs = grid_min(x, y, grid, Model::Independent, max_sweeps);
        std::string why = n < 4 ? "short_sample" : (x.degenerate ? "constant_x" : "constant_y");
        return degenerate_result(n, DataKind::Continuous,
                                 ModelScore{gs.bits, std::make_pair(gs.m_x, gs.m_y), {}},
                                 "degenerate_input:" + why);
    }

    InferenceResult res;
    res.n = n;
    res.data_kind = DataKind::Continuous;
    for (Model m : kPreferenceOrder) {
        if (!wants(candidates, m)) continue;
        res.per_model.emplace_back(m, ModelScore{kInf, {}, {}});
    }

    // Bin pair outer, models inner: each pair is discretized and tabulated
    // once, and every candidate reads the same table.
    for (const auto& [mx, my] : grid.pairs) {
        const DiscreteSeries dx = disc(x, mx);
        const DiscreteSeries dy = disc(y, my);
        const JointCounts jc = JointCounts::from_labels(dx.labels, dy.labels, mx, my);
        const double correction = l_c2d(mx, n) + l_c2d(my, n);
        for (auto& [model, score] : res.per_model) {
            Eval e = eval_model(jc, model, max_sweeps);
            if (!std::isfinite(e.bits)) continue;
            const double bits = e.bits + correction;
            if (bits < score.bits) {
                score.bits = bits;
                score.bins = std::make_pair(mx, my);
                score.f = std::move(e.f);
            }
        }
    }
    finalize(res);
    return res;
}

InferenceResult infer_mixed(std::span<const double> cont_raw,
                            const DiscreteSeries& discrete,
                            std::span<const std::uint32_t> grid_axis,
                            std::span<const Model> candidates,
                            bool orientation_x_cont,
                            std::uint32_t max_sweeps) {
    validate_candidates(candidates);
    if (cont_raw.size() != discrete.n()) {
        throw std::invalid_argument("infer_mixed: column lengths differ");
    }
    if (grid_axis.empty()) throw std::invalid_argument("infer_mixed: empty grid");
    const std::uint64_t n = cont_raw.size();
    const DataKind kind = orientation_x_cont ? DataKind::MixedXCont : DataKind::MixedYCont;
    const ContinuousSeries c = scale_to_unit(cont_raw);

    std::vector<std::uint32_t> axis(grid_axis.begin(), grid_axis.end());
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());

    // The discrete side keeps its arity as bin count; the grid applies to the
    // continuous side. Bins are reported in (named X, named Y) order.
    auto make_table = [&](std::uint32_t m) {
        const DiscreteSeries dc = disc(c, m);
        return orientation_x_cont
                   ? JointCounts::from_labels(dc.labels, discrete.labels, m, discrete.m)
                   : JointCounts::from_labels(discrete.labels, dc.labels, discrete.m, m);
    };
    auto bins_of = [&](std::uint32_t m) {
        return orientation_x_cont ? std::make_pair(m, discrete.m)
                                  : std::make_pair(discrete.m, m);
    };

    if (n < 4 || c.degenerate || discrete.m < 2) {
        double best = kInf;
        std::uint32_t best_m = 0;
        for (std::uint32_t m : axis) {
            const JointCounts jc = make_table(m);
            const double bits =
                codelength_indep(jc) + l_c2d(m, n) + l_c2d(discrete.m, n);
            if (bits < best) {
                best = bits;
                best_m = m;
            }
        }
        std::string why = n < 4 ? "short_sample"
                                : (c.degenerate ? (orientation_x_cont ? "constant_x" : "constant_y")
                                                : (orientation_x_cont ? "constant_y" : "constant_x"));
        return degenerate_result(n, kind, ModelScore{best, bins_of(best_m), {}},
                                 "degenerate_input:" + why);
    }

    InferenceResult res;
    res.n = n;
    res.data_kind = kind;
    for (Model m : kPreferenceOrder) {
        if (!wants(candidates, m)) continue;
        res.per_model.emplace_back(m, ModelScore{kInf, {}, {}});
    }

    for (std::uint32_t m : axis) {
        const JointCounts jc = make_table(m);
        const double correction = l_c2d(m, n) + l_c2d(discrete.m, n);
        for (auto& [model, score] : res.per_model) {
            Eval e = eval_model(jc, model, max_sweeps);
            if (!std::isfinite(e.bits)) continue;
            const double bits = e.bits + correction;
            if (bits < score.bits) {
                score.bits = bits;
                score.bins = bins_of(m);
                score.f = std::move(e.f);
            }
        }
    }
    finalize(res);
    return res;
}

}  // namespace cloud
