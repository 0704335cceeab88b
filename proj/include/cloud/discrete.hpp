#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// The four discrete causal-model codelengths over a contingency table:
// independent, confounded by a latent common cause, and the two directed
// additive-noise models with modular residuals.

namespace cloud {

enum class Model { Independent, XtoY, YtoX, Confounded };

const char* model_name(Model m);   // "indep" | "xy" | "yx" | "conf"

// Thrown when a model has no valid parameterization for the given arities
// (directed models need both arities >= 2; the non-constant function set is
// empty otherwise).
struct model_inapplicable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// m_x-by-m_y contingency table, row-major. The sufficient statistic for every
// discrete codelength.
struct JointCounts {
    std::vector<std::uint64_t> cells;
    std::uint32_t m_x = 0;
    std::uint32_t m_y = 0;
    std::uint64_t n = 0;

    JointCounts(std::uint32_t mx, std::uint32_t my);

    // Labels must lie in [0, mx) and [0, my); sizes must match.
    static JointCounts from_labels(std::span<const std::uint32_t> x,
                                   std::span<const std::uint32_t> y,
                                   std::uint32_t mx, std::uint32_t my);

    std::uint64_t& at(std::uint32_t i, std::uint32_t j) { return cells[std::size_t(i) * m_y + j]; }
    std::uint64_t at(std::uint32_t i, std::uint32_t j) const { return cells[std::size_t(i) * m_y + j]; }

    JointCounts transposed() const;
    std::vector<std::uint64_t> row_sums() const;   // marginal of X
    std::vector<std::uint64_t> col_sums() const;   // marginal of Y
};

// f: {0..m_x-1} -> {0..m_y-1}; the regression function of a directed model.
// Must not be constant when m_x >= 2.
struct FunctionMap {
    std::vector<std::uint32_t> values;
    std::uint32_t m_y = 0;

    bool is_constant() const;
    bool operator==(const FunctionMap&) const = default;
};

// r[k'] = sum_k table[k][(f(k) + k') mod m_y]; the counts of the modular
// residual Y - f(X). sum(r) == n.
std::vector<std::uint64_t> residual_counts(const JointCounts& counts, const FunctionMap& f);

// log2(m_y^(m_x - 1) - 1), the codelength of choosing one non-constant
// function up to constant shift. Computed as
// (m_x - 1) log2(m_y) + log2(1 - m_y^-(m_x-1)) to stay finite for large
// arities. Throws model_inapplicable when either arity is < 2.
double log_function_count(std::uint32_t m_x, std::uint32_t m_y);

// l_X + l_Y + log2 C(m_x, n) + log2 C(m_y, n).
double codelength_indep(const JointCounts& counts);

// Joint NLL + log2 C(m_x * m_y, n); identical to sc_categorical of the
// flattened table. The saturated model: its NLL term is a lower bound on
// every other model's.
double codelength_confounded(const JointCounts& counts);

// Directed model via two-stage coding: cause marginal NLL + residual NLL
// under f_hat + both complexity terms + the function codelength. For YtoX,
// f_hat maps Y-labels to X-labels and is applied to the transposed table.
double codelength_directed(const JointCounts& counts, Model direction, const FunctionMap& f_hat);

}  // namespace cloud
