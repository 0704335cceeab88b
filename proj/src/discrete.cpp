#include "cloud/discrete.hpp"

#include <cmath>

#include "cloud/nml.hpp"

namespace cloud {

const char* model_name(Model m) {
    switch (m) {
        case Model::Independent: return "indep";
        case Model::XtoY: return "xy";
        case Model::YtoX: return "yx";
        case Model::Confounded: return "conf";
    }
    return "?";
}

JointCounts::JointCounts(std::uint32_t mx, std::uint32_t my)
    : cells(std::size_t(mx) * my, 0), m_x(mx), m_y(my) {
    if (mx == 0 || my == 0) throw std::invalid_argument("JointCounts: arities must be positive");
}

JointCounts JointCounts::from_labels(std::span<const std::uint32_t> x,
                                     std::span<const std::uint32_t> y,
                                     std::uint32_t mx, std::uint32_t my) {
    if (x.size() != y.size()) throw std::invalid_argument("JointCounts: column lengths differ");
    JointCounts jc(mx, my);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= mx || y[i] >= my) throw std::invalid_argument("JointCounts: label out of range");
        ++jc.cells[std::size_t(x[i]) * my + y[i]];
    }
    jc.n = x.size();
    return jc;
}

JointCounts JointCounts::transposed() const {
    JointCounts t(m_y, m_x);
    for (std::uint32_t i = 0; i < m_x; ++i) {
        for (std::uint32_t j = 0; j < m_y; ++j) t.at(j, i) = at(i, j);
    }
    t.n = n;
    return t;
}

std::vector<std::uint64_t> JointCounts::row_sums() const {
    std::vector<std::uint64_t> r(m_x, 0);
    for (std::uint32_t i = 0; i < m_x; ++i) {
        for (std::uint32_t j = 0; j < m_y; ++j) r[i] += at(i, j);
    }
    return r;
}

std::vector<std::uint64_t> JointCounts::col_sums() const {
    std::vector<std::uint64_t> c(m_y, 0);
    for (std::uint32_t i = 0; i < m_x; ++i) {
        for (std::uint32_t j = 0; j < m_y; ++j) c[j] += at(i, j);
    }
    return c;
}

bool FunctionMap::is_constant() const {
    for (std::uint32_t v : values) {
        if (v != values[0]) return false;
    }
    return true;
}

std::vector<std::uint64_t> residual_counts(const JointCounts& counts, const FunctionMap& f) {
    if (f.values.size() != counts.m_x || f.m_y != counts.m_y) {
        throw std::invalid_argument("residual_counts: function does not fit the table");
    }
    const std::uint32_t my = counts.m_y;
    std::vector<std::uint64_t> r(my, 0);
    for (std::uint32_t k = 0; k < counts.m_x; ++k) {
        // Row k contributes its counts rotated left by f(k).
        const std::uint32_t fk = f.values[k];
        for (std::uint32_t kp = 0; kp < my; ++kp) {
            std::uint32_t j = fk + kp;
            if (j >= my) j -= my;
            r[kp] += counts.at(k, j);
        }
    }
    return r;
}

double log_function_count(std::uint32_t m_x, std::uint32_t m_y) {
    if (m_x < 2 || m_y < 2) {
        throw model_inapplicable("directed model undefined: no non-constant functions for arity < 2");
    }
    // log2(m_y^(m_x-1) - 1) without forming the power.
    const double e = double(m_x - 1) * std::log2(double(m_y));
    return e + std::log2(1.0 - std::exp2(-e));
}

double codelength_indep(const JointCounts& counts) {
    return categorical_nll(counts.row_sums()) + categorical_nll(counts.col_sums()) +
           log_multinomial_complexity(counts.m_x, counts.n) +
           log_multinomial_complexity(counts.m_y, counts.n);
}

double codelength_confounded(const JointCounts& counts) {
    return categorical_nll(counts.cells) +
           log_multinomial_complexity(std::uint64_t(counts.m_x) * counts.m_y, counts.n);
}

double codelength_directed(const JointCounts& counts, Model direction, const FunctionMap& f_hat) {
    if (direction == Model::YtoX) {
        return codelength_directed(counts.transposed(), Model::XtoY, f_hat);
    }
    if (direction != Model::XtoY) {
        throw std::invalid_argument("codelength_directed: direction must be XtoY or YtoX");
    }
    return categorical_nll(counts.row_sums()) +
           categorical_nll(residual_counts(counts, f_hat)) +
           log_multinomial_complexity(counts.m_x, counts.n) +
           log_multinomial_complexity(counts.m_y, counts.n) +
           log_function_count(counts.m_x, counts.m_y);
}

}  // namespace cloud
