#include "cloud/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cloud/function_search.hpp"
#include "cloud/kernels.hpp"
#include "cloud/nml.hpp"

namespace cloud {

BinGrid BinGrid::default_grid() {
    return square(kDefaultGridAxis);
}

BinGrid BinGrid::square(std::span<const std::uint32_t> axis) {
    std::vector<std::uint32_t> ax(axis.begin(), axis.end());
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
    BinGrid g;
    g.pairs.reserve(ax.size() * ax.size());
    for (std::uint32_t mx : ax) {
        for (std::uint32_t my : ax) g.pairs.emplace_back(mx, my);
    }
    return g;
}

ContinuousSeries scale_to_unit(std::span<const double> raw) {
    if (raw.empty()) throw std::invalid_argument("scale_to_unit: empty input");
    for (double v : raw) {
        if (!std::isfinite(v)) throw std::invalid_argument("scale_to_unit: non-finite value");
    }
    const auto [lo, hi] = kernels::minmax(raw.data(), raw.size());
    ContinuousSeries out;
    out.values.resize(raw.size());
    if (lo == hi) {
        std::fill(out.values.begin(), out.values.end(), 0.0);
        out.degenerate = true;
        return out;
    }
    // Map [lo, hi] onto [0, 1), capping at the largest double below 1 so the
    // maximum lands in the top half-open cell.
    const double top = std::nextafter(1.0, 0.0);
    kernels::affine_unit(raw.data(), raw.size(), lo, 1.0 / (hi - lo), top, out.values.data());
    return out;
}

DiscreteSeries disc(const ContinuousSeries& x, std::uint32_t m) {
    if (m == 0) throw std::invalid_argument("disc: m must be positive");
    DiscreteSeries out;
    out.m = m;
    out.labels.resize(x.values.size());
    if (!x.values.empty()) {
        kernels::discretize(x.values.data(), x.values.size(), m, out.labels.data());
    }
    return out;
}

ContinuousSeries cont(const DiscreteSeries& y, std::uint32_t m) {
    if (m != y.m) throw std::invalid_argument("cont: arity mismatch");
    ContinuousSeries out;
    out.values.resize(y.labels.size());
    for (std::size_t i = 0; i < y.labels.size(); ++i) {
        out.values[i] = double(y.labels[i]) / double(m);
    }
    return out;
}

double l_c2d(std::uint32_t m, std::uint64_t n) {
    return -double(n) * std::log2(double(m)) + log_star(m);
}

double codelength_continuous(const ContinuousSeries& x, const ContinuousSeries& y,
                             std::uint32_t m_x, std::uint32_t m_y, Model model,
                             std::uint32_t max_sweeps, FunctionMap* f_out) {
    if (x.values.size() != y.values.size()) {
        throw std::invalid_argument("codelength_continuous: series lengths differ");
    }
    const DiscreteSeries dx = disc(x, m_x);
    const DiscreteSeries dy = disc(y, m_y);
    const JointCounts jc = JointCounts::from_labels(dx.labels, dy.labels, m_x, m_y);
    const double correction = l_c2d(m_x, jc.n) + l_c2d(m_y, jc.n);
    switch (model) {
        case Model::Independent:
            return codelength_indep(jc) + correction;
        case Model::Confounded:
            return codelength_confounded(jc) + correction;
        case Model::XtoY: {
            FunctionMap f = optimize_function(jc, max_sweeps);
            const double bits = codelength_directed(jc, Model::XtoY, f) + correction;
            if (f_out != nullptr) *f_out = std::move(f);
            return bits;
        }
        case Model::YtoX: {
            const JointCounts jt = jc.transposed();
            FunctionMap g = optimize_function(jt, max_sweeps);
            const double bits = codelength_directed(jt, Model::XtoY, g) + correction;
            if (f_out != nullptr) *f_out = std::move(g);
            return bits;
        }
    }
    throw std::invalid_argument("codelength_continuous: unknown model");
}

GridScore grid_min(const ContinuousSeries& x, const ContinuousSeries& y,
                   const BinGrid& grid, Model model, std::uint32_t max_sweeps) {
    if (grid.pairs.empty()) throw std::invalid_argument("grid_min: empty grid");
    GridScore best;
    best.bits = std::numeric_limits<double>::infinity();
    for (const auto& [mx, my] : grid.pairs) {
        const bool directed = model == Model::XtoY || model == Model::YtoX;
        if (directed && (mx < 2 || my < 2)) continue;
        FunctionMap f;
        const double bits = codelength_continuous(x, y, mx, my, model, max_sweeps,
                                                  directed ? &f : nullptr);
        if (bits < best.bits) {
            best.bits = bits;
            best.m_x = mx;
            best.m_y = my;
            if (directed) best.f = std::move(f);
        }
    }
    return best;
}

}  // namespace cloud
