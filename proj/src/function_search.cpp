#include "cloud/function_search.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cloud/nml.hpp"

namespace cloud {
namespace {

void require_directed_arities(const JointCounts& counts) {
    if (counts.m_x < 2 || counts.m_y < 2) {
        throw model_inapplicable("function search needs both arities >= 2");
    }
}

// NLL of residual vector r (sum n), O(m_y).
double residual_nll(const std::vector<std::uint64_t>& r) {
    return categorical_nll(r);
}

// Row k's contribution to the residual at shift v: counts.at(k, (v+kp) mod m_y)
// added into r[kp].
void add_row(const JointCounts& counts, std::uint32_t k, std::uint32_t v,
             std::vector<std::uint64_t>& r, bool subtract) {
    const std::uint32_t my = counts.m_y;
    for (std::uint32_t kp = 0; kp < my; ++kp) {
        std::uint32_t j = v + kp;
        if (j >= my) j -= my;
        if (subtract) {
            r[kp] -= counts.at(k, j);
        } else {
            r[kp] += counts.at(k, j);
        }
    }
}

}  // namespace

FunctionMap init_function(const JointCounts& counts) {
    require_directed_arities(counts);
    FunctionMap f;
    f.m_y = counts.m_y;
    f.values.resize(counts.m_x);
    for (std::uint32_t x = 0; x < counts.m_x; ++x) {
        std::uint32_t best = 0;
        for (std::uint32_t y = 1; y < counts.m_y; ++y) {
            if (counts.at(x, y) > counts.at(x, best)) best = y;
        }
        f.values[x] = best;
    }
    if (!f.is_constant()) return f;

    // Constant argmax: flip the row whose second-best count is largest to its
    // second-best value. Ties go to the smallest x, then the smallest y.
    std::uint32_t best_x = 0;
    std::uint32_t best_y = 0;
    std::uint64_t best_count = 0;
    bool found = false;
    for (std::uint32_t x = 0; x < counts.m_x; ++x) {
        for (std::uint32_t y = 0; y < counts.m_y; ++y) {
            if (y == f.values[x]) continue;
            if (!found || counts.at(x, y) > best_count) {
                found = true;
                best_count = counts.at(x, y);
                best_x = x;
                best_y = y;
            }
        }
    }
    f.values[best_x] = best_y;
    return f;
}

double conditional_nll(const JointCounts& counts, const FunctionMap& f) {
    return categorical_nll(residual_counts(counts, f));
}

FunctionMap optimize_function(const JointCounts& counts, std::uint32_t max_sweeps) {
    if (max_sweeps == 0) throw std::invalid_argument("optimize_function: max_sweeps must be >= 1");
    require_directed_arities(counts);

    FunctionMap f = init_function(counts);
    std::vector<std::uint64_t> r = residual_counts(counts, f);
    double best_nll = residual_nll(r);

    // Histogram of current f values; a candidate v for row x would make the
    // map constant exactly when every other row already holds v.
    std::vector<std::uint32_t> hist(counts.m_y, 0);
    for (std::uint32_t v : f.values) ++hist[v];

    std::vector<std::uint64_t> cand(counts.m_y);
    for (std::uint32_t sweep = 0; sweep < max_sweeps; ++sweep) {
        bool changed = false;
        for (std::uint32_t x = 0; x < counts.m_x; ++x) {
            const std::uint32_t incumbent = f.values[x];
            --hist[incumbent];
            add_row(counts, x, incumbent, r, /*subtract=*/true);

            // Strict improvement only: ties keep the incumbent, and among new
            // values the ascending scan keeps the smallest.
            std::uint32_t best_v = incumbent;
            for (std::uint32_t v = 0; v < counts.m_y; ++v) {
                if (v == incumbent) continue;
                if (hist[v] == counts.m_x - 1) continue;   // would go constant
                cand = r;
                add_row(counts, x, v, cand, /*subtract=*/false);
                const double nll = residual_nll(cand);
                if (nll < best_nll) {
                    best_nll = nll;
                    best_v = v;
                }
            }

            add_row(counts, x, best_v, r, /*subtract=*/false);
            ++hist[best_v];
            if (best_v != incumbent) {
                f.values[x] = best_v;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return f;
}

}  // namespace cloud
