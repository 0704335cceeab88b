#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloud/selector.hpp"

// Inference reports as JSON with a fixed field order, so identical runs are
// byte-identical. Serialization is lossless: parse(serialize(r)) == r.

namespace cloud::report {

inline constexpr const char* kVersion = "cloud 1.0.0";

// Per-column scaling transform applied before inference; absent for discrete
// columns.
struct ColumnScaling {
    bool applied = false;
    double min = 0.0;
    double max = 0.0;

    bool operator==(const ColumnScaling&) const = default;
};

struct Provenance {
    std::string input;                     // path or "-"
    std::vector<std::uint32_t> grid_axis;  // per-axis bin candidates used
    ColumnScaling x_scaling;
    ColumnScaling y_scaling;
    std::optional<std::uint64_t> seed;
    std::string version = kVersion;

    bool operator==(const Provenance&) const = default;
};

struct Report {
    Provenance provenance;
    InferenceResult result;

    bool operator==(const Report&) const = default;
};

nlohmann::ordered_json to_json(const Report& r);
Report from_json(const nlohmann::ordered_json& j);

std::string serialize(const Report& r);   // 2-space indent, trailing newline
Report parse(const std::string& text);

}  // namespace cloud::report
