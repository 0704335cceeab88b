#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cloud/selector.hpp"

// Seeded synthetic generators for the benchmark scenarios: the twelve
// (data kind x causal relationship) cells with modular additive noise, and
// the assumption-violating direct cases where addition is taken over the
// integers or reals without wraparound.

namespace cloud {

enum class Scenario {
    // Modular-noise cells. Mixed cells have continuous X, discrete Y.
    DiscIndep, DiscXtoY, DiscYtoX, DiscConf,
    MixIndep, MixXtoY, MixYtoX, MixConf,
    ContIndep, ContXtoY, ContYtoX, ContConf,
    // Non-cyclic direct cases (truth XtoY, no modulo).
    DiscDirectNoMod, MixDirectNoMod, ContDirectLinear, ContDirectCubic,
};

// Stable tag used by the CLI and manifests, e.g. "disc_conf", "cont_direct_cubic".
const char* scenario_tag(Scenario s);
std::optional<Scenario> scenario_from_tag(const std::string& tag);

Model scenario_truth(Scenario s);
DataKind scenario_data_kind(Scenario s);   // mixed cells report MixedXCont
// "" for the modular cells; "nomod", "linear", "cubic" for the direct cases.
const char* scenario_variant(Scenario s);

struct ScenarioSpec {
    Scenario scenario;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

// Raw paired sample. Discrete columns hold integer values (not yet 0-based
// labels); ingestion re-indexes them the same way the CSV path does.
struct GeneratedPair {
    DataKind kind;
    std::vector<double> x;
    std::vector<double> y;
};

// Deterministic in (spec, trial). Throws std::invalid_argument for n == 0 and
// std::runtime_error if a rejection loop exhausts its retry budget.
GeneratedPair generate(const ScenarioSpec& spec, std::uint64_t trial);

// The non-cyclic direct cases only; rejects other scenarios.
GeneratedPair non_cyclic_direct(const ScenarioSpec& spec, std::uint64_t trial);

}  // namespace cloud
