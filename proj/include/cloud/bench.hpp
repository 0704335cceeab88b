#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloud/selector.hpp"

// Benchmark reduction: per-trial inference outcomes folded into confusion
// matrices, accuracies, and the decision-rate curve. The fold is a pure
// function of the trial list in manifest order, so concurrent execution of
// the trials cannot change the summary.

namespace cloud::bench {

struct ManifestEntry {
    std::string file;
    std::string data_kind;   // "discrete" | "mixed" | "continuous"
    std::string truth;       // "indep" | "xy" | "yx" | "conf"
    std::string variant;     // "" | "nomod" | "linear" | "cubic"
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

std::vector<ManifestEntry> read_manifest(const std::string& path);
void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries);

struct TrialOutcome {
    std::string file;
    std::string data_kind;
    std::string truth;
    std::uint64_t n = 0;
    bool ok = false;          // inference completed
    Model selected = Model::Independent;
    double delta = 0.0;
    std::string error;        // set when !ok
};

// Confusion rows are truths, columns selections, both in model order
// indep, xy, yx, conf.
struct ConfusionMatrix {
    std::uint64_t cell[4][4] = {};
    std::uint64_t total = 0;
    std::uint64_t correct = 0;

    double accuracy() const { return total ? double(correct) / double(total) : 0.0; }
};

struct Summary {
    // keyed by (data_kind, n)
    std::map<std::pair<std::string, std::uint64_t>, ConfusionMatrix> groups;
    ConfusionMatrix overall;
    // accuracy among the top-d% trials by descending delta, d = 10..100 in
    // steps of 10; manifest order breaks delta ties.
    std::vector<std::pair<std::uint32_t, double>> decision_rate;
    std::uint64_t failed = 0;
};

Summary summarize(const std::vector<TrialOutcome>& outcomes);

nlohmann::ordered_json summary_to_json(const Summary& s);
// The confusion matrices as CSV blocks, one per group plus the overall one.
std::string summary_to_csv(const Summary& s);

}  // namespace cloud::bench
