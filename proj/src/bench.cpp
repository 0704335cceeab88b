#include "cloud/bench.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cloud/report.hpp"

namespace cloud::bench {
namespace {

using nlohmann::ordered_json;

const char* kModelNames[4] = {"indep", "xy", "yx", "conf"};

int model_index(const std::string& name) {
    for (int i = 0; i < 4; ++i) {
        if (name == kModelNames[i]) return i;
    }
    throw std::invalid_argument("bench: unknown model name '" + name + "'");
}

int model_index(Model m) {
    switch (m) {
        case Model::Independent: return 0;
        case Model::XtoY: return 1;
        case Model::YtoX: return 2;
        case Model::Confounded: return 3;
    }
    return 0;
}

void tally(ConfusionMatrix& cm, const TrialOutcome& t) {
    const int r = model_index(t.truth);
    const int c = model_index(t.selected);
    ++cm.cell[r][c];
    ++cm.total;
    if (r == c) ++cm.correct;
}

ordered_json confusion_to_json(const ConfusionMatrix& cm) {
    ordered_json j;
    j["total"] = cm.total;
    j["correct"] = cm.correct;
    j["accuracy"] = cm.accuracy();
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < 4; ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < 4; ++c) row.push_back(cm.cell[r][c]);
        rows.push_back(std::move(row));
    }
    j["confusion"] = std::move(rows);
    return j;
}

void confusion_to_csv(std::ostringstream& out, const std::string& title,
                      const ConfusionMatrix& cm) {
    out << "# " << title << "\n";
    out << "truth\\selected";
    for (const char* name : kModelNames) out << ',' << name;
    out << "\n";
    for (int r = 0; r < 4; ++r) {
        out << kModelNames[r];
        for (int c = 0; c < 4; ++c) out << ',' << cm.cell[r][c];
        out << "\n";
    }
}

}  // namespace

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    ordered_json j;
    in >> j;
    if (!j.is_array()) throw std::runtime_error(path + ": manifest must be a JSON array");
    std::vector<ManifestEntry> entries;
    entries.reserve(j.size());
    for (const auto& e : j) {
        ManifestEntry m;
        m.file = e.at("file").get<std::string>();
        m.data_kind = e.at("data_kind").get<std::string>();
        m.truth = e.at("truth").get<std::string>();
        m.variant = e.value("variant", std::string());
        m.n = e.at("n").get<std::uint64_t>();
        m.seed = e.at("seed").get<std::uint64_t>();
        entries.push_back(std::move(m));
    }
    return entries;
}

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
    ordered_json j = ordered_json::array();
    for (const ManifestEntry& m : entries) {
        ordered_json e;
        e["file"] = m.file;
        e["data_kind"] = m.data_kind;
        e["truth"] = m.truth;
        e["variant"] = m.variant;
        e["n"] = m.n;
        e["seed"] = m.seed;
        j.push_back(std::move(e));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write");
    out << j.dump(2) << "\n";
}

Summary summarize(const std::vector<TrialOutcome>& outcomes) {
    Summary s;
    for (const TrialOutcome& t : outcomes) {
        if (!t.ok) {
            ++s.failed;
            continue;
        }
        tally(s.overall, t);
        tally(s.groups[{t.data_kind, t.n}], t);
    }

    // Decision-rate curve: trials ranked by confidence, accuracy among the
    // top ceil(d% * count). Stable sort keeps input order on equal deltas.
    std::vector<const TrialOutcome*> ranked;
    for (const TrialOutcome& t : outcomes) {
        if (t.ok) ranked.push_back(&t);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const TrialOutcome* a, const TrialOutcome* b) {
                         return a->delta > b->delta;
                     });
    for (std::uint32_t d = 10; d <= 100; d += 10) {
        const std::size_t k = (ranked.size() * d + 99) / 100;
        std::uint64_t correct = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (model_index(ranked[i]->truth) == model_index(ranked[i]->selected)) ++correct;
        }
        s.decision_rate.emplace_back(d, k > 0 ? double(correct) / double(k) : 0.0);
    }
    return s;
}

ordered_json summary_to_json(const Summary& s) {
    ordered_json j;
    j["version"] = report::kVersion;
    j["labels"] = kModelNames;
    j["overall"] = confusion_to_json(s.overall);
    j["overall"]["failed"] = s.failed;
    ordered_json groups = ordered_json::array();
    for (const auto& [key, cm] : s.groups) {
        ordered_json g;
        g["data_kind"] = key.first;
        g["n"] = key.second;
        ordered_json body = confusion_to_json(cm);
        for (auto& [k, v] : body.items()) g[k] = v;
        groups.push_back(std::move(g));
    }
    j["groups"] = std::move(groups);
    ordered_json dr = ordered_json::array();
    for (const auto& [d, acc] : s.decision_rate) {
        ordered_json e;
        e["d"] = d;
        e["accuracy"] = acc;
        dr.push_back(std::move(e));
    }
    j["decision_rate"] = std::move(dr);
    return j;
}

std::string summary_to_csv(const Summary& s) {
    std::ostringstream out;
    confusion_to_csv(out, "overall", s.overall);
    for (const auto& [key, cm] : s.groups) {
        confusion_to_csv(out, key.first + " n=" + std::to_string(key.second), cm);
    }
    out << "# decision_rate\nd,accuracy\n";
    for (const auto& [d, acc] : s.decision_rate) {
        out << d << ',' << acc << "\n";
    }
    return out.str();
}

}  // namespace cloud::bench
