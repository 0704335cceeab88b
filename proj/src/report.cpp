#include "cloud/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cloud::report {
namespace {

using nlohmann::ordered_json;

Model model_from_name(const std::string& name) {
    if (name == "indep") return Model::Independent;
    if (name == "xy") return Model::XtoY;
    if (name == "yx") return Model::YtoX;
    if (name == "conf") return Model::Confounded;
    throw std::invalid_argument("report: unknown model name '" + name + "'");
}

DataKind data_kind_from_name(const std::string& name) {
    if (name == "discrete") return DataKind::Discrete;
    if (name == "mixed_x_cont") return DataKind::MixedXCont;
    if (name == "mixed_y_cont") return DataKind::MixedYCont;
    if (name == "continuous") return DataKind::Continuous;
    throw std::invalid_argument("report: unknown data kind '" + name + "'");
}

// JSON has no infinity; an inapplicable model's bits serialize as null.
ordered_json bits_to_json(double bits) {
    if (!std::isfinite(bits)) return nullptr;
    return bits;
}

double bits_from_json(const ordered_json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

ordered_json scaling_to_json(const ColumnScaling& s) {
    ordered_json j;
    j["applied"] = s.applied;
    if (s.applied) {
        j["min"] = s.min;
        j["max"] = s.max;
    }
    return j;
}

ColumnScaling scaling_from_json(const ordered_json& j) {
    ColumnScaling s;
    s.applied = j.at("applied").get<bool>();
    if (s.applied) {
        s.min = j.at("min").get<double>();
        s.max = j.at("max").get<double>();
    }
    return s;
}

}  // namespace

ordered_json to_json(const Report& r) {
    ordered_json j;
    j["version"] = r.provenance.version;
    j["input"] = r.provenance.input;
    if (r.provenance.seed) {
        j["seed"] = *r.provenance.seed;
    } else {
        j["seed"] = nullptr;
    }
    j["grid"] = r.provenance.grid_axis;
    j["scaling"]["x"] = scaling_to_json(r.provenance.x_scaling);
    j["scaling"]["y"] = scaling_to_json(r.provenance.y_scaling);
    j["data_kind"] = data_kind_name(r.result.data_kind);
    j["n"] = r.result.n;
    ordered_json pm;
    for (const auto& [model, score] : r.result.per_model) {
        ordered_json e;
        e["bits"] = bits_to_json(score.bits);
        if (score.bins) {
            e["bins"] = {score.bins->first, score.bins->second};
        } else {
            e["bins"] = nullptr;
        }
        if (score.f) {
            e["function"]["m_y"] = score.f->m_y;
            e["function"]["values"] = score.f->values;
        } else {
            e["function"] = nullptr;
        }
        pm[model_name(model)] = std::move(e);
    }
    j["per_model"] = std::move(pm);
    j["selected"] = model_name(r.result.selected);
    j["delta"] = r.result.delta;
    j["warnings"] = r.result.warnings;
    return j;
}

Report from_json(const ordered_json& j) {
    Report r;
    r.provenance.version = j.at("version").get<std::string>();
    r.provenance.input = j.at("input").get<std::string>();
    if (!j.at("seed").is_null()) r.provenance.seed = j.at("seed").get<std::uint64_t>();
    r.provenance.grid_axis = j.at("grid").get<std::vector<std::uint32_t>>();
    r.provenance.x_scaling = scaling_from_json(j.at("scaling").at("x"));
    r.provenance.y_scaling = scaling_from_json(j.at("scaling").at("y"));
    r.result.data_kind = data_kind_from_name(j.at("data_kind").get<std::string>());
    r.result.n = j.at("n").get<std::uint64_t>();
    for (const auto& [name, e] : j.at("per_model").items()) {
        ModelScore s;
        s.bits = bits_from_json(e.at("bits"));
        if (!e.at("bins").is_null()) {
            s.bins = std::make_pair(e.at("bins").at(0).get<std::uint32_t>(),
                                    e.at("bins").at(1).get<std::uint32_t>());
        }
        if (!e.at("function").is_null()) {
            FunctionMap f;
            f.m_y = e.at("function").at("m_y").get<std::uint32_t>();
            f.values = e.at("function").at("values").get<std::vector<std::uint32_t>>();
            s.f = std::move(f);
        }
        r.result.per_model.emplace_back(model_from_name(name), std::move(s));
    }
    r.result.selected = model_from_name(j.at("selected").get<std::string>());
    r.result.delta = j.at("delta").get<double>();
    r.result.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

std::string serialize(const Report& r) { return to_json(r).dump(2) + "\n"; }

Report parse(const std::string& text) { return from_json(ordered_json::parse(text)); }

}  // namespace cloud::report
