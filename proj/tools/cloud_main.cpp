#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cloud/bench.hpp"
#include "cloud/datagen.hpp"
#include "cloud/io.hpp"
#include "cloud/kernels.hpp"
#include "cloud/report.hpp"
#include "cloud/selector.hpp"

// Exit codes: 0 inference completed, 1 internal/trial failures, 2 data errors
// (unreadable input, unresolvable column, non-numeric cell, unknown scenario,
// empty manifest). Warnings inside a report never change the exit status.

namespace {

namespace fs = std::filesystem;
using cloud::BinGrid;
using cloud::DataKind;
using cloud::Model;

struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Model> parse_models(const std::string& arg) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : arg + ",") {
        if (c == ',') {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    std::vector<Model> models;
    for (Model m : cloud::all_models()) {
        for (const std::string& t : tokens) {
            if (t == cloud::model_name(m)) {
                models.push_back(m);
                break;
            }
        }
    }
    if (models.size() != tokens.size()) {
        throw data_error("unknown model in --models '" + arg +
                         "' (expected a subset of indep,xy,yx,conf)");
    }
    if (models.empty()) throw data_error("--models selects nothing");
    return models;
}

char parse_delimiter(const std::string& arg) {
    if (arg.empty()) return '\0';
    if (arg == "tab") return '\t';
    if (arg == "space") return ' ';
    if (arg == "comma") return ',';
    if (arg.size() == 1) return arg[0];
    throw data_error("--delimiter must be one character, 'tab', 'space', or 'comma'");
}

unsigned thread_budget(std::size_t work_items) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("CLOUD_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = unsigned(v);
    }
    if (n < 1) n = 1;
    if (work_items < n) n = unsigned(work_items);
    return n;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw data_error(path + ": cannot write");
    out << text;
    if (!out) throw data_error(path + ": write failed");
}

// ---------------------------------------------------------------- infer ----

struct InferOptions {
    std::string input;
    std::string x_col = "0";
    std::string y_col = "1";
    std::string x_type = "auto";
    std::string y_type = "auto";
    std::string models = "indep,xy,yx,conf";
    std::vector<std::uint32_t> grid_axis{std::begin(cloud::kDefaultGridAxis),
                                         std::end(cloud::kDefaultGridAxis)};
    std::string delimiter;
    std::string output;
    std::uint32_t max_sweeps = 10;
    std::uint32_t auto_discrete_max = 20;
    std::optional<std::uint64_t> seed;
};

cloud::io::ColumnType parse_type(const std::string& t) {
    if (t == "auto") return cloud::io::ColumnType::Auto;
    if (t == "discrete") return cloud::io::ColumnType::Discrete;
    if (t == "continuous") return cloud::io::ColumnType::Continuous;
    throw data_error("column type must be auto, discrete, or continuous");
}

cloud::report::Report run_infer(const InferOptions& opt) {
    const cloud::io::CsvData data = cloud::io::read_table(opt.input, parse_delimiter(opt.delimiter));
    const std::size_t xi = cloud::io::resolve_column(data, opt.x_col);
    const std::size_t yi = cloud::io::resolve_column(data, opt.y_col);
    const std::vector<double>& xcol = data.columns[xi];
    const std::vector<double>& ycol = data.columns[yi];
    if (xcol.empty()) throw data_error(opt.input + ": no data rows");

    using cloud::io::ColumnType;
    const ColumnType xt =
        cloud::io::resolve_type(xcol, parse_type(opt.x_type), opt.auto_discrete_max);
    const ColumnType yt =
        cloud::io::resolve_type(ycol, parse_type(opt.y_type), opt.auto_discrete_max);

    const std::vector<Model> candidates = parse_models(opt.models);
    cloud::report::Report rep;
    rep.provenance.input = opt.input;
    rep.provenance.grid_axis = opt.grid_axis;
    rep.provenance.seed = opt.seed;

    auto scaling_of = [](const std::vector<double>& col) {
        cloud::report::ColumnScaling s;
        s.applied = true;
        const auto mm = cloud::kernels::minmax(col.data(), col.size());
        s.min = mm.lo;
        s.max = mm.hi;
        return s;
    };

    if (xt == ColumnType::Discrete && yt == ColumnType::Discrete) {
        rep.result = cloud::infer_discrete(cloud::io::relabel_discrete(xcol),
                                           cloud::io::relabel_discrete(ycol), candidates,
                                           opt.max_sweeps);
    } else if (xt == ColumnType::Continuous && yt == ColumnType::Continuous) {
        rep.result = cloud::infer_continuous(xcol, ycol, BinGrid::square(opt.grid_axis),
                                             candidates, opt.max_sweeps);
        rep.provenance.x_scaling = scaling_of(xcol);
        rep.provenance.y_scaling = scaling_of(ycol);
    } else if (xt == ColumnType::Continuous) {
        rep.result = cloud::infer_mixed(xcol, cloud::io::relabel_discrete(ycol),
                                        opt.grid_axis, candidates,
                                        /*orientation_x_cont=*/true, opt.max_sweeps);
        rep.provenance.x_scaling = scaling_of(xcol);
    } else {
        rep.result = cloud::infer_mixed(ycol, cloud::io::relabel_discrete(xcol),
                                        opt.grid_axis, candidates,
                                        /*orientation_x_cont=*/false, opt.max_sweeps);
        rep.provenance.y_scaling = scaling_of(ycol);
    }
    return rep;
}

// ------------------------------------------------------------------ gen ----

struct GenOptions {
    std::string scenario;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint32_t count = 1;
    std::string output_dir;
};

std::string trial_file_name(const std::string& tag, std::uint64_t n, std::uint32_t trial) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_t%05u.csv", trial);
    return tag + "_n" + std::to_string(n) + buf;
}

const char* coarse_kind(DataKind k) {
    switch (k) {
        case DataKind::Discrete: return "discrete";
        case DataKind::Continuous: return "continuous";
        default: return "mixed";
    }
}

void run_gen(const GenOptions& opt) {
    const auto scenario = cloud::scenario_from_tag(opt.scenario);
    if (!scenario) throw data_error("unknown scenario '" + opt.scenario + "'");
    if (opt.n == 0) throw data_error("--n must be positive");
    fs::create_directories(opt.output_dir);

    cloud::ScenarioSpec spec{*scenario, opt.n, opt.seed};
    std::vector<cloud::bench::ManifestEntry> manifest;
    for (std::uint32_t t = 0; t < opt.count; ++t) {
        const cloud::GeneratedPair pair = cloud::generate(spec, t);
        const std::string name = trial_file_name(opt.scenario, opt.n, t);
        cloud::io::write_pair_csv((fs::path(opt.output_dir) / name).string(), pair.x,
                                  pair.y, "x", "y");
        manifest.push_back({name, coarse_kind(pair.kind),
                            cloud::model_name(cloud::scenario_truth(*scenario)),
                            cloud::scenario_variant(*scenario), opt.n, opt.seed});
    }
    cloud::bench::write_manifest((fs::path(opt.output_dir) / "manifest.json").string(),
                                 manifest);
}

// ---------------------------------------------------------------- bench ----

struct BenchOptions {
    std::string manifest;
    std::vector<std::uint32_t> grid_axis{std::begin(cloud::kDefaultGridAxis),
                                         std::end(cloud::kDefaultGridAxis)};
    std::string output = "bench";
    std::uint32_t max_sweeps = 10;
};

cloud::bench::TrialOutcome run_trial(const cloud::bench::ManifestEntry& entry,
                                     const fs::path& base, const BenchOptions& opt) {
    cloud::bench::TrialOutcome out;
    out.file = entry.file;
    out.data_kind = entry.data_kind;
    out.truth = entry.truth;
    out.n = entry.n;
    try {
        const cloud::io::CsvData data =
            cloud::io::read_table((base / entry.file).string());
        if (data.columns.size() < 2) throw data_error(entry.file + ": need two columns");
        const std::vector<double>& x = data.columns[0];
        const std::vector<double>& y = data.columns[1];
        cloud::InferenceResult res;
        if (entry.data_kind == "discrete") {
            res = cloud::infer_discrete(cloud::io::relabel_discrete(x),
                                        cloud::io::relabel_discrete(y),
                                        cloud::all_models(), opt.max_sweeps);
        } else if (entry.data_kind == "mixed") {
            res = cloud::infer_mixed(x, cloud::io::relabel_discrete(y), opt.grid_axis,
                                     cloud::all_models(), /*orientation_x_cont=*/true,
                                     opt.max_sweeps);
        } else if (entry.data_kind == "continuous") {
            res = cloud::infer_continuous(x, y, BinGrid::square(opt.grid_axis),
                                          cloud::all_models(), opt.max_sweeps);
        } else {
            throw data_error(entry.file + ": unknown data_kind '" + entry.data_kind + "'");
        }
        out.ok = true;
        out.selected = res.selected;
        out.delta = res.delta;
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
    }
    return out;
}

int run_bench(const BenchOptions& opt) {
    const std::vector<cloud::bench::ManifestEntry> entries =
        cloud::bench::read_manifest(opt.manifest);
    if (entries.empty()) throw data_error(opt.manifest + ": empty manifest");
    const fs::path base = fs::path(opt.manifest).parent_path();

    // Trials run concurrently; outcomes land in manifest order, so the
    // reduction below is identical for every thread count.
    std::vector<cloud::bench::TrialOutcome> outcomes(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < entries.size();) {
            outcomes[i] = run_trial(entries[i], base, opt);
        }
    };
    const unsigned threads = thread_budget(entries.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    const cloud::bench::Summary summary = cloud::bench::summarize(outcomes);
    write_text(opt.output + ".json", cloud::bench::summary_to_json(summary).dump(2) + "\n");
    write_text(opt.output + ".csv", cloud::bench::summary_to_csv(summary));
    if (summary.failed > 0) {
        std::cerr << summary.failed << " trial(s) failed";
        for (const auto& o : outcomes) {
            if (!o.ok) {
                std::cerr << ": " << o.error;
                break;
            }
        }
        std::cerr << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Codelength-based causal relationship inference"};
    app.set_version_flag("--version", cloud::report::kVersion);
    app.require_subcommand(1);

    InferOptions infer_opt;
    std::uint64_t seed_flag = 0;
    CLI::App* infer = app.add_subcommand("infer", "Infer the causal relationship of two columns");
    infer->add_option("input", infer_opt.input, "Delimiter-separated input file")->required();
    infer->add_option("--x-col", infer_opt.x_col, "X column name or 0-based index");
    infer->add_option("--y-col", infer_opt.y_col, "Y column name or 0-based index");
    infer->add_option("--x-type", infer_opt.x_type, "auto|discrete|continuous");
    infer->add_option("--y-type", infer_opt.y_type, "auto|discrete|continuous");
    infer->add_option("--models", infer_opt.models, "Candidate subset of indep,xy,yx,conf");
    infer->add_option("--grid", infer_opt.grid_axis, "Bin candidates per axis")->delimiter(',');
    infer->add_option("--delimiter", infer_opt.delimiter, "Field delimiter (default: auto)");
    infer->add_option("--max-sweeps", infer_opt.max_sweeps, "Function-search sweep limit");
    infer->add_option("--auto-discrete-max", infer_opt.auto_discrete_max,
                      "Auto-typing distinct-value threshold");
    infer->add_option("--output", infer_opt.output, "Report path (default: stdout)");
    CLI::Option* seed_opt = infer->add_option("--seed", seed_flag, "Recorded in provenance");

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "Generate synthetic benchmark data");
    gen->add_option("--scenario", gen_opt.scenario, "Scenario tag, e.g. disc_conf")->required();
    gen->add_option("--n", gen_opt.n, "Sample size per trial")->required();
    gen->add_option("--seed", gen_opt.seed, "Master seed");
    gen->add_option("--count", gen_opt.count, "Number of trials");
    gen->add_option("--output", gen_opt.output_dir, "Output directory")->required();

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "Run inference over a manifest");
    bench->add_option("manifest", bench_opt.manifest, "Manifest JSON from gen")->required();
    bench->add_option("--grid", bench_opt.grid_axis, "Bin candidates per axis")->delimiter(',');
    bench->add_option("--max-sweeps", bench_opt.max_sweeps, "Function-search sweep limit");
    bench->add_option("--output", bench_opt.output, "Output base path (.json/.csv appended)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (infer->parsed()) {
            if (seed_opt->count() > 0) infer_opt.seed = seed_flag;
            const cloud::report::Report rep = run_infer(infer_opt);
            const std::string text = cloud::report::serialize(rep);
            if (infer_opt.output.empty()) {
                std::cout << text;
            } else {
                write_text(infer_opt.output, text);
            }
            return 0;
        }
        if (gen->parsed()) {
            run_gen(gen_opt);
            return 0;
        }
        return run_bench(bench_opt);
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cloud::io::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
