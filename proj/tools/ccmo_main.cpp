// Command-line front end: single runs, seeded batches, component ablations,
// PF sampling and classifier score-field dumps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccmo/harness.hpp"
#include "ccmo/variation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ConfigCli {
    std::string config_file;
    std::string problem;
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t max_fes = 0;
    std::uint64_t seed = 0;
    double alpha = -1.0;
    std::size_t theta = 0;
    double svm_s = 0.0;
    double svm_c = 0.0;
    std::size_t n_keep_factor = 0;
    std::string scalarizer;
    int adaptation = -1;    // -1 unset, 0 off, 1 on
    int normalization = -1; // -1 unset
};

void add_config_options(CLI::App* cmd, ConfigCli& c) {
    cmd->add_option("--config", c.config_file, "JSON config file (base values)");
    cmd->add_option("--problem", c.problem, "problem name (dtlz1|dtlz2|cdtlz3|dtlz7|wfg1|maf1)");
    cmd->add_option("--m", c.m, "number of objectives");
    cmd->add_option("--n", c.n, "population size");
    cmd->add_option("--max-fes", c.max_fes, "FE budget (0: max(1e5, D*1e4))");
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_option("--alpha", c.alpha, "PDM/PBI alpha");
    cmd->add_option("--theta", c.theta, "stability threshold (0: auto schedule)");
    cmd->add_option("--svm-s", c.svm_s, "SVM kernel scale");
    cmd->add_option("--svm-c", c.svm_c, "SVM regularization");
    cmd->add_option("--n-keep-factor", c.n_keep_factor, "keep at least factor*N reference points");
    cmd->add_option("--scalarizer", c.scalarizer, "pdm|pbi");
    cmd->add_option("--adaptation", c.adaptation, "reference adaptation on (1) or off (0)");
    cmd->add_option("--normalization", c.normalization,
                    "objective normalization (needs adaptation off)");
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ccmo::ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ccmo::ConfigError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

ccmo::RunConfig build_config(const ConfigCli& c) {
    ccmo::RunConfig cfg;
    if (!c.config_file.empty()) {
        const json j = load_json(c.config_file);
        if (j.is_array()) throw ccmo::ConfigError("expected a single config object, got an array");
        cfg = ccmo::parse_config(j);
    }
    if (!c.problem.empty()) cfg.problem = c.problem;
    if (c.m) cfg.m = c.m;
    if (c.n) cfg.n = c.n;
    if (c.max_fes) cfg.max_fes = c.max_fes;
    if (c.seed) cfg.seed = c.seed;
    if (c.alpha >= 0.0) cfg.alpha = c.alpha;
    if (c.theta) cfg.theta = c.theta;
    if (c.svm_s > 0.0) cfg.svm.s = c.svm_s;
    if (c.svm_c > 0.0) cfg.svm.c = c.svm_c;
    if (c.n_keep_factor) cfg.n_keep_factor = c.n_keep_factor;
    if (!c.scalarizer.empty()) {
        json j;
        j["scalarizer"] = c.scalarizer;
        cfg.scalarizer = ccmo::parse_config(j).scalarizer;
    }
    if (c.adaptation >= 0) cfg.adaptation = c.adaptation != 0;
    if (c.normalization >= 0) cfg.normalization = c.normalization != 0;
    return cfg;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
}

void write_run_outputs(const fs::path& dir, const ccmo::RunRecord& record) {
    fs::create_directories(dir);
    write_file(dir / "config.json",
               [&](std::ostream& os) { os << ccmo::serialize_config(record.config).dump(2) << '\n'; });
    write_file(dir / "telemetry.csv",
               [&](std::ostream& os) { ccmo::write_telemetry_csv(os, record.telemetry); });
    write_file(dir / "population.txt",
               [&](std::ostream& os) { ccmo::write_population_table(os, record.final_population); });
    if (!record.events.empty()) {
        write_file(dir / "events.csv",
                   [&](std::ostream& os) { ccmo::write_events_csv(os, record.events); });
    }
    if (record.classifier) {
        write_file(dir / "classifier.txt", [&](std::ostream& os) {
            ccmo::write_classifier_snapshot(os, *record.classifier);
        });
    }
}

int cmd_run(const ConfigCli& c, const std::string& out_dir) {
    const ccmo::RunConfig cfg = build_config(c);
    const ccmo::RunRecord record = ccmo::run(cfg);
    write_run_outputs(fs::path(out_dir), record);
    std::cout << "run " << record.config.problem << " M=" << record.config.m
              << " N=" << record.config.n << " seed=" << record.config.seed
              << " final_igd=" << ccmo::final_igd(record)
              << " fe=" << record.telemetry.back().fe_count
              << " learning_events=" << record.events.size() << " wall_s=" << record.wall_seconds
              << '\n';
    std::cout << "outputs in " << out_dir << '\n';
    return 0;
}

int cmd_batch(const std::string& config_file, std::size_t repeats, std::size_t parallelism,
              const std::string& out_dir) {
    if (config_file.empty()) throw ccmo::ConfigError("batch requires --config");
    const json j = load_json(config_file);
    std::vector<ccmo::RunConfig> configs;
    if (j.is_array()) {
        for (const auto& item : j) configs.push_back(ccmo::parse_config(item));
    } else {
        configs.push_back(ccmo::parse_config(j));
    }

    std::vector<ccmo::BatchSummaryRow> summary;
    const auto records = ccmo::run_batch(configs, repeats, parallelism, &summary);

    fs::create_directories(out_dir);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const std::size_t rep = i % repeats;
        if (r.failed) {
            ++failures;
            std::cerr << "run " << ccmo::config_digest(configs[i / repeats]) << " rep " << rep
                      << " failed: " << r.error << '\n';
            continue;
        }
        write_run_outputs(fs::path(out_dir) /
                              ("run_" + ccmo::config_digest(configs[i / repeats]) + "_" +
                               std::to_string(rep)),
                          r);
    }
    write_file(fs::path(out_dir) / "summary.csv",
               [&](std::ostream& os) { ccmo::write_summary_csv(os, summary); });
    ccmo::write_summary_csv(std::cout, summary);
    if (failures) {
        std::cerr << failures << " of " << records.size() << " runs failed\n";
        return 2;
    }
    return 0;
}

int cmd_ablate(const ConfigCli& c, const std::string& kind_name, std::size_t repeats,
               std::size_t parallelism, const std::string& out_dir) {
    ccmo::AblationKind kind;
    if (kind_name == "scalarizer") {
        kind = ccmo::AblationKind::kScalarizer;
    } else if (kind_name == "adaptation") {
        kind = ccmo::AblationKind::kAdaptation;
    } else {
        throw ccmo::ConfigError("unknown ablation kind: " + kind_name);
    }

    const ccmo::RunConfig base = build_config(c);
    const auto outcome = ccmo::ablation_suite(kind, base, repeats, parallelism);

    const fs::path dir = fs::path(out_dir) / ("ablate_" + kind_name);
    fs::create_directories(dir);
    const char* arm_names[2] = {"arm_a", "arm_b"};
    const std::vector<ccmo::RunRecord>* arms[2] = {&outcome.runs_a, &outcome.runs_b};
    for (int a = 0; a < 2; ++a) {
        for (std::size_t i = 0; i < arms[a]->size(); ++i) {
            if (!(*arms[a])[i].failed) {
                write_run_outputs(dir / arm_names[a] / ("run_" + std::to_string(i)), (*arms[a])[i]);
            }
        }
    }

    const ccmo::BatchSummaryRow rows[2] = {outcome.summary_a, outcome.summary_b};
    write_file(dir / "summary.csv",
               [&](std::ostream& os) { ccmo::write_summary_csv(os, rows); });

    // Paired per-seed final IGDs plus per-generation mean activity curves.
    write_file(dir / "paired_igd.csv", [&](std::ostream& os) {
        os << "repeat,igd_a,igd_b\n";
        os.precision(17);
        for (std::size_t i = 0; i < repeats; ++i) {
            os << i << ',' << ccmo::final_igd(outcome.runs_a[i]) << ','
               << ccmo::final_igd(outcome.runs_b[i]) << '\n';
        }
    });
    write_file(dir / "activity_curves.csv", [&](std::ostream& os) {
        std::size_t gens = 0;
        for (int a = 0; a < 2; ++a) {
            for (const auto& r : *arms[a]) {
                if (!r.failed) gens = std::max(gens, r.telemetry.size());
            }
        }
        os << "generation,mean_active_a,mean_active_b,mean_total_a,mean_total_b\n";
        for (std::size_t g = 0; g < gens; ++g) {
            os << g;
            for (int a = 0; a < 2; ++a) {
                double active = 0.0, total = 0.0;
                std::size_t count = 0;
                for (const auto& r : *arms[a]) {
                    if (r.failed || g >= r.telemetry.size()) continue;
                    active += static_cast<double>(r.telemetry[g].active_refs);
                    total += static_cast<double>(r.telemetry[g].total_refs);
                    ++count;
                }
                if (count) {
                    active /= static_cast<double>(count);
                    total /= static_cast<double>(count);
                }
                os << ',' << active << ',' << total;
            }
            os << '\n';
        }
    });

    ccmo::write_summary_csv(std::cout, rows);
    std::cout << "outputs in " << dir.string() << '\n';
    return 0;
}

int cmd_pf_sample(const std::string& problem, std::size_t m, std::size_t count,
                  const std::string& out_file) {
    const auto pts = ccmo::make_problem(problem, m).pf_sample(count);
    if (out_file.empty()) {
        ccmo::write_points_tsv(std::cout, pts);
    } else {
        write_file(out_file, [&](std::ostream& os) { ccmo::write_points_tsv(os, pts); });
        std::cout << pts.size() << " PF points written to " << out_file << '\n';
    }
    return 0;
}

int cmd_score_field(const std::string& classifier_file, int density, const std::string& out_file) {
    std::ifstream in(classifier_file);
    if (!in) throw ccmo::ConfigError("cannot open classifier snapshot: " + classifier_file);
    const ccmo::EffectiveAreaClassifier cls = ccmo::read_classifier_snapshot(in);
    if (!cls.trained) throw ccmo::ConfigError("snapshot holds an untrained classifier");

    std::size_t dim = cls.support_points.empty()
                          ? (cls.reserved_points.empty() ? 0 : cls.reserved_points.front().size())
                          : cls.support_points.front().size();
    if (dim == 0) throw ccmo::ConfigError("snapshot has no samples to infer the dimension from");
    const std::size_t m = dim + 1;

    const auto grid = ccmo::generate_simplex_lattice(m, density);
    const auto proj = ccmo::SimplexProjection::make(m);
    const auto scores = ccmo::score_points(cls, ccmo::project_to_simplex_plane(grid.points, proj));

    auto body = [&](std::ostream& os) {
        for (std::size_t i = 0; i < m; ++i) os << 'p' << i + 1 << ',';
        os << "score\n";
        os.precision(17);
        for (std::size_t i = 0; i < grid.points.size(); ++i) {
            for (double v : grid.points[i]) os << v << ',';
            os << scores[i] << '\n';
        }
    };
    if (out_file.empty()) {
        body(std::cout);
    } else {
        write_file(out_file, body);
        std::cout << grid.points.size() << " scored points written to " << out_file << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Many-objective optimizer: cascade-clustering selection with "
                 "incremental-learning reference adaptation"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    std::string out_dir = "results";
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    ConfigCli run_cfg;
    auto* run_cmd = app.add_subcommand("run", "single optimization run");
    add_config_options(run_cmd, run_cfg);

    std::string batch_config;
    std::size_t repeats = 20, parallelism = 2;
    auto* batch_cmd = app.add_subcommand("batch", "repeated runs over one or more configs");
    batch_cmd->add_option("--config", batch_config, "JSON config object or array")->required();
    batch_cmd->add_option("--repeats", repeats, "seeds per config")->capture_default_str();
    batch_cmd->add_option("--parallel", parallelism, "worker threads")->capture_default_str();

    ConfigCli ablate_cfg;
    std::string ablate_kind = "scalarizer";
    std::size_t ablate_repeats = 10, ablate_parallel = 2;
    auto* ablate_cmd = app.add_subcommand("ablate", "matched pair differing in one switch");
    ablate_cmd->add_option("--kind", ablate_kind, "scalarizer|adaptation")->capture_default_str();
    ablate_cmd->add_option("--repeats", ablate_repeats, "seeds per arm")->capture_default_str();
    ablate_cmd->add_option("--parallel", ablate_parallel, "worker threads")->capture_default_str();
    add_config_options(ablate_cmd, ablate_cfg);

    std::string pf_problem = "dtlz2", pf_out;
    std::size_t pf_m = 3, pf_count = 5000;
    auto* pf_cmd = app.add_subcommand("pf-sample", "sample the true Pareto front");
    pf_cmd->add_option("--problem", pf_problem, "problem name")->capture_default_str();
    pf_cmd->add_option("--m", pf_m, "objectives")->capture_default_str();
    pf_cmd->add_option("--count", pf_count, "target sample size")->capture_default_str();
    pf_cmd->add_option("--file", pf_out, "output file (default stdout)");

    std::string sf_classifier, sf_out;
    int sf_density = 30;
    auto* sf_cmd = app.add_subcommand("score-field",
                                      "classifier scores over a simplex lattice");
    sf_cmd->add_option("--classifier", sf_classifier, "classifier snapshot file")->required();
    sf_cmd->add_option("--density", sf_density, "lattice density H")->capture_default_str();
    sf_cmd->add_option("--file", sf_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_cfg, out_dir);
        if (batch_cmd->parsed()) return cmd_batch(batch_config, repeats, parallelism, out_dir);
        if (ablate_cmd->parsed()) {
            return cmd_ablate(ablate_cfg, ablate_kind, ablate_repeats, ablate_parallel, out_dir);
        }
        if (pf_cmd->parsed()) return cmd_pf_sample(pf_problem, pf_m, pf_count, pf_out);
        if (sf_cmd->parsed()) return cmd_score_field(sf_classifier, sf_density, sf_out);
    } catch (const ccmo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
