#include "ccmo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <limits>
#include <sstream>
#include <thread>

#include "ccmo/variation.hpp"

namespace ccmo {

namespace {

std::string scalarizer_name(Scalarizer s) { return s == Scalarizer::kPdm ? "pdm" : "pbi"; }

Scalarizer scalarizer_from(const std::string& s) {
    if (s == "pdm") return Scalarizer::kPdm;
    if (s == "pbi") return Scalarizer::kPbi;
    throw ConfigError("unknown scalarizer: " + s + " (expected pdm or pbi)");
}

void evaluate_all(const Problem& problem, Population& pop, std::size_t& fe_count) {
    for (auto& ind : pop.members) {
        if (ind.valid) continue;
        ind.objectives = problem.evaluate(ind.decision);
        ind.valid = true;
        ++fe_count; // one FE per evaluate call, exactly
    }
}

std::vector<std::vector<double>> objectives_of(const Population& pop) {
    std::vector<std::vector<double>> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop.members) objs.push_back(ind.objectives);
    return objs;
}

} // namespace

RunConfig parse_config(const nlohmann::json& j) {
    static const std::vector<std::string> known = {
        "problem", "m",      "n",          "max_fes",       "seed",         "alpha",
        "theta",   "svm",    "n_keep_factor", "scalarizer", "adaptation",   "normalization"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown config key: " + key);
        }
    }
    RunConfig cfg;
    try {
        cfg.problem = j.value("problem", cfg.problem);
        cfg.m = j.value("m", cfg.m);
        cfg.n = j.value("n", cfg.n);
        cfg.max_fes = j.value("max_fes", cfg.max_fes);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.alpha = j.value("alpha", cfg.alpha);
        cfg.theta = j.value("theta", cfg.theta);
        if (j.contains("svm")) {
            cfg.svm.s = j["svm"].value("s", cfg.svm.s);
            cfg.svm.c = j["svm"].value("c", cfg.svm.c);
        }
        cfg.n_keep_factor = j.value("n_keep_factor", cfg.n_keep_factor);
        cfg.scalarizer = scalarizer_from(j.value("scalarizer", scalarizer_name(cfg.scalarizer)));
        cfg.adaptation = j.value("adaptation", cfg.adaptation);
        cfg.normalization = j.value("normalization", cfg.normalization);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

nlohmann::json serialize_config(const RunConfig& cfg) {
    nlohmann::json j;
    j["problem"] = cfg.problem;
    j["m"] = cfg.m;
    j["n"] = cfg.n;
    j["max_fes"] = cfg.max_fes;
    j["seed"] = cfg.seed;
    j["alpha"] = cfg.alpha;
    j["theta"] = cfg.theta;
    j["svm"] = {{"s", cfg.svm.s}, {"c", cfg.svm.c}};
    j["n_keep_factor"] = cfg.n_keep_factor;
    j["scalarizer"] = scalarizer_name(cfg.scalarizer);
    j["adaptation"] = cfg.adaptation;
    j["normalization"] = cfg.normalization;
    return j;
}

RunConfig resolve_config(const RunConfig& cfg) {
    RunConfig out = cfg;
    const Problem problem = make_problem(out.problem, out.m); // validates name and M
    if (out.n < out.m) throw ConfigError("population size N must be >= M");
    if (out.n < 2) throw ConfigError("population size N must be >= 2");
    if (out.max_fes == 0) {
        out.max_fes = std::max<std::size_t>(100000, problem.d() * 10000);
    }
    if (out.max_fes < out.n) throw ConfigError("maxFEs must cover at least one population");
    if (out.theta == 0) out.theta = theta_schedule(out.max_fes);
    if (out.alpha < 0.0) throw ConfigError("alpha must be >= 0");
    if (out.svm.s <= 0.0 || out.svm.c <= 0.0) throw ConfigError("svm parameters must be > 0");
    if (out.n_keep_factor < 1) throw ConfigError("n_keep_factor must be >= 1");
    if (out.normalization && out.adaptation) {
        throw ConfigError("normalization requires adaptation off");
    }
    return out;
}

std::string config_digest(const RunConfig& cfg) {
    const std::uint64_t h = fnv1a64(serialize_config(cfg).dump());
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::uint64_t derive_run_seed(const RunConfig& cfg, std::size_t repeat) {
    return mix_seed(cfg.seed, fnv1a64(config_digest(cfg)), repeat);
}

RunRecord run(const RunConfig& raw) {
    const RunConfig cfg = resolve_config(raw);
    const auto started = std::chrono::steady_clock::now();

    RunRecord record;
    record.config = cfg;

    const Problem problem = make_problem(cfg.problem, cfg.m);
    const auto pf = problem.pf_sample(default_pf_sample_size(cfg.m));

    Rng rng(cfg.seed);
    VariationConfig vcfg;
    vcfg.bounds.assign(problem.bounds().begin(), problem.bounds().end());

    std::size_t fe = 0;
    Population pop = initialize(cfg.n, problem.bounds(), rng);
    evaluate_all(problem, pop, fe);

    ReferenceSet refs = initial_reference_set(cfg.m, cfg.n);
    refs.active.assign(refs.size(), 0);

    StatusSampler sampler;
    sampler.theta = cfg.theta;

    EffectiveAreaClassifier classifier;
    classifier.kernel_scale = cfg.svm.s;
    classifier.regularization = cfg.svm.c;

    AdaptOptions adapt_options;
    adapt_options.n_keep_factor = cfg.n_keep_factor;
    adapt_options.svm_s = cfg.svm.s;
    adapt_options.svm_c = cfg.svm.c;

    bool adaptation_enabled = cfg.adaptation;

    record.telemetry.push_back(
        {0, fe, igd(pf, objectives_of(pop)), 0, refs.size(), false});

    SelectionOptions sel;
    sel.alpha = cfg.alpha;
    sel.scalarizer = cfg.scalarizer;
    sel.normalize = cfg.normalization;

    std::size_t generation = 0;
    while (fe + cfg.n <= cfg.max_fes) {
        ++generation;
        Population offspring = make_offspring(pop, cfg.n, vcfg, rng);
        evaluate_all(problem, offspring, fe);

        Population pool;
        pool.capacity_hint = 2 * cfg.n;
        pool.members.reserve(pop.size() + offspring.size());
        pool.members.insert(pool.members.end(), pop.members.begin(), pop.members.end());
        pool.members.insert(pool.members.end(), offspring.members.begin(),
                            offspring.members.end());

        SelectionOutcome outcome = select(pool, refs, cfg.n, sel);
        pop = std::move(outcome.survivors);
        refs.active = outcome.activity;
        sampler = sampler_update(std::move(sampler), outcome.activity);

        const std::size_t refs_in_use = refs.size();
        std::size_t active = 0;
        for (std::uint8_t a : outcome.activity) active += a ? 1 : 0;

        bool adapted = false;
        if (adaptation_enabled) {
            AdaptResult res = adapt(std::move(refs), std::move(sampler), std::move(classifier),
                                    cfg.n, generation, adapt_options);
            refs = std::move(res.refs);
            sampler = std::move(res.sampler);
            classifier = std::move(res.classifier);
            if (res.event) {
                record.events.push_back(*res.event);
                if (res.event->skipped_density_cap) {
                    adaptation_enabled = false; // cap reached: no further attempts this run
                } else {
                    adapted = true;
                }
            }
        }

        record.telemetry.push_back(
            {generation, fe, igd(pf, objectives_of(pop)), active, refs_in_use, adapted});
    }

    record.final_population = std::move(pop);
    if (classifier.trained) record.classifier = std::move(classifier);
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return record;
}

double final_igd(const RunRecord& record) {
    if (record.telemetry.empty()) return std::numeric_limits<double>::quiet_NaN();
    return record.telemetry.back().igd;
}

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t h = values.size() / 2;
    return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

namespace {

BatchSummaryRow summarize(const RunConfig& cfg, std::span<const RunRecord> records) {
    BatchSummaryRow row;
    row.digest = config_digest(cfg);
    row.problem = cfg.problem;
    row.m = cfg.m;
    row.n = cfg.n;
    std::vector<double> igds;
    double wall = 0.0;
    for (const auto& r : records) {
        if (r.failed) continue;
        igds.push_back(final_igd(r));
        wall += r.wall_seconds;
        ++row.runs;
    }
    if (!igds.empty()) {
        const double mean = std::accumulate(igds.begin(), igds.end(), 0.0) /
                            static_cast<double>(igds.size());
        double var = 0.0;
        for (double v : igds) var += (v - mean) * (v - mean);
        row.mean_igd = mean;
        row.median_igd = median(igds);
        row.std_igd = std::sqrt(var / static_cast<double>(igds.size()));
        row.mean_wall_seconds = wall / static_cast<double>(igds.size());
    }
    return row;
}

} // namespace

std::vector<RunRecord> run_batch(std::span<const RunConfig> configs, std::size_t repeats,
                                 std::size_t parallelism,
                                 std::vector<BatchSummaryRow>* summary) {
    if (repeats < 1) throw ConfigError("run_batch: repeats must be >= 1");

    std::vector<RunConfig> jobs;
    jobs.reserve(configs.size() * repeats);
    for (const auto& cfg : configs) {
        for (std::size_t r = 0; r < repeats; ++r) {
            RunConfig job = cfg;
            job.seed = derive_run_seed(cfg, r);
            jobs.push_back(std::move(job));
        }
    }

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                records[i] = run(jobs[i]);
            } catch (const std::exception& e) {
                records[i].config = jobs[i];
                records[i].failed = true;
                records[i].error = e.what();
            }
        }
    };

    const std::size_t threads = std::max<std::size_t>(1, std::min(parallelism, jobs.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (summary) {
        for (std::size_t c = 0; c < configs.size(); ++c) {
            summary->push_back(summarize(
                configs[c], std::span<const RunRecord>(records).subspan(c * repeats, repeats)));
        }
    }
    return records;
}

AblationOutcome ablation_suite(AblationKind kind, const RunConfig& base, std::size_t repeats,
                               std::size_t parallelism) {
    AblationOutcome out;
    out.kind = kind;
    out.config_a = base;
    out.config_b = base;
    if (kind == AblationKind::kScalarizer) {
        out.config_a.scalarizer = Scalarizer::kPdm;
        out.config_b.scalarizer = Scalarizer::kPbi;
    } else {
        out.config_a.adaptation = true;
        out.config_a.normalization = false;
        out.config_b.adaptation = false;
    }
    resolve_config(out.config_a);
    resolve_config(out.config_b);

    const RunConfig configs[2] = {out.config_a, out.config_b};
    std::vector<BatchSummaryRow> summary;
    auto records = run_batch(configs, repeats, parallelism, &summary);
    out.runs_a.assign(std::make_move_iterator(records.begin()),
                      std::make_move_iterator(records.begin() + static_cast<long>(repeats)));
    out.runs_b.assign(std::make_move_iterator(records.begin() + static_cast<long>(repeats)),
                      std::make_move_iterator(records.end()));
    out.summary_a = summary[0];
    out.summary_b = summary[1];
    return out;
}

void write_population_table(std::ostream& os, const Population& pop) {
    os.precision(17);
    const std::size_t n = pop.size();
    const std::size_t d = n ? pop.members.front().decision.size() : 0;
    const std::size_t m = n ? pop.members.front().objectives.size() : 0;
    os << "# decisions " << n << ' ' << d << '\n';
    for (const auto& ind : pop.members) {
        for (std::size_t i = 0; i < ind.decision.size(); ++i) {
            if (i) os << '\t';
            os << ind.decision[i];
        }
        os << '\n';
    }
    os << "# objectives " << n << ' ' << m << '\n';
    for (const auto& ind : pop.members) {
        for (std::size_t i = 0; i < ind.objectives.size(); ++i) {
            if (i) os << '\t';
            os << ind.objectives[i];
        }
        os << '\n';
    }
}

void write_events_csv(std::ostream& os, std::span<const LearningEvent> events) {
    os << "generation,old_count,generated_count,new_count,delta,density_outer,density_inner,"
          "two_layer,min_kept_score,max_discarded_score,skipped_density_cap\n";
    os.precision(17);
    for (const auto& e : events) {
        os << e.generation << ',' << e.old_count << ',' << e.generated_count << ',' << e.new_count
           << ',' << e.delta << ',' << e.density_after.outer << ',' << e.density_after.inner << ','
           << (e.density_after.two_layer ? 1 : 0) << ',' << e.min_kept_score << ','
           << e.max_discarded_score << ',' << (e.skipped_density_cap ? 1 : 0) << '\n';
    }
}

void write_summary_csv(std::ostream& os, std::span<const BatchSummaryRow> rows) {
    os << "digest,problem,m,n,runs,mean_igd,median_igd,std_igd,mean_wall_seconds\n";
    os.precision(17);
    for (const auto& r : rows) {
        os << r.digest << ',' << r.problem << ',' << r.m << ',' << r.n << ',' << r.runs << ','
           << r.mean_igd << ',' << r.median_igd << ',' << r.std_igd << ',' << r.mean_wall_seconds
           << '\n';
    }
}

} // namespace ccmo
