#ifndef CCMO_HARNESS_HPP
#define CCMO_HARNESS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccmo/cascade.hpp"
#include "ccmo/metrics.hpp"
#include "ccmo/problems.hpp"
#include "ccmo/reflearn.hpp"

namespace ccmo {

struct SvmParams {
    double s = 0.056; // Gaussian kernel scale
    double c = 10.0;  // soft-margin regularization

    bool operator==(const SvmParams&) const = default;
};

struct RunConfig {
    std::string problem = "dtlz2";
    std::size_t m = 3;
    std::size_t n = 91;
    std::size_t max_fes = 0; // 0: default max(1e5, D * 1e4)
    std::uint64_t seed = 1;
    double alpha = 5.0;
    std::size_t theta = 0; // 0: auto schedule from the FE budget
    SvmParams svm;
    std::size_t n_keep_factor = 2;
    Scalarizer scalarizer = Scalarizer::kPdm;
    bool adaptation = true;
    bool normalization = false; // legal only with adaptation off

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const nlohmann::json& j);
nlohmann::json serialize_config(const RunConfig& cfg);

/// Fills derived defaults (max_fes, theta) and validates. Throws ConfigError.
RunConfig resolve_config(const RunConfig& cfg);

/// Stable hex digest of the canonical serialized form.
std::string config_digest(const RunConfig& cfg);

/// Seed for repeat r of a configured run; mixes the master seed, the config
/// digest and the repeat index so batches reproduce across machines.
std::uint64_t derive_run_seed(const RunConfig& cfg, std::size_t repeat);

struct RunRecord {
    RunConfig config; // resolved
    std::vector<TelemetryRecord> telemetry;
    Population final_population;
    std::vector<LearningEvent> events;
    double wall_seconds = 0.0;
    std::optional<EffectiveAreaClassifier> classifier; // final state, if trained
    bool failed = false;
    std::string error;
};

/// One full optimization run: initialize, then loop offspring generation,
/// cascade selection, sampler update and (when enabled) reference adaptation
/// until the FE budget is exhausted. Deterministic per seed.
RunRecord run(const RunConfig& cfg);

struct BatchSummaryRow {
    std::string digest;
    std::string problem;
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t runs = 0;
    double mean_igd = 0.0;
    double median_igd = 0.0;
    double std_igd = 0.0;
    double mean_wall_seconds = 0.0;
};

/// `repeats` seeded runs per config, executed on up to `parallelism` threads.
/// Per-run failures are recorded in the run records; the batch continues.
std::vector<RunRecord> run_batch(std::span<const RunConfig> configs, std::size_t repeats,
                                 std::size_t parallelism,
                                 std::vector<BatchSummaryRow>* summary = nullptr);

enum class AblationKind { kScalarizer, kAdaptation };

struct AblationOutcome {
    AblationKind kind;
    RunConfig config_a, config_b;
    std::vector<RunRecord> runs_a, runs_b;
    BatchSummaryRow summary_a, summary_b;
};

/// Runs the matched pair of configurations differing in exactly one switch
/// (PDM vs PBI, or adaptation on vs off) over `repeats` seeds each.
AblationOutcome ablation_suite(AblationKind kind, const RunConfig& base, std::size_t repeats,
                               std::size_t parallelism);

double final_igd(const RunRecord& record);
double median(std::vector<double> values);

/// Two-block table: decision rows then objective rows, tab-separated.
void write_population_table(std::ostream& os, const Population& pop);
void write_events_csv(std::ostream& os, std::span<const LearningEvent> events);
void write_summary_csv(std::ostream& os, std::span<const BatchSummaryRow> rows);

} // namespace ccmo

#endif
