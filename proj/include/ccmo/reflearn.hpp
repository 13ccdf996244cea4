#ifndef CCMO_REFLEARN_HPP
#define CCMO_REFLEARN_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ccmo/refgen.hpp"

namespace ccmo {

/// Detects stable reference-vector activity: reports stable once the
/// activity vector has stayed unchanged for theta consecutive updates.
struct StatusSampler {
    std::vector<std::uint8_t> last_activity;
    std::size_t stable_count = 0;
    std::size_t theta = 5;
    bool has_history = false;

    bool stable() const { return has_history && stable_count >= theta; }

    void reset() {
        last_activity.clear();
        stable_count = 0;
        has_history = false;
    }
};

/// Folds one generation's activity flags into the sampler. A changed vector
/// (or a length change, meaning the reference set itself changed) resets the
/// stability counter.
StatusSampler sampler_update(StatusSampler s, std::span<const std::uint8_t> activity);

/// theta = min{20, max{5, ceil(maxFEs / 2e4)}}.
std::size_t theta_schedule(std::size_t max_fes);

/// Soft-margin Gaussian-kernel support-vector classifier over projected
/// simplex points, scoring the chance that a reference point is effective.
/// Trained incrementally: margin-band samples are carried between rounds.
struct EffectiveAreaClassifier {
    double kernel_scale = 0.056;  // S in K(x,s) = exp(-|x-s|^2 / (2 S^2))
    double regularization = 10.0; // box constraint C

    std::vector<std::vector<double>> support_points;
    std::vector<int> support_labels; // +1 active, -1 inactive
    std::vector<double> alphas;      // 0 < alpha_i <= C
    double bias = 0.0;

    std::vector<std::vector<double>> reserved_points; // margin-band carryover
    std::vector<int> reserved_labels;

    bool trained = false;
    bool degenerate = false;  // single-class training input
    int degenerate_label = 0; // the only class seen, when degenerate

    double kernel(std::span<const double> a, std::span<const double> b) const;
    double decision(std::span<const double> x) const;
    double score(std::span<const double> x) const; // sigmoid of decision, in (0,1)
};

/// Retrains on the union of the new samples and the reserved margin-band
/// samples, then refreshes the reserved set (|f(x)| <= 1.5). Single-class
/// input yields a degenerate classifier scoring 0.99 / 0.01.
EffectiveAreaClassifier train_incremental(EffectiveAreaClassifier c,
                                          std::span<const std::vector<double>> actives,
                                          std::span<const std::vector<double>> inactives);

std::vector<double> score_points(const EffectiveAreaClassifier& c,
                                 std::span<const std::vector<double>> points);

/// One reference-set adaptation: what happened and how the set changed.
struct LearningEvent {
    std::size_t generation = 0;
    std::size_t old_count = 0;
    std::size_t generated_count = 0;
    std::size_t new_count = 0;
    double delta = 0.0; // score threshold used
    DensityRecord density_after;
    double min_kept_score = 0.0;
    double max_discarded_score = -1.0; // -1 when nothing was discarded
    bool skipped_density_cap = false;
};

struct AdaptOptions {
    std::size_t n_keep_factor = 2; // keep at least n_keep_factor * N points
    std::size_t point_cap = kDefaultPointCap;
    double svm_s = 0.056;
    double svm_c = 10.0;
};

struct AdaptResult {
    ReferenceSet refs;
    StatusSampler sampler;
    EffectiveAreaClassifier classifier;
    std::optional<LearningEvent> event;
};

/// The sampling-learning-reducing cycle. Fires only when the sampler is
/// stable and fewer than n reference vectors are active; otherwise returns
/// its inputs unchanged. On firing: trains on the projected activity labels,
/// escalates the density, scores the denser set and keeps the points at or
/// above the adaptive threshold (the (n_keep_factor*N)-th highest score).
/// The old reference points are all discarded; the sampler is reset.
AdaptResult adapt(ReferenceSet refs, StatusSampler sampler, EffectiveAreaClassifier classifier,
                  std::size_t n, std::size_t generation, const AdaptOptions& options);

void write_classifier_snapshot(std::ostream& os, const EffectiveAreaClassifier& c);
EffectiveAreaClassifier read_classifier_snapshot(std::istream& is);

} // namespace ccmo

#endif
