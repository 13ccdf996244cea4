#ifndef CCMO_METRICS_HPP
#define CCMO_METRICS_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ccmo/problems.hpp"
#include "ccmo/refgen.hpp"

namespace ccmo {

/// Per-generation run telemetry.
struct TelemetryRecord {
    std::size_t generation = 0;
    std::size_t fe_count = 0;
    double igd = 0.0;
    std::size_t active_refs = 0;
    std::size_t total_refs = 0;
    bool learning_event = false;
};

/// Mean Euclidean distance from each reference-front point to its nearest
/// population member. Raw objective space, no normalization.
double igd(std::span<const std::vector<double>> pf_ref,
           std::span<const std::vector<double>> pop_objs);

/// Whether the ray through simplex point z intersects the true PF. Only
/// closed-form problems are supported (dtlz1, dtlz2, cdtlz3, maf1);
/// others throw UnsupportedMetricError.
bool ray_intersects_pf(const Problem& problem, std::span<const double> z);

/// The PF point hit by the ray through simplex point z, or nullopt when the
/// ray misses the front (partial PFs).
std::optional<std::vector<double>> ray_pf_intersection(const Problem& problem,
                                                       std::span<const double> z);

/// Count of reference points whose rays intersect the true PF: the maximum
/// number of simultaneously active reference vectors at this density.
std::size_t activity_upper_bound(const ReferenceSet& refs, const Problem& problem);

/// IGD of the ray/PF intersection points against a PF sample: the ideal IGD
/// when individuals coincide with the intersections.
double igd_lower_bound(const ReferenceSet& refs, const Problem& problem,
                       std::span<const std::vector<double>> pf_ref);
double igd_lower_bound(const ReferenceSet& refs, const Problem& problem);

/// Comma-separated telemetry table with a header row.
void write_telemetry_csv(std::ostream& os, std::span<const TelemetryRecord> series);

} // namespace ccmo

#endif
