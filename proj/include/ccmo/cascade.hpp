#ifndef CCMO_CASCADE_HPP
#define CCMO_CASCADE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ccmo/core.hpp"
#include "ccmo/refgen.hpp"

namespace ccmo {

/// Frontier ranking metric. PDM is the primary metric; PBI is the ablation
/// baseline sharing the same diversity term.
enum class Scalarizer { kPdm, kPbi };

/// One cluster per active reference vector: its PDM-sorted frontier queue and
/// distance-sorted nonfrontier queue. The center is the frontier with the
/// smallest metric value and always heads the frontier queue.
struct Cluster {
    std::size_t reference_index = 0;
    std::vector<std::size_t> frontier_queue;    // pool indices, metric ascending
    std::vector<std::size_t> nonfrontier_queue; // pool indices, center distance ascending
    std::size_t center = 0;                     // == frontier_queue.front()
};

struct SelectionOutcome {
    Population survivors;
    std::vector<std::uint8_t> activity; // per reference point: had a frontier attached
    std::size_t cluster_count = 0;
};

struct SelectionOptions {
    double alpha = 5.0;
    Scalarizer scalarizer = Scalarizer::kPdm;
    /// Translate/scale objectives by ideal and nadir estimates before
    /// clustering. Survivors keep their raw objective vectors. Only legal
    /// while reference adaptation is disabled.
    bool normalize = false;
};

/// Sine of the angle between o and the reference direction z, clamped to
/// [0, 1]. Defined as 0 for a zero objective vector; throws on a zero z.
double sine_to_reference(std::span<const double> o, std::span<const double> z);

/// mean(o) + alpha * ||o|| * sin(o, z).
double pdm(std::span<const double> o, std::span<const double> z, double alpha);

/// Projection length of o on z plus alpha times the perpendicular distance.
double pbi(std::span<const double> o, std::span<const double> z, double alpha);

/// Nearest reference vector (by sine of the included angle) for each frontier
/// objective vector. Ties go to the lower reference index. When `sines` is
/// non-null it receives the winning sine per frontier for metric reuse.
std::vector<std::size_t> attach_frontiers(std::span<const std::vector<double>> frontier_objectives,
                                          const ReferenceSet& refs,
                                          std::vector<double>* sines = nullptr);

/// Clusters for the active reference vectors: frontiers queued by ascending
/// metric, nonfrontiers attached to the nearest cluster center and queued by
/// ascending Euclidean distance. Clusters are ordered by reference index.
std::vector<Cluster> build_clusters(const FrontierSplit& split, const Population& pop,
                                    const ReferenceSet& refs,
                                    double alpha = 5.0,
                                    Scalarizer scalarizer = Scalarizer::kPdm);

/// Cycles the clusters in ascending reference-index order, popping one queue
/// head per visit (frontier queue first, then nonfrontier queue), skipping
/// exhausted queues, until exactly n are selected.
SelectionOutcome round_robin_pick(const std::vector<Cluster>& clusters, const Population& pool,
                                  std::size_t n, std::size_t reference_count);

/// The full environmental selection: frontier identification, bi-level
/// clustering and round-robin picking. Deterministic for a fixed input order.
SelectionOutcome select(const Population& pool, const ReferenceSet& refs, std::size_t n,
                        const SelectionOptions& options = {});

} // namespace ccmo

#endif
