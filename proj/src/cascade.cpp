#include "ccmo/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ccmo {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Distance from o to the line spanned by z, via the perpendicular component.
// Avoids the cancellation in sqrt(|o|^2 |z|^2 - (o.z)^2) for near-collinear
// vectors.
double perpendicular_distance(std::span<const double> o, std::span<const double> z,
                              double z_norm) {
    const double scale = dot(o, z) / (z_norm * z_norm);
    double s = 0.0;
    for (std::size_t i = 0; i < o.size(); ++i) {
        const double r = o[i] - scale * z[i];
        s += r * r;
    }
    return std::sqrt(s);
}

double checked_ref_norm(std::span<const double> o, std::span<const double> z) {
    if (o.size() != z.size()) throw ContractError("reference metric: dimension mismatch");
    const double nz = norm2(z);
    if (nz <= 0.0) throw ContractError("reference metric: zero reference vector");
    return nz;
}

double mean(std::span<const double> o) {
    double s = 0.0;
    for (double x : o) s += x;
    return s / static_cast<double>(o.size());
}

double metric_value(Scalarizer scalarizer, std::span<const double> o,
                    std::span<const double> z, double alpha) {
    return scalarizer == Scalarizer::kPdm ? pdm(o, z, alpha) : pbi(o, z, alpha);
}

} // namespace

double sine_to_reference(std::span<const double> o, std::span<const double> z) {
    const double nz = checked_ref_norm(o, z);
    const double no = norm2(o);
    if (no == 0.0) return 0.0;
    const double s = perpendicular_distance(o, z, nz) / no;
    return std::clamp(s, 0.0, 1.0);
}

double pdm(std::span<const double> o, std::span<const double> z, double alpha) {
    const double nz = checked_ref_norm(o, z);
    if (alpha < 0.0) throw ContractError("pdm: alpha must be >= 0");
    const double no = norm2(o);
    if (no == 0.0) return 0.0; // utopian point ranks first
    return mean(o) + alpha * no * std::clamp(perpendicular_distance(o, z, nz) / no, 0.0, 1.0);
}

double pbi(std::span<const double> o, std::span<const double> z, double alpha) {
    const double nz = checked_ref_norm(o, z);
    if (alpha < 0.0) throw ContractError("pbi: alpha must be >= 0");
    const double d1 = dot(o, z) / nz;
    return d1 + alpha * perpendicular_distance(o, z, nz);
}

std::vector<std::size_t> attach_frontiers(std::span<const std::vector<double>> frontier_objectives,
                                          const ReferenceSet& refs,
                                          std::vector<double>* sines) {
    if (frontier_objectives.empty()) throw ContractError("attach_frontiers: no frontiers");
    if (refs.size() == 0) throw ContractError("attach_frontiers: empty reference set");

    std::vector<std::size_t> owner(frontier_objectives.size());
    if (sines) sines->assign(frontier_objectives.size(), 0.0);
    for (std::size_t f = 0; f < frontier_objectives.size(); ++f) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_ref = 0;
        for (std::size_t r = 0; r < refs.size(); ++r) {
            const double s = sine_to_reference(frontier_objectives[f], refs.points[r]);
            if (s < best) {
                best = s;
                best_ref = r;
            }
        }
        owner[f] = best_ref;
        if (sines) (*sines)[f] = best;
    }
    return owner;
}

std::vector<Cluster> build_clusters(const FrontierSplit& split, const Population& pop,
                                    const ReferenceSet& refs, double alpha,
                                    Scalarizer scalarizer) {
    if (split.frontiers.empty()) throw ContractError("build_clusters: no frontiers");

    std::vector<std::vector<double>> frontier_objs;
    frontier_objs.reserve(split.frontiers.size());
    for (std::size_t idx : split.frontiers) frontier_objs.push_back(pop.members[idx].objectives);
    const std::vector<std::size_t> owner = attach_frontiers(frontier_objs, refs);

    // Group frontiers per reference vector, keeping pool order within a group.
    std::vector<std::vector<std::size_t>> grouped(refs.size());
    for (std::size_t f = 0; f < owner.size(); ++f) grouped[owner[f]].push_back(split.frontiers[f]);

    std::vector<Cluster> clusters;
    for (std::size_t r = 0; r < refs.size(); ++r) {
        if (grouped[r].empty()) continue;
        Cluster c;
        c.reference_index = r;
        c.frontier_queue = std::move(grouped[r]);
        std::vector<double> value(c.frontier_queue.size());
        for (std::size_t i = 0; i < c.frontier_queue.size(); ++i) {
            value[i] = metric_value(scalarizer, pop.members[c.frontier_queue[i]].objectives,
                                    refs.points[r], alpha);
        }
        std::vector<std::size_t> order(c.frontier_queue.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        std::vector<std::size_t> sorted(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = c.frontier_queue[order[i]];
        c.frontier_queue = std::move(sorted);
        c.center = c.frontier_queue.front();
        clusters.push_back(std::move(c));
    }

    // Attach each nonfrontier to the cluster whose center is nearest in
    // objective space; ties go to the lower reference index.
    for (std::size_t idx : split.nonfrontiers) {
        const auto& o = pop.members[idx].objectives;
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_cluster = 0;
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            const auto& center = pop.members[clusters[c].center].objectives;
            double d = 0.0;
            for (std::size_t i = 0; i < o.size(); ++i) {
                const double r = o[i] - center[i];
                d += r * r;
            }
            if (d < best) {
                best = d;
                best_cluster = c;
            }
        }
        clusters[best_cluster].nonfrontier_queue.push_back(idx);
    }
    for (auto& c : clusters) {
        const auto& center = pop.members[c.center].objectives;
        std::vector<double> dist(c.nonfrontier_queue.size());
        for (std::size_t i = 0; i < c.nonfrontier_queue.size(); ++i) {
            const auto& o = pop.members[c.nonfrontier_queue[i]].objectives;
            double d = 0.0;
            for (std::size_t k = 0; k < o.size(); ++k) {
                const double r = o[k] - center[k];
                d += r * r;
            }
            dist[i] = d;
        }
        std::vector<std::size_t> order(c.nonfrontier_queue.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        std::vector<std::size_t> sorted(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = c.nonfrontier_queue[order[i]];
        c.nonfrontier_queue = std::move(sorted);
    }
    return clusters;
}

SelectionOutcome round_robin_pick(const std::vector<Cluster>& clusters, const Population& pool,
                                  std::size_t n, std::size_t reference_count) {
    std::size_t total = 0;
    for (const auto& c : clusters) total += c.frontier_queue.size() + c.nonfrontier_queue.size();
    if (total < n) {
        throw ContractError("round_robin_pick: only " + std::to_string(total) +
                            " queued individuals for N=" + std::to_string(n));
    }

    SelectionOutcome out;
    out.cluster_count = clusters.size();
    out.activity.assign(reference_count, 0);
    for (const auto& c : clusters) out.activity[c.reference_index] = 1;

    out.survivors.capacity_hint = n;
    out.survivors.members.reserve(n);
    std::vector<std::size_t> cursor(clusters.size(), 0);
    while (out.survivors.size() < n) {
        for (std::size_t c = 0; c < clusters.size() && out.survivors.size() < n; ++c) {
            const Cluster& cl = clusters[c];
            const std::size_t len = cl.frontier_queue.size() + cl.nonfrontier_queue.size();
            std::size_t& pos = cursor[c];
            if (pos >= len) continue; // exhausted queue
            const std::size_t idx = pos < cl.frontier_queue.size()
                                        ? cl.frontier_queue[pos]
                                        : cl.nonfrontier_queue[pos - cl.frontier_queue.size()];
            ++pos;
            out.survivors.members.push_back(pool.members[idx]);
        }
    }
    return out;
}

SelectionOutcome select(const Population& pool, const ReferenceSet& refs, std::size_t n,
                        const SelectionOptions& options) {
    const FrontierSplit split = identify_frontiers(pool);

    const Population* work = &pool;
    Population shadow;
    if (options.normalize) {
        const std::size_t m = pool.members.front().objectives.size();
        std::vector<double> ideal(m, std::numeric_limits<double>::infinity());
        std::vector<double> nadir(m, -std::numeric_limits<double>::infinity());
        for (const auto& ind : pool.members) {
            for (std::size_t k = 0; k < m; ++k) ideal[k] = std::min(ideal[k], ind.objectives[k]);
        }
        for (std::size_t idx : split.frontiers) {
            const auto& o = pool.members[idx].objectives;
            for (std::size_t k = 0; k < m; ++k) nadir[k] = std::max(nadir[k], o[k]);
        }
        shadow.members.resize(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) {
            auto& sh = shadow.members[i];
            sh.objectives.resize(m);
            sh.valid = true;
            for (std::size_t k = 0; k < m; ++k) {
                const double range = std::max(nadir[k] - ideal[k], 1e-12);
                sh.objectives[k] = (pool.members[i].objectives[k] - ideal[k]) / range;
            }
        }
        work = &shadow;
    }

    const auto clusters = build_clusters(split, *work, refs, options.alpha, options.scalarizer);
    // Survivors are copied from the raw pool: selection never rescales the
    // objectives it returns.
    return round_robin_pick(clusters, pool, n, refs.size());
}

} // namespace ccmo
