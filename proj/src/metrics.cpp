#include "ccmo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace ccmo {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double r = a[i] - b[i];
        s += r * r;
    }
    return s;
}

bool supports_intersection(const Problem& problem) {
    const std::string& n = problem.name();
    return n == "dtlz1" || n == "dtlz2" || n == "cdtlz3" || n == "maf1";
}

void require_intersection_support(const Problem& problem) {
    if (!supports_intersection(problem)) {
        throw UnsupportedMetricError("no closed-form ray/PF intersection for " + problem.name());
    }
}

} // namespace

double igd(std::span<const std::vector<double>> pf_ref,
           std::span<const std::vector<double>> pop_objs) {
    if (pf_ref.empty() || pop_objs.empty()) throw ContractError("igd: empty input set");
    double total = 0.0;
    for (const auto& r : pf_ref) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pop_objs) best = std::min(best, sq_dist(r, p));
        total += std::sqrt(best);
    }
    return total / static_cast<double>(pf_ref.size());
}

bool ray_intersects_pf(const Problem& problem, std::span<const double> z) {
    require_intersection_support(problem);
    if (problem.name() == "maf1") {
        // Effective area of the inverted simplex: (M-1) * z must stay in the
        // unit box. Boundary points count as intersecting.
        const double limit = 1.0 / static_cast<double>(problem.m() - 1);
        for (double v : z) {
            if (v > limit + 1e-12) return false;
        }
    }
    return true; // dtlz1 / dtlz2 / cdtlz3 have fully spread fronts
}

std::optional<std::vector<double>> ray_pf_intersection(const Problem& problem,
                                                       std::span<const double> z) {
    require_intersection_support(problem);
    if (!ray_intersects_pf(problem, z)) return std::nullopt;

    const std::string& name = problem.name();
    std::vector<double> f(z.begin(), z.end());
    if (name == "dtlz1") {
        double s = 0.0;
        for (double v : z) s += v;
        for (double& v : f) v *= 0.5 / s; // hyperplane sum(f) = 0.5
    } else if (name == "dtlz2") {
        double n = 0.0;
        for (double v : z) n += v * v;
        n = std::sqrt(n);
        for (double& v : f) v /= n; // unit sphere
    } else if (name == "cdtlz3") {
        // Solve t >= 0 with sum_{i<M} sqrt(t z_i) + t z_M = 1, the convexified
        // sphere surface, via the quadratic in s = sqrt(t).
        double a = 0.0;
        for (std::size_t i = 0; i + 1 < f.size(); ++i) a += std::sqrt(z[i]);
        const double b = z[z.size() - 1];
        double s;
        if (b <= 0.0) {
            s = 1.0 / a;
        } else {
            s = (-a + std::sqrt(a * a + 4.0 * b)) / (2.0 * b);
        }
        const double t = s * s;
        for (double& v : f) v *= t;
    } else { // maf1
        const double scale = static_cast<double>(problem.m() - 1);
        for (double& v : f) v *= scale; // hyperplane sum(f) = M-1 inside the box
    }
    return f;
}

std::size_t activity_upper_bound(const ReferenceSet& refs, const Problem& problem) {
    std::size_t count = 0;
    for (const auto& z : refs.points) {
        if (ray_intersects_pf(problem, z)) ++count;
    }
    return count;
}

double igd_lower_bound(const ReferenceSet& refs, const Problem& problem,
                       std::span<const std::vector<double>> pf_ref) {
    std::vector<std::vector<double>> hits;
    hits.reserve(refs.size());
    for (const auto& z : refs.points) {
        if (auto f = ray_pf_intersection(problem, z)) hits.push_back(std::move(*f));
    }
    if (hits.empty()) throw ContractError("igd_lower_bound: no reference ray hits the PF");
    return igd(pf_ref, hits);
}

double igd_lower_bound(const ReferenceSet& refs, const Problem& problem) {
    const auto pf = problem.pf_sample(default_pf_sample_size(problem.m()));
    return igd_lower_bound(refs, problem, pf);
}

void write_telemetry_csv(std::ostream& os, std::span<const TelemetryRecord> series) {
    os << "generation,fe_count,igd,active_refs,total_refs,learning_event\n";
    os.precision(17);
    for (const auto& r : series) {
        os << r.generation << ',' << r.fe_count << ',' << r.igd << ',' << r.active_refs << ','
           << r.total_refs << ',' << (r.learning_event ? 1 : 0) << '\n';
    }
}

} // namespace ccmo
