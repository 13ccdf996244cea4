#include "ccmo/refgen.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace ccmo {

namespace {

void enumerate_compositions(std::size_t m, int h,
                            std::vector<int>& partial, std::size_t pos, int left,
                            std::vector<std::vector<double>>& out) {
    if (pos == m - 1) {
        partial[pos] = left;
        std::vector<double> p(m);
        for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<double>(partial[i]) / h;
        out.push_back(std::move(p));
        return;
    }
    for (int i = 0; i <= left; ++i) {
        partial[pos] = i;
        enumerate_compositions(m, h, partial, pos + 1, left - i, out);
    }
}

std::vector<std::vector<double>> lattice_points(std::size_t m, int h) {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(lattice_point_count(m, h)));
    std::vector<int> partial(m, 0);
    enumerate_compositions(m, h, partial, 0, h, out);
    return out;
}

void check_cap(std::size_t m, int h, std::size_t cap, double extra = 0.0) {
    if (lattice_point_count(m, h) + extra > static_cast<double>(cap)) {
        throw DensityTooHighError("reference point count for M=" + std::to_string(m) +
                                  ", H=" + std::to_string(h) + " exceeds cap " +
                                  std::to_string(cap));
    }
}

bool same_point(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-12) return false;
    }
    return true;
}

} // namespace

double lattice_point_count(std::size_t m, int h) {
    // C(h+m-1, m-1)
    double c = 1.0;
    for (std::size_t i = 1; i <= m - 1; ++i) {
        c *= static_cast<double>(h + i) / static_cast<double>(i);
    }
    return std::round(c);
}

ReferenceSet generate_simplex_lattice(std::size_t m, int h, std::size_t cap) {
    if (m < 2) throw ContractError("generate_simplex_lattice: M must be >= 2");
    if (h < 1) throw ContractError("generate_simplex_lattice: H must be >= 1");
    check_cap(m, h, cap);

    ReferenceSet set;
    set.points = lattice_points(m, h);
    set.density = DensityRecord{h, 0, false};
    set.active.assign(set.points.size(), 0);
    return set;
}

ReferenceSet generate_two_layer(std::size_t m, int h_outer, int h_inner, std::size_t cap) {
    if (m < 2) throw ContractError("generate_two_layer: M must be >= 2");
    if (h_outer < 1 || h_inner < 1) throw ContractError("generate_two_layer: densities must be >= 1");
    check_cap(m, h_outer, cap, lattice_point_count(m, h_inner));

    ReferenceSet set;
    set.points = lattice_points(m, h_outer);
    const double pull = 0.5 / static_cast<double>(m);
    for (auto& p : lattice_points(m, h_inner)) {
        for (double& v : p) v = 0.5 * v + pull;
        bool dup = false;
        for (const auto& q : set.points) {
            if (same_point(p, q)) { dup = true; break; }
        }
        if (!dup) set.points.push_back(std::move(p));
    }
    set.density = DensityRecord{h_outer, h_inner, true};
    set.active.assign(set.points.size(), 0);
    return set;
}

ReferenceSet initial_reference_set(std::size_t m, std::size_t n, std::size_t cap) {
    if (m < 2) throw ContractError("initial_reference_set: M must be >= 2");
    if (n < 1) throw ContractError("initial_reference_set: N must be >= 1");
    const double target = static_cast<double>(n);
    if (m < 8) {
        for (int h = 1;; ++h) {
            if (lattice_point_count(m, h) >= target) return generate_simplex_lattice(m, h, cap);
        }
    }
    for (int h = 2;; ++h) {
        if (lattice_point_count(m, h) + lattice_point_count(m, h - 1) >= target) {
            ReferenceSet set = generate_two_layer(m, h, h - 1, cap);
            if (set.size() >= n) return set;
        }
    }
}

ReferenceSet escalate_density(const ReferenceSet& current, std::size_t m, std::size_t cap) {
    const DensityRecord& d = current.density;
    if (d.two_layer) return generate_two_layer(m, d.outer + 1, d.inner + 1, cap);
    return generate_simplex_lattice(m, d.outer + 1, cap);
}

SimplexProjection SimplexProjection::make(std::size_t m) {
    if (m < 2) throw ContractError("SimplexProjection: M must be >= 2");
    SimplexProjection proj;
    proj.origin.assign(m, 1.0 / static_cast<double>(m));

    // Gram-Schmidt over e_0 .. e_{M-2}, each first stripped of its component
    // along the all-ones direction.
    for (std::size_t k = 0; k + 1 < m; ++k) {
        std::vector<double> v(m, -1.0 / static_cast<double>(m)); // e_k minus its mean
        v[k] += 1.0;
        for (const auto& b : proj.basis) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += v[i] * b[i];
            for (std::size_t i = 0; i < m; ++i) v[i] -= dot * b[i];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        proj.basis.push_back(std::move(v));
    }
    return proj;
}

std::vector<std::vector<double>> project_to_simplex_plane(
    std::span<const std::vector<double>> points, const SimplexProjection& proj) {
    const std::size_t m = proj.origin.size();
    std::vector<std::vector<double>> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != m) throw ContractError("project_to_simplex_plane: dimension mismatch");
        double sum = 0.0;
        for (double v : p) {
            if (v < -1e-6) throw ContractError("project_to_simplex_plane: negative component");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-6) {
            throw ContractError("project_to_simplex_plane: point off the unit simplex");
        }
        std::vector<double> y(m - 1);
        for (std::size_t k = 0; k + 1 < m; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += proj.basis[k][i] * (p[i] - proj.origin[i]);
            y[k] = dot;
        }
        out.push_back(std::move(y));
    }
    return out;
}

void write_points_tsv(std::ostream& os, std::span<const std::vector<double>> points) {
    os.precision(17);
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) os << '\t';
            os << p[i];
        }
        os << '\n';
    }
}

std::vector<std::vector<double>> read_points_tsv(std::istream& is) {
    std::vector<std::vector<double>> points;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<double> p;
        double v;
        while (row >> v) p.push_back(v);
        if (!p.empty()) points.push_back(std::move(p));
    }
    return points;
}

} // namespace ccmo
