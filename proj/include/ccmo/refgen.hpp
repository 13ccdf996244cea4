#ifndef CCMO_REFGEN_HPP
#define CCMO_REFGEN_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ccmo/common.hpp"

namespace ccmo {

/// Lattice density record. Single-layer lattices (M < 8) use `outer` as the
/// Das-Dennis parameter H; two-layer sets (M >= 8) use both layers.
struct DensityRecord {
    int outer = 1;
    int inner = 0;
    bool two_layer = false;

    bool operator==(const DensityRecord&) const = default;
};

/// Reference points on the unit simplex with their generation density,
/// per-point activity flags and optional classifier scores.
struct ReferenceSet {
    std::vector<std::vector<double>> points; // each sums to 1, components >= 0
    DensityRecord density;
    std::vector<std::uint8_t> active; // one flag per point
    std::vector<double> scores;       // optional, empty when unset

    std::size_t size() const { return points.size(); }
};

/// Orthonormal frame for the hyperplane parallel to the unit simplex,
/// anchored at the simplex centroid. Maps M-dimensional simplex points to
/// (M-1)-dimensional coordinates, preserving Euclidean distances.
struct SimplexProjection {
    std::vector<std::vector<double>> basis; // (M-1) rows, each length M
    std::vector<double> origin;             // centroid (1/M, ..., 1/M)

    static SimplexProjection make(std::size_t m);
};

inline constexpr std::size_t kDefaultPointCap = 1000000;

/// Number of Das-Dennis lattice points C(h+m-1, m-1), as a double so callers
/// can compare against a cap without overflow.
double lattice_point_count(std::size_t m, int h);

/// Das-Dennis simplex lattice: all vectors (i1/h, ..., iM/h) with nonnegative
/// integers summing to h. Throws DensityTooHighError past the point cap.
ReferenceSet generate_simplex_lattice(std::size_t m, int h,
                                      std::size_t cap = kDefaultPointCap);

/// Outer lattice at h_outer unioned with an inner lattice at h_inner shrunk
/// halfway toward the centroid; duplicates removed.
ReferenceSet generate_two_layer(std::size_t m, int h_outer, int h_inner,
                                std::size_t cap = kDefaultPointCap);

/// Initial reference set for a target population size: the smallest density
/// whose point count reaches n. Two-layer generation for m >= 8.
ReferenceSet initial_reference_set(std::size_t m, std::size_t n,
                                   std::size_t cap = kDefaultPointCap);

/// The next denser raw set: h+1 for single-layer, both layers +1 for
/// two-layer. Throws DensityTooHighError past the cap.
ReferenceSet escalate_density(const ReferenceSet& current, std::size_t m,
                              std::size_t cap = kDefaultPointCap);

/// Coordinates of (point - centroid) in the orthonormal simplex-plane basis.
/// Inputs must lie on the unit simplex within 1e-6.
std::vector<std::vector<double>> project_to_simplex_plane(
    std::span<const std::vector<double>> points, const SimplexProjection& proj);

/// Plain-text table: one point per row, tab-separated decimal columns.
void write_points_tsv(std::ostream& os, std::span<const std::vector<double>> points);
std::vector<std::vector<double>> read_points_tsv(std::istream& is);

} // namespace ccmo

#endif
