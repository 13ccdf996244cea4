// Test-only reference implementations, written independently of the library
// code paths they check.

#ifndef CCMO_TESTS_ORACLES_HPP
#define CCMO_TESTS_ORACLES_HPP

#include <cstddef>
#include <vector>

namespace oracles {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

/// First non-dominated front by unconditional all-pairs comparison.
std::vector<std::size_t> brute_force_first_front(const Mat& objs);

/// Literal step-by-step execution of the cascade-clustering selection:
/// frontier split, min-sine attachment, metric-sorted frontier queues,
/// center-distance-sorted nonfrontier queues, round-robin popping. Returns
/// the selected pool indices in pick order.
std::vector<std::size_t> literal_selection(const Mat& pool_objs, const Mat& ref_points,
                                           std::size_t n, double alpha, bool use_pbi);

/// Batch soft-margin Gaussian-kernel SVM fitted by exhaustive deterministic
/// pairwise sweeps over the dual.
struct BatchSvm {
    Mat points;
    std::vector<int> labels;
    std::vector<double> alpha;
    double bias = 0.0;
    double kernel_scale = 0.056;

    double decision(const Vec& x) const;
    int predict(const Vec& x) const; // +1 / -1
};

BatchSvm svm_batch_oracle(const Mat& points, const std::vector<int>& labels, double s, double c);

/// Binomial coefficient C(n, k) by Pascal's recurrence.
double pascal_binomial(std::size_t n, std::size_t k);

} // namespace oracles

#endif
