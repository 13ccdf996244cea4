#ifndef CCMO_PROBLEMS_HPP
#define CCMO_PROBLEMS_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ccmo/common.hpp"

namespace ccmo {

/// A scalable benchmark problem with an analytic Pareto-front sampler.
/// Decision-space dimension D follows the CEC'2018 competition defaults for
/// the given objective count M.
class Problem {
public:
    enum class PfKind { kFull, kPartial };
    enum class Curvature { kLinear, kConcave, kConvex, kMixed, kDisconnected };

    const std::string& name() const { return name_; }
    std::size_t m() const { return m_; }
    std::size_t d() const { return bounds_.size(); }
    std::span<const std::array<double, 2>> bounds() const { return bounds_; }
    PfKind pf_kind() const { return pf_kind_; }
    Curvature curvature() const { return curvature_; }

    /// Objective vector for a decision vector inside the box. Deterministic.
    std::vector<double> evaluate(std::span<const double> x) const;

    /// About k mutually non-dominated points on the true Pareto front,
    /// deterministically sampled. Requires k >= M.
    std::vector<std::vector<double>> pf_sample(std::size_t k) const;

private:
    friend Problem make_problem(const std::string&, std::size_t);
    enum class Id { kDtlz1, kDtlz2, kCdtlz3, kDtlz7, kWfg1, kMaf1 };

    Id id_;
    std::string name_;
    std::size_t m_ = 0;
    std::vector<std::array<double, 2>> bounds_;
    PfKind pf_kind_ = PfKind::kFull;
    Curvature curvature_ = Curvature::kLinear;
};

/// Registry lookup by (case-insensitive) name: dtlz1, dtlz2, cdtlz3, dtlz7,
/// wfg1, maf1. Throws ConfigError for unknown names or M < 2.
Problem make_problem(const std::string& name, std::size_t m);

std::vector<std::string> problem_names();

/// Default reference-front size used by the harness: about 5000 points for
/// M = 3, fewer for higher dimensions.
std::size_t default_pf_sample_size(std::size_t m);

} // namespace ccmo

#endif
