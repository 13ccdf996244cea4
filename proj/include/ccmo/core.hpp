#ifndef CCMO_CORE_HPP
#define CCMO_CORE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ccmo/common.hpp"

namespace ccmo {

/// One candidate solution: a decision vector and, once evaluated, its
/// objective vector. All objectives are minimized.
struct Individual {
    std::vector<double> decision;
    std::vector<double> objectives;
    bool valid = false; // objectives have been evaluated
};

struct Population {
    std::vector<Individual> members;
    std::size_t capacity_hint = 0; // target size N

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
};

/// Partition of a population into the first non-dominated front and the rest.
struct FrontierSplit {
    std::vector<std::size_t> frontiers;
    std::vector<std::size_t> nonfrontiers;
};

/// Pareto dominance under minimization: a <= b componentwise with at least
/// one strict inequality. Equal vectors do not dominate each other.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Splits the population into the first non-dominated front and everything
/// else. No further fronts are ranked. Throws ContractError on an empty
/// population or unevaluated members.
FrontierSplit identify_frontiers(const Population& pop);

} // namespace ccmo

#endif
