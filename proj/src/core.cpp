#include "ccmo/core.hpp"

#include <string>

namespace ccmo {

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ContractError("dominates: objective vectors of unequal length (" +
                            std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

FrontierSplit identify_frontiers(const Population& pop) {
    const std::size_t n = pop.size();
    if (n == 0) throw ContractError("identify_frontiers: empty population");
    for (const auto& ind : pop.members) {
        if (!ind.valid) throw ContractError("identify_frontiers: unevaluated individual");
    }

    // Pairwise scan. A member flagged dominated is skipped as a candidate
    // dominator: if j is dominated by k and j dominates i, then k dominates i,
    // so checking the surviving candidates is sufficient.
    std::vector<char> dominated(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& oi = pop.members[i].objectives;
        for (std::size_t j = 0; j < n && !dominated[i]; ++j) {
            if (j == i || dominated[j]) continue;
            if (dominates(pop.members[j].objectives, oi)) dominated[i] = 1;
        }
    }

    FrontierSplit split;
    split.frontiers.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        (dominated[i] ? split.nonfrontiers : split.frontiers).push_back(i);
    }
    return split;
}

} // namespace ccmo
