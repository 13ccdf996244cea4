#ifndef CCMO_VARIATION_HPP
#define CCMO_VARIATION_HPP

#include <array>
#include <span>
#include <vector>

#include "ccmo/common.hpp"
#include "ccmo/core.hpp"

namespace ccmo {

struct VariationConfig {
    double eta_c = 20.0; // crossover distribution index
    double p_c = 1.0;    // per-pair crossover probability
    double eta_m = 20.0; // mutation distribution index
    double p_m = -1.0;   // per-variable mutation probability; < 0 means 1/D
    std::vector<std::array<double, 2>> bounds; // per-variable [low, high]

    double mutation_rate() const {
        return p_m >= 0.0 ? p_m : 1.0 / static_cast<double>(bounds.size());
    }
};

/// N individuals sampled uniformly within the bounds. Objectives unset.
Population initialize(std::size_t n, std::span<const std::array<double, 2>> bounds, Rng& rng);

/// SBX spread factor for a uniform draw u. beta(0.5) == 1.
double sbx_spread(double u, double eta_c);

/// Polynomial-mutation offset as a fraction of the variable range, for a
/// uniform draw u and normalized gaps to the bounds. Zero at u == 0.5.
double mutation_delta(double u, double gap_low, double gap_high, double eta_m);

/// Simulated binary crossover. Each variable crosses with probability 0.5
/// given the pair crosses at all (probability p_c); children are clipped to
/// the bounds.
void sbx(const Individual& parent_a, const Individual& parent_b, const VariationConfig& cfg,
         Rng& rng, Individual& child_a, Individual& child_b);

/// Polynomial mutation with index eta_m, applied per variable with
/// probability p_m; result clipped to the bounds.
std::vector<double> polynomial_mutation(std::span<const double> x, const VariationConfig& cfg,
                                        Rng& rng);

/// Exactly n offspring from uniform-random parent pairs (without replacement
/// per round), SBX, then mutation. Objectives unset.
Population make_offspring(const Population& pop, std::size_t n, const VariationConfig& cfg,
                          Rng& rng);

} // namespace ccmo

#endif
