#include "ccmo/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ccmo {

Population initialize(std::size_t n, std::span<const std::array<double, 2>> bounds, Rng& rng) {
    if (n < 1) throw ContractError("initialize: N must be >= 1");
    Population pop;
    pop.capacity_hint = n;
    pop.members.resize(n);
    for (auto& ind : pop.members) {
        ind.decision.resize(bounds.size());
        for (std::size_t k = 0; k < bounds.size(); ++k) {
            ind.decision[k] = rng.uniform(bounds[k][0], bounds[k][1]);
        }
    }
    return pop;
}

double sbx_spread(double u, double eta_c) {
    if (u <= 0.5) return std::pow(2.0 * u, 1.0 / (eta_c + 1.0));
    return std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta_c + 1.0));
}

double mutation_delta(double u, double gap_low, double gap_high, double eta_m) {
    const double me = eta_m + 1.0;
    if (u < 0.5) {
        const double v = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - gap_low, me);
        return std::pow(v, 1.0 / me) - 1.0;
    }
    const double v = 2.0 * (1.0 - u) + (2.0 * u - 1.0) * std::pow(1.0 - gap_high, me);
    return 1.0 - std::pow(v, 1.0 / me);
}

void sbx(const Individual& parent_a, const Individual& parent_b, const VariationConfig& cfg,
         Rng& rng, Individual& child_a, Individual& child_b) {
    const std::size_t d = parent_a.decision.size();
    if (parent_b.decision.size() != d || cfg.bounds.size() != d) {
        throw ContractError("sbx: decision vector length mismatch");
    }
    child_a.decision = parent_a.decision;
    child_b.decision = parent_b.decision;
    child_a.valid = child_b.valid = false;
    child_a.objectives.clear();
    child_b.objectives.clear();

    const bool cross = rng.uniform01() < cfg.p_c;
    if (!cross) return;
    for (std::size_t k = 0; k < d; ++k) {
        if (rng.uniform01() >= 0.5) continue; // variable copied as-is
        if (std::abs(parent_a.decision[k] - parent_b.decision[k]) <= 1e-14) continue;
        const double beta = sbx_spread(rng.uniform01(), cfg.eta_c);
        const double x1 = parent_a.decision[k];
        const double x2 = parent_b.decision[k];
        double c1 = 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2);
        double c2 = 0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2);
        child_a.decision[k] = std::clamp(c1, cfg.bounds[k][0], cfg.bounds[k][1]);
        child_b.decision[k] = std::clamp(c2, cfg.bounds[k][0], cfg.bounds[k][1]);
    }
}

std::vector<double> polynomial_mutation(std::span<const double> x, const VariationConfig& cfg,
                                        Rng& rng) {
    if (cfg.bounds.size() != x.size()) throw ContractError("polynomial_mutation: length mismatch");
    std::vector<double> out(x.begin(), x.end());
    const double rate = cfg.mutation_rate();
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (rng.uniform01() >= rate) continue;
        const double lo = cfg.bounds[k][0];
        const double hi = cfg.bounds[k][1];
        const double range = hi - lo;
        const double dq = mutation_delta(rng.uniform01(), (out[k] - lo) / range,
                                         (hi - out[k]) / range, cfg.eta_m);
        out[k] = std::clamp(out[k] + dq * range, lo, hi);
    }
    return out;
}

Population make_offspring(const Population& pop, std::size_t n, const VariationConfig& cfg,
                          Rng& rng) {
    if (pop.size() < 2) throw ContractError("make_offspring: need at least two parents");
    Population off;
    off.capacity_hint = n;
    off.members.reserve(n);

    std::vector<std::size_t> order(pop.size());
    std::size_t pos = order.size(); // forces a reshuffle on the first round
    Individual a, b;
    while (off.size() < n) {
        if (pos + 1 >= order.size()) {
            std::iota(order.begin(), order.end(), 0);
            for (std::size_t i = order.size(); i > 1; --i) { // Fisher-Yates
                std::swap(order[i - 1], order[rng.below(i)]);
            }
            pos = 0;
        }
        const Individual& p1 = pop.members[order[pos]];
        const Individual& p2 = pop.members[order[pos + 1]];
        pos += 2;
        sbx(p1, p2, cfg, rng, a, b);
        a.decision = polynomial_mutation(a.decision, cfg, rng);
        b.decision = polynomial_mutation(b.decision, cfg, rng);
        off.members.push_back(a);
        if (off.size() < n) off.members.push_back(b);
    }
    return off;
}

} // namespace ccmo
