#include <doctest.h>

#include <cmath>

#include "ccmo/variation.hpp"

using namespace ccmo;

namespace {

std::vector<std::array<double, 2>> unit_bounds(std::size_t d) {
    return std::vector<std::array<double, 2>>(d, {0.0, 1.0});
}

} // namespace

TEST_SUITE("variation") {

TEST_CASE("initialize stays inside the bounds and reproduces per seed") {
    std::vector<std::array<double, 2>> bounds{{0.0, 1.0}, {-2.0, 3.0}, {10.0, 11.0}};
    Rng a(99), b(99);
    const auto pop1 = initialize(50, bounds, a);
    const auto pop2 = initialize(50, bounds, b);
    REQUIRE(pop1.size() == 50);
    for (std::size_t i = 0; i < pop1.size(); ++i) {
        CHECK(pop1.members[i].decision == pop2.members[i].decision);
        for (std::size_t k = 0; k < bounds.size(); ++k) {
            CHECK(pop1.members[i].decision[k] >= bounds[k][0]);
            CHECK(pop1.members[i].decision[k] <= bounds[k][1]);
        }
    }
}

TEST_CASE("initialize: empirical mean near the midpoint") {
    std::vector<std::array<double, 2>> bounds{{0.0, 1.0}, {2.0, 4.0}};
    Rng rng(1);
    const auto pop = initialize(100000, bounds, rng);
    double mean0 = 0.0, mean1 = 0.0;
    for (const auto& ind : pop.members) {
        mean0 += ind.decision[0];
        mean1 += ind.decision[1];
    }
    mean0 /= 100000.0;
    mean1 /= 100000.0;
    CHECK(std::abs(mean0 - 0.5) < 0.01);
    CHECK(std::abs(mean1 - 3.0) < 0.02);
}

TEST_CASE("sbx spread is 1 at u = 0.5: children equal parents") {
    CHECK(sbx_spread(0.5, 20.0) == doctest::Approx(1.0));
    // With beta = 1 the mean-preserving blend returns the parents themselves.
    const double x1 = 0.3, x2 = 0.8, beta = sbx_spread(0.5, 20.0);
    CHECK(0.5 * ((1 + beta) * x1 + (1 - beta) * x2) == doctest::Approx(x1));
    CHECK(0.5 * ((1 - beta) * x1 + (1 + beta) * x2) == doctest::Approx(x2));
}

TEST_CASE("sbx: identical parents give identical children") {
    VariationConfig cfg;
    cfg.bounds = unit_bounds(5);
    Individual p;
    p.decision = {0.1, 0.4, 0.5, 0.9, 0.3};
    Rng rng(7);
    Individual a, b;
    sbx(p, p, cfg, rng, a, b);
    CHECK(a.decision == p.decision);
    CHECK(b.decision == p.decision);
}

TEST_CASE("sbx symmetry: swapped parents under the same draws swap the children") {
    for (double u : {0.12, 0.34, 0.5, 0.77, 0.93}) {
        const double beta = sbx_spread(u, 20.0);
        const double x1 = 0.2, x2 = 0.7;
        const double c1 = 0.5 * ((1 + beta) * x1 + (1 - beta) * x2);
        const double c2 = 0.5 * ((1 - beta) * x1 + (1 + beta) * x2);
        const double c1_swapped = 0.5 * ((1 + beta) * x2 + (1 - beta) * x1);
        const double c2_swapped = 0.5 * ((1 - beta) * x2 + (1 + beta) * x1);
        CHECK(c1_swapped == doctest::Approx(c2));
        CHECK(c2_swapped == doctest::Approx(c1));
    }
}

TEST_CASE("sbx distribution: children centered on the parent midpoint") {
    VariationConfig cfg;
    cfg.bounds = std::vector<std::array<double, 2>>{{-5.0, 6.0}}; // wide: no clipping
    Individual pa, pb;
    pa.decision = {0.0};
    pb.decision = {1.0};
    Rng rng(13);
    double sum = 0.0;
    double midpoint_drift = 0.0;
    std::size_t crossed = 0;
    Individual a, b;
    for (int t = 0; t < 100000; ++t) {
        sbx(pa, pb, cfg, rng, a, b);
        sum += a.decision[0] + b.decision[0];
        midpoint_drift = std::max(midpoint_drift,
                                  std::abs(a.decision[0] + b.decision[0] - 1.0));
        if (a.decision[0] != 0.0) ++crossed;
    }
    CHECK(std::abs(sum / 200000.0 - 0.5) < 0.01); // child mean ~ parent mean
    CHECK(midpoint_drift < 1e-9);                 // c1 + c2 == p1 + p2 exactly
    // Per-variable crossover fires half of the time given p_c = 1.
    CHECK(std::abs(static_cast<double>(crossed) / 100000.0 - 0.5) < 0.01);
}

TEST_CASE("mutation delta is zero at u = 0.5") {
    CHECK(mutation_delta(0.5, 0.3, 0.7, 20.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mutation_delta(0.5 - 1e-12, 0.3, 0.7, 20.0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("polynomial mutation: p_m = 0 is the identity") {
    VariationConfig cfg;
    cfg.bounds = unit_bounds(4);
    cfg.p_m = 0.0;
    Rng rng(3);
    const std::vector<double> x{0.2, 0.4, 0.6, 0.8};
    CHECK(polynomial_mutation(x, cfg, rng) == x);
}

TEST_CASE("polynomial mutation: empirical rate matches p_m") {
    VariationConfig cfg;
    cfg.bounds = unit_bounds(1);
    cfg.p_m = 0.1;
    Rng rng(5);
    std::size_t changed = 0;
    const std::vector<double> x{0.5};
    const std::size_t trials = 100000;
    for (std::size_t t = 0; t < trials; ++t) {
        if (polynomial_mutation(x, cfg, rng)[0] != 0.5) ++changed;
    }
    // The draw at exactly u=0.5 leaves the value unchanged; measure against
    // the firing rate, which is what p_m controls.
    CHECK(std::abs(static_cast<double>(changed) / trials - 0.1) < 0.005);
}

TEST_CASE("polynomial mutation respects bounds") {
    VariationConfig cfg;
    cfg.bounds = std::vector<std::array<double, 2>>{{0.0, 1.0}, {-1.0, 2.0}};
    cfg.p_m = 1.0;
    Rng rng(9);
    for (int t = 0; t < 5000; ++t) {
        const auto out = polynomial_mutation(std::vector<double>{0.99, -0.95}, cfg, rng);
        CHECK(out[0] >= 0.0);
        CHECK(out[0] <= 1.0);
        CHECK(out[1] >= -1.0);
        CHECK(out[1] <= 2.0);
    }
}

TEST_CASE("make_offspring: exact size, in bounds, reproducible") {
    VariationConfig cfg;
    cfg.bounds = unit_bounds(6);
    Rng init_rng(21);
    const auto pop = initialize(9, cfg.bounds, init_rng);
    for (std::size_t n : {1, 5, 9, 14}) {
        Rng r1(33), r2(33);
        const auto off1 = make_offspring(pop, n, cfg, r1);
        const auto off2 = make_offspring(pop, n, cfg, r2);
        REQUIRE(off1.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(off1.members[i].decision == off2.members[i].decision);
            CHECK_FALSE(off1.members[i].valid);
            for (double v : off1.members[i].decision) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
}

TEST_CASE("make_offspring needs two parents") {
    VariationConfig cfg;
    cfg.bounds = unit_bounds(2);
    Rng rng(1);
    const auto solo = initialize(1, cfg.bounds, rng);
    CHECK_THROWS_AS(make_offspring(solo, 4, cfg, rng), ContractError);
}

} // TEST_SUITE
