#include "ccmo/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ccmo/core.hpp"
#include "ccmo/refgen.hpp"

namespace ccmo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- DTLZ distance functions -----------------------------------------------

double g_sphere(std::span<const double> dist) {
    double g = 0.0;
    for (double x : dist) g += (x - 0.5) * (x - 0.5);
    return g;
}

double g_rastrigin(std::span<const double> dist) {
    double g = static_cast<double>(dist.size());
    for (double x : dist) {
        g += (x - 0.5) * (x - 0.5) - std::cos(20.0 * kPi * (x - 0.5));
    }
    return 100.0 * g;
}

std::vector<double> dtlz1_shape(std::span<const double> pos, double g, std::size_t m) {
    std::vector<double> f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double v = 0.5 * (1.0 + g);
        for (std::size_t j = 0; j + i + 1 < m; ++j) v *= pos[j];
        if (i > 0) v *= 1.0 - pos[m - i - 1];
        f[i] = v;
    }
    return f;
}

std::vector<double> dtlz2_shape(std::span<const double> pos, double g, std::size_t m) {
    std::vector<double> f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double v = 1.0 + g;
        for (std::size_t j = 0; j + i + 1 < m; ++j) v *= std::cos(pos[j] * kPi / 2.0);
        if (i > 0) v *= std::sin(pos[m - i - 1] * kPi / 2.0);
        f[i] = v;
    }
    return f;
}

// Convex transform from the scalable-test-problem suite: the first M-1
// objectives are raised to the 4th power, the last is squared.
void convexify(std::vector<double>& f) {
    for (std::size_t i = 0; i + 1 < f.size(); ++i) f[i] = std::pow(f[i], 4.0);
    f.back() = f.back() * f.back();
}

std::vector<double> maf1_shape(std::span<const double> pos, double g, std::size_t m) {
    std::vector<double> f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double u = 1.0;
        for (std::size_t j = 0; j + i + 1 < m; ++j) u *= pos[j];
        if (i > 0) u *= 1.0 - pos[m - i - 1];
        f[i] = (1.0 + g) * (1.0 - u);
    }
    return f;
}

double dtlz7_last(std::span<const double> front, double g, std::size_t m) {
    double h = static_cast<double>(m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        h -= front[i] / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * front[i]));
    }
    return (1.0 + g) * h;
}

// ---- WFG toolkit pieces (WFG1 only) -----------------------------------------

// The toolkit's rounding correction: values within epsilon of a bound snap to
// it. Without this the polynomial bias t3 blows up rounding noise near 0.
double correct01(double v) {
    if (v <= 1e-10) return 0.0;
    if (v >= 1.0 - 1e-10) return 1.0;
    return v;
}

double s_linear(double y, double a) {
    return correct01(std::abs(y - a) / std::abs(std::floor(a - y) + a));
}

double b_flat(double y, double a, double b, double c) {
    const double v = a + std::min(0.0, std::floor(y - b)) * (a * (b - y) / b) -
                     std::min(0.0, std::floor(c - y)) * ((1.0 - a) * (y - c) / (1.0 - c));
    return correct01(v);
}

double wfg_convex(std::span<const double> x, std::size_t m_1based, std::size_t m_total) {
    double h = 1.0;
    for (std::size_t i = 0; i + m_1based < m_total; ++i) h *= 1.0 - std::cos(x[i] * kPi / 2.0);
    if (m_1based > 1) h *= 1.0 - std::sin(x[m_total - m_1based] * kPi / 2.0);
    return h;
}

double wfg_mixed(double x1, double alpha, double a) {
    const double two_a_pi = 2.0 * a * kPi;
    return std::pow(1.0 - x1 - std::cos(two_a_pi * x1 + kPi / 2.0) / two_a_pi, alpha);
}

std::vector<double> wfg1_from_position(std::span<const double> x, double x_m, std::size_t m) {
    std::vector<double> f(m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        f[i] = x_m + 2.0 * static_cast<double>(i + 1) * wfg_convex(x, i + 1, m);
    }
    f[m - 1] = x_m + 2.0 * static_cast<double>(m) * wfg_mixed(x[0], 1.0, 5.0);
    return f;
}

std::vector<double> wfg1_evaluate(std::span<const double> z, std::size_t m) {
    const std::size_t n = z.size();
    const std::size_t k = m - 1; // position parameters
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = correct01(z[i] / (2.0 * static_cast<double>(i + 1)));
    for (std::size_t i = k; i < n; ++i) y[i] = s_linear(y[i], 0.35);
    for (std::size_t i = k; i < n; ++i) y[i] = b_flat(y[i], 0.8, 0.75, 0.85);
    for (std::size_t i = 0; i < n; ++i) y[i] = correct01(std::pow(y[i], 0.02));

    // Weighted-sum reduction, weights 2i. With k = M-1 every position group
    // holds a single parameter.
    std::vector<double> x(m);
    for (std::size_t i = 0; i < k; ++i) x[i] = y[i];
    double num = 0.0, den = 0.0;
    for (std::size_t i = k; i < n; ++i) {
        const double w = 2.0 * static_cast<double>(i + 1);
        num += w * y[i];
        den += w;
    }
    x[m - 1] = correct01(num / den);
    return wfg1_from_position(std::span<const double>(x.data(), m - 1), x[m - 1], m);
}

// ---- PF sampling helpers -----------------------------------------------------

std::vector<std::vector<double>> simplex_sample(std::size_t m, std::size_t k) {
    int h = 1;
    while (lattice_point_count(m, h) < static_cast<double>(k)) ++h;
    return generate_simplex_lattice(m, h, std::max<std::size_t>(kDefaultPointCap, 2 * k)).points;
}

// Keep the mutually non-dominated subset, then thin deterministically to at
// most k points.
std::vector<std::vector<double>> nd_thin(std::vector<std::vector<double>> pts, std::size_t k) {
    Population pop;
    pop.members.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pop.members[i].objectives = std::move(pts[i]);
        pop.members[i].valid = true;
    }
    const FrontierSplit split = identify_frontiers(pop);
    std::vector<std::vector<double>> nd;
    nd.reserve(split.frontiers.size());
    for (std::size_t idx : split.frontiers) nd.push_back(std::move(pop.members[idx].objectives));
    if (nd.size() <= k) return nd;
    std::vector<std::vector<double>> out;
    out.reserve(k);
    const double stride = static_cast<double>(nd.size()) / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back(std::move(nd[static_cast<std::size_t>(i * stride)]));
    }
    return out;
}

// All grid points over [0,1]^dims with the given side length.
std::vector<std::vector<double>> unit_grid(std::size_t dims, std::size_t side) {
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> idx(dims, 0);
    for (;;) {
        std::vector<double> p(dims);
        for (std::size_t i = 0; i < dims; ++i) {
            p[i] = static_cast<double>(idx[i]) / static_cast<double>(side - 1);
        }
        out.push_back(std::move(p));
        std::size_t i = 0;
        for (; i < dims; ++i) {
            if (++idx[i] < side) break;
            idx[i] = 0;
        }
        if (i == dims) return out;
    }
}

std::size_t grid_side(std::size_t dims, std::size_t target) {
    const double side = std::pow(static_cast<double>(target), 1.0 / static_cast<double>(dims));
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(side)));
}

} // namespace

std::vector<double> Problem::evaluate(std::span<const double> x) const {
    if (x.size() != d()) throw ContractError(name_ + ": decision vector length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < bounds_[i][0] || x[i] > bounds_[i][1]) {
            throw ContractError(name_ + ": decision variable out of bounds");
        }
    }
    const std::span<const double> pos = x.subspan(0, m_ - 1);
    const std::span<const double> dist = x.subspan(m_ - 1);
    switch (id_) {
        case Id::kDtlz1:
            return dtlz1_shape(pos, g_rastrigin(dist), m_);
        case Id::kDtlz2:
            return dtlz2_shape(pos, g_sphere(dist), m_);
        case Id::kCdtlz3: {
            auto f = dtlz2_shape(pos, g_rastrigin(dist), m_);
            convexify(f);
            return f;
        }
        case Id::kDtlz7: {
            std::vector<double> f(m_);
            for (std::size_t i = 0; i + 1 < m_; ++i) f[i] = x[i];
            double s = 0.0;
            for (double v : dist) s += v;
            f[m_ - 1] = dtlz7_last(f, 1.0 + 9.0 * s / static_cast<double>(dist.size()), m_);
            return f;
        }
        case Id::kWfg1:
            return wfg1_evaluate(x, m_);
        case Id::kMaf1:
            return maf1_shape(pos, g_sphere(dist), m_);
    }
    throw ContractError("unreachable");
}

std::vector<std::vector<double>> Problem::pf_sample(std::size_t k) const {
    if (k < m_) throw ContractError(name_ + ": pf_sample needs k >= M");
    switch (id_) {
        case Id::kDtlz1: {
            auto pts = simplex_sample(m_, k);
            for (auto& p : pts) {
                for (double& v : p) v *= 0.5;
            }
            return pts;
        }
        case Id::kDtlz2: {
            auto pts = simplex_sample(m_, k);
            for (auto& p : pts) {
                double n = 0.0;
                for (double v : p) n += v * v;
                n = std::sqrt(n);
                for (double& v : p) v /= n;
            }
            return pts;
        }
        case Id::kCdtlz3: {
            auto pts = make_problem("dtlz2", m_).pf_sample(k);
            for (auto& p : pts) convexify(p);
            return pts;
        }
        case Id::kDtlz7: {
            const std::size_t side = grid_side(m_ - 1, 4 * k);
            auto grid = unit_grid(m_ - 1, side);
            std::vector<std::vector<double>> cand;
            cand.reserve(grid.size());
            for (auto& p : grid) {
                std::vector<double> f(m_);
                std::copy(p.begin(), p.end(), f.begin());
                f[m_ - 1] = dtlz7_last(f, 1.0, m_);
                cand.push_back(std::move(f));
            }
            return nd_thin(std::move(cand), k);
        }
        case Id::kWfg1: {
            const std::size_t side = grid_side(m_ - 1, 4 * k);
            auto grid = unit_grid(m_ - 1, side);
            std::vector<std::vector<double>> cand;
            cand.reserve(grid.size());
            for (auto& p : grid) cand.push_back(wfg1_from_position(p, 0.0, m_));
            return nd_thin(std::move(cand), k);
        }
        case Id::kMaf1: {
            auto pts = simplex_sample(m_, k);
            for (auto& p : pts) {
                for (double& v : p) v = 1.0 - v;
            }
            return pts;
        }
    }
    throw ContractError("unreachable");
}

Problem make_problem(const std::string& name, std::size_t m) {
    if (m < 2) throw ConfigError("problem needs M >= 2");
    std::string key;
    for (char c : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

    Problem p;
    p.name_ = key;
    p.m_ = m;
    std::size_t d = 0;
    if (key == "dtlz1") {
        p.id_ = Problem::Id::kDtlz1;
        d = m + 4;
        p.pf_kind_ = Problem::PfKind::kFull;
        p.curvature_ = Problem::Curvature::kLinear;
    } else if (key == "dtlz2") {
        p.id_ = Problem::Id::kDtlz2;
        d = m + 9;
        p.pf_kind_ = Problem::PfKind::kFull;
        p.curvature_ = Problem::Curvature::kConcave;
    } else if (key == "cdtlz3") {
        p.id_ = Problem::Id::kCdtlz3;
        d = m + 9;
        p.pf_kind_ = Problem::PfKind::kFull;
        p.curvature_ = Problem::Curvature::kConvex;
    } else if (key == "dtlz7") {
        p.id_ = Problem::Id::kDtlz7;
        d = m + 19;
        p.pf_kind_ = Problem::PfKind::kPartial;
        p.curvature_ = Problem::Curvature::kDisconnected;
    } else if (key == "wfg1") {
        p.id_ = Problem::Id::kWfg1;
        d = m - 1 + 10;
        p.pf_kind_ = Problem::PfKind::kFull;
        p.curvature_ = Problem::Curvature::kMixed;
    } else if (key == "maf1") {
        p.id_ = Problem::Id::kMaf1;
        d = m + 9;
        p.pf_kind_ = Problem::PfKind::kPartial;
        p.curvature_ = Problem::Curvature::kLinear;
    } else {
        throw ConfigError("unknown problem: " + name);
    }
    p.bounds_.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double hi = (p.id_ == Problem::Id::kWfg1) ? 2.0 * static_cast<double>(i + 1) : 1.0;
        p.bounds_[i] = {0.0, hi};
    }
    return p;
}

std::vector<std::string> problem_names() {
    return {"dtlz1", "dtlz2", "cdtlz3", "dtlz7", "wfg1", "maf1"};
}

std::size_t default_pf_sample_size(std::size_t m) {
    if (m <= 2) return 2000;
    if (m == 3) return 5000;
    if (m <= 5) return 3000;
    return 1000;
}

} // namespace ccmo
