#include "ccmo/reflearn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace ccmo {

namespace {

constexpr double kKktTolerance = 1e-3;
constexpr std::size_t kMaxSmoIterations = 10000;
constexpr double kMarginBand = 1.5; // reserve samples with |f(x)| <= this

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

/// Deterministic SMO on the dual problem
///   min 1/2 a^T Q a - e^T a,  0 <= a_i <= C,  y^T a = 0,
/// with maximal-violating-pair working-set selection. Ties break to the
/// lowest index, so the solve is reproducible for a fixed sample order.
void smo_solve(const std::vector<std::vector<double>>& kernel, const std::vector<int>& y,
               double c, std::vector<double>& alpha, double& bias) {
    const std::size_t n = y.size();
    alpha.assign(n, 0.0);
    std::vector<double> grad(n, -1.0);

    for (std::size_t iter = 0; iter < kMaxSmoIterations; ++iter) {
        double up_best = -std::numeric_limits<double>::infinity();
        double low_best = std::numeric_limits<double>::infinity();
        std::size_t i = n, j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            const bool in_up = (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
            const bool in_low = (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
            if (in_up && v > up_best) {
                up_best = v;
                i = t;
            }
            if (in_low && v < low_best) {
                low_best = v;
                j = t;
            }
        }
        if (i == n || j == n || up_best - low_best <= kKktTolerance) break;

        double eta = kernel[i][i] + kernel[j][j] - 2.0 * kernel[i][j];
        eta = std::max(eta, 1e-12);
        double step = (up_best - low_best) / eta;
        // Feasible move along (da_i, da_j) = (y_i, -y_j) * step within the box.
        step = std::min(step, y[i] > 0 ? c - alpha[i] : alpha[i]);
        step = std::min(step, y[j] > 0 ? alpha[j] : c - alpha[j]);
        alpha[i] += y[i] * step;
        alpha[j] -= y[j] * step;
        const double di = y[i] * step, dj = -y[j] * step;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += y[t] * (kernel[t][i] * y[i] * di + kernel[t][j] * y[j] * dj);
        }
    }

    // b from the final violating-pair bounds; for free support vectors
    // -y_t * grad_t equals the bias exactly.
    double up_best = -std::numeric_limits<double>::infinity();
    double low_best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double v = -y[t] * grad[t];
        if ((y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0)) up_best = std::max(up_best, v);
        if ((y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c)) low_best = std::min(low_best, v);
    }
    if (std::isfinite(up_best) && std::isfinite(low_best)) {
        bias = 0.5 * (up_best + low_best);
    } else if (std::isfinite(up_best)) {
        bias = up_best;
    } else if (std::isfinite(low_best)) {
        bias = low_best;
    } else {
        bias = 0.0;
    }
}

} // namespace

StatusSampler sampler_update(StatusSampler s, std::span<const std::uint8_t> activity) {
    const bool same = s.has_history && s.last_activity.size() == activity.size() &&
                      std::equal(activity.begin(), activity.end(), s.last_activity.begin());
    if (same) {
        ++s.stable_count;
    } else {
        s.stable_count = 0;
        s.last_activity.assign(activity.begin(), activity.end());
        s.has_history = true;
    }
    return s;
}

std::size_t theta_schedule(std::size_t max_fes) {
    const double raw = std::ceil(static_cast<double>(max_fes) / 2e4);
    return static_cast<std::size_t>(std::min(20.0, std::max(5.0, raw)));
}

double EffectiveAreaClassifier::kernel(std::span<const double> a,
                                       std::span<const double> b) const {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double r = a[i] - b[i];
        d += r * r;
    }
    return std::exp(-d / (2.0 * kernel_scale * kernel_scale));
}

double EffectiveAreaClassifier::decision(std::span<const double> x) const {
    if (!trained) throw ContractError("classifier: decision before training");
    if (degenerate) {
        // Constant decision matching score 0.99 / 0.01 for the seen class.
        return degenerate_label > 0 ? std::log(0.99 / 0.01) : -std::log(0.99 / 0.01);
    }
    double f = bias;
    for (std::size_t i = 0; i < support_points.size(); ++i) {
        f += alphas[i] * support_labels[i] * kernel(support_points[i], x);
    }
    return f;
}

double EffectiveAreaClassifier::score(std::span<const double> x) const {
    return sigmoid(decision(x));
}

EffectiveAreaClassifier train_incremental(EffectiveAreaClassifier c,
                                          std::span<const std::vector<double>> actives,
                                          std::span<const std::vector<double>> inactives) {
    // Union of carried margin-band samples and the new batch.
    std::vector<std::vector<double>> pts = std::move(c.reserved_points);
    std::vector<int> labels = std::move(c.reserved_labels);
    for (const auto& p : actives) {
        pts.push_back(p);
        labels.push_back(+1);
    }
    for (const auto& p : inactives) {
        pts.push_back(p);
        labels.push_back(-1);
    }
    if (pts.empty()) throw ContractError("train_incremental: empty training input");

    const bool has_pos = std::find(labels.begin(), labels.end(), +1) != labels.end();
    const bool has_neg = std::find(labels.begin(), labels.end(), -1) != labels.end();
    if (!has_pos || !has_neg) {
        c.trained = true;
        c.degenerate = true;
        c.degenerate_label = has_pos ? +1 : -1;
        c.support_points.clear();
        c.support_labels.clear();
        c.alphas.clear();
        c.bias = 0.0;
        c.reserved_points = std::move(pts);
        c.reserved_labels = std::move(labels);
        return c;
    }

    const std::size_t n = pts.size();
    std::vector<std::vector<double>> kernel(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            kernel[i][j] = kernel[j][i] = c.kernel(pts[i], pts[j]);
        }
    }

    std::vector<double> alpha;
    smo_solve(kernel, labels, c.regularization, alpha, c.bias);

    c.support_points.clear();
    c.support_labels.clear();
    c.alphas.clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > 0.0) {
            c.support_points.push_back(pts[i]);
            c.support_labels.push_back(labels[i]);
            c.alphas.push_back(alpha[i]);
        }
    }
    c.trained = true;
    c.degenerate = false;

    c.reserved_points.clear();
    c.reserved_labels.clear();
    for (std::size_t i = 0; i < n; ++i) {
        double f = c.bias;
        for (std::size_t k = 0; k < n; ++k) f += alpha[k] * labels[k] * kernel[i][k];
        if (std::abs(f) <= kMarginBand) {
            c.reserved_points.push_back(pts[i]);
            c.reserved_labels.push_back(labels[i]);
        }
    }
    return c;
}

std::vector<double> score_points(const EffectiveAreaClassifier& c,
                                 std::span<const std::vector<double>> points) {
    if (!c.trained) throw ContractError("score_points: classifier not trained");
    std::vector<double> scores;
    scores.reserve(points.size());
    for (const auto& p : points) scores.push_back(c.score(p));
    return scores;
}

AdaptResult adapt(ReferenceSet refs, StatusSampler sampler, EffectiveAreaClassifier classifier,
                  std::size_t n, std::size_t generation, const AdaptOptions& options) {
    AdaptResult out{std::move(refs), std::move(sampler), std::move(classifier), std::nullopt};

    if (out.refs.points.empty()) throw ContractError("adapt: empty reference set");
    if (out.refs.active.size() != out.refs.size()) {
        throw ContractError("adapt: activity flags not folded into the reference set");
    }
    std::size_t active_count = 0;
    for (std::uint8_t a : out.refs.active) active_count += a ? 1 : 0;
    if (!out.sampler.stable() || active_count >= n) return out;

    const std::size_t m = out.refs.points.front().size();
    const SimplexProjection proj = SimplexProjection::make(m);

    std::vector<std::vector<double>> actives, inactives;
    for (std::size_t i = 0; i < out.refs.size(); ++i) {
        (out.refs.active[i] ? actives : inactives).push_back(out.refs.points[i]);
    }
    const auto proj_act = project_to_simplex_plane(actives, proj);
    const auto proj_inact = project_to_simplex_plane(inactives, proj);

    if (!out.classifier.trained) {
        out.classifier.kernel_scale = options.svm_s;
        out.classifier.regularization = options.svm_c;
    }
    out.classifier = train_incremental(std::move(out.classifier), proj_act, proj_inact);

    ReferenceSet denser;
    try {
        denser = escalate_density(out.refs, m, options.point_cap);
    } catch (const DensityTooHighError&) {
        LearningEvent ev;
        ev.generation = generation;
        ev.old_count = out.refs.size();
        ev.density_after = out.refs.density;
        ev.skipped_density_cap = true;
        out.event = ev;
        return out;
    }

    const auto scores = score_points(out.classifier, project_to_simplex_plane(denser.points, proj));

    // delta: the (n_keep_factor * N)-th highest score, or the lowest score
    // when fewer points were generated (then everything is kept).
    const std::size_t n_keep = std::min<std::size_t>(options.n_keep_factor * n, scores.size());
    std::vector<double> sorted = scores;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double delta = sorted[n_keep - 1];

    LearningEvent ev;
    ev.generation = generation;
    ev.old_count = out.refs.size();
    ev.generated_count = denser.size();
    ev.delta = delta;
    ev.density_after = denser.density;
    ev.min_kept_score = std::numeric_limits<double>::infinity();
    ev.max_discarded_score = -1.0;

    ReferenceSet next;
    next.density = denser.density;
    for (std::size_t i = 0; i < denser.size(); ++i) {
        if (scores[i] >= delta) {
            next.points.push_back(std::move(denser.points[i]));
            next.scores.push_back(scores[i]);
            ev.min_kept_score = std::min(ev.min_kept_score, scores[i]);
        } else {
            ev.max_discarded_score = std::max(ev.max_discarded_score, scores[i]);
        }
    }
    next.active.assign(next.points.size(), 0);
    ev.new_count = next.size();

    out.refs = std::move(next);
    out.sampler.reset(); // activity vectors are incomparable across reference sets
    out.event = ev;
    return out;
}

void write_classifier_snapshot(std::ostream& os, const EffectiveAreaClassifier& c) {
    os.precision(17);
    const std::size_t dim = c.support_points.empty()
                                ? (c.reserved_points.empty() ? 0 : c.reserved_points.front().size())
                                : c.support_points.front().size();
    os << "svm_snapshot v1\n";
    os << "dim " << dim << '\n';
    os << "kernel_scale " << c.kernel_scale << '\n';
    os << "regularization " << c.regularization << '\n';
    os << "bias " << c.bias << '\n';
    os << "trained " << (c.trained ? 1 : 0) << '\n';
    os << "degenerate " << (c.degenerate ? 1 : 0) << ' ' << c.degenerate_label << '\n';
    os << "support " << c.support_points.size() << '\n';
    for (std::size_t i = 0; i < c.support_points.size(); ++i) {
        os << c.alphas[i] << ' ' << c.support_labels[i];
        for (double v : c.support_points[i]) os << ' ' << v;
        os << '\n';
    }
    os << "reserved " << c.reserved_points.size() << '\n';
    for (std::size_t i = 0; i < c.reserved_points.size(); ++i) {
        os << c.reserved_labels[i];
        for (double v : c.reserved_points[i]) os << ' ' << v;
        os << '\n';
    }
}

EffectiveAreaClassifier read_classifier_snapshot(std::istream& is) {
    EffectiveAreaClassifier c;
    std::string word;
    std::size_t dim = 0, count = 0;
    int flag = 0;
    is >> word >> word; // "svm_snapshot v1"
    is >> word >> dim;
    is >> word >> c.kernel_scale;
    is >> word >> c.regularization;
    is >> word >> c.bias;
    is >> word >> flag;
    c.trained = flag != 0;
    is >> word >> flag >> c.degenerate_label;
    c.degenerate = flag != 0;
    is >> word >> count;
    for (std::size_t i = 0; i < count; ++i) {
        double a;
        int label;
        is >> a >> label;
        std::vector<double> p(dim);
        for (double& v : p) is >> v;
        c.alphas.push_back(a);
        c.support_labels.push_back(label);
        c.support_points.push_back(std::move(p));
    }
    is >> word >> count;
    for (std::size_t i = 0; i < count; ++i) {
        int label;
        is >> label;
        std::vector<double> p(dim);
        for (double& v : p) is >> v;
        c.reserved_labels.push_back(label);
        c.reserved_points.push_back(std::move(p));
    }
    if (!is) throw ContractError("read_classifier_snapshot: malformed snapshot");
    return c;
}

} // namespace ccmo
