#include "moscal/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace moscal {

WeightGrid weight_grid(std::size_t p, std::size_t m) {
    if (p < 1) raise("InvalidDecomposition", "p must be at least 1");
    if (m < 2 || m < p) {
        raise("ResolutionTooSmall",
              "grid resolution m=" + std::to_string(m) + " is too small for p=" +
                  std::to_string(p));
    }
    WeightGrid grid;
    grid.p = p;
    grid.m = m;
    std::vector<std::size_t> parts(p, 1);
    // enumerate compositions (i_1,...,i_p), i_j >= 1, sum m, lexicographically
    std::vector<double> w(p);
    auto emit = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
        if (pos + 1 == p) {
            parts[pos] = remaining;
            for (std::size_t i = 0; i < p; ++i) {
                w[i] = static_cast<double>(parts[i]) / static_cast<double>(m);
            }
            grid.vectors.push_back(w);
            return;
        }
        for (std::size_t v = 1; v + (p - pos - 1) <= remaining; ++v) {
            parts[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    emit(emit, 0, m);
    return grid;
}

namespace {

struct SweepContext {
    Decomposition eff;                     // decomposition the base family sees
    std::vector<std::vector<double>> z;    // gamma-flipped images, point-major
    std::vector<double> u;                 // scratch: weighted argument
};

SweepContext make_sweep_context(const Instance& instance, const ScalarizerSpec& spec) {
    if (!compatible(spec, instance.decomposition())) {
        raise("SpecIncompatibleWithDecomposition",
              "the scalarizer family is not monotone for this decomposition");
    }
    SweepContext ctx{instance.decomposition().transformed(spec.gamma()), {}, {}};
    ctx.z.reserve(instance.size());
    for (const LabeledPoint& pt : instance.points()) {
        std::vector<double> z = pt.image.values();
        for (std::size_t i : spec.gamma().indices()) z[i] = 1.0 / z[i];
        ctx.z.push_back(std::move(z));
    }
    ctx.u.resize(instance.p());
    return ctx;
}

// Appends the optimal indices for the given combined weights to `out`.
// Arithmetic matches evaluate() exactly: u_i = weights_i * flipped_i.
void optimal_for_weights(const Instance& instance, const ScalarizerSpec& spec,
                         SweepContext& ctx, const std::vector<double>& weights,
                         double tie_tol, std::vector<std::size_t>& out) {
    const std::size_t n = instance.size();
    const std::size_t p = instance.p();
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < p; ++i) ctx.u[i] = weights[i] * ctx.z[j][i];
        values[j] = detail::weighted_base_value(spec, ctx.eff, ctx.u);
        best = std::min(best, values[j]);
    }
    const double cutoff = best + tie_tol * (1.0 + std::abs(best));
    for (std::size_t j = 0; j < n; ++j) {
        if (values[j] <= cutoff) out.push_back(j);
    }
}

}  // namespace

std::vector<std::size_t> optimal_indices(const Instance& instance, const ScalarizerSpec& spec,
                                         double tie_tol) {
    SweepContext ctx = make_sweep_context(instance, spec);
    std::vector<std::size_t> out;
    optimal_for_weights(instance, spec, ctx, spec.weights(), tie_tol, out);
    return out;
}

std::vector<std::string> optimal_set(const Instance& instance, const ScalarizerSpec& spec,
                                     double tie_tol) {
    std::vector<std::string> ids;
    for (std::size_t j : optimal_indices(instance, spec, tie_tol)) {
        ids.push_back(instance[j].id);
    }
    return ids;
}

std::vector<std::string> supported_set(const Instance& instance,
                                       const ScalarizerSpec& family_template,
                                       const WeightGrid& grid, double tie_tol,
                                       bool one_per_function) {
    if (grid.p != instance.p()) {
        raise("DimensionMismatch", "grid dimension does not match the instance");
    }
    SweepContext ctx = make_sweep_context(instance, family_template);
    const std::size_t p = instance.p();
    std::vector<char> selected(instance.size(), 0);
    std::vector<double> weights(p);
    std::vector<std::size_t> opt;
    for (const std::vector<double>& gw : grid.vectors) {
        for (std::size_t i = 0; i < p; ++i) {
            weights[i] = family_template.weights()[i] * gw[i];
        }
        opt.clear();
        optimal_for_weights(instance, family_template, ctx, weights, tie_tol, opt);
        if (one_per_function) {
            selected[opt.front()] = 1;
        } else {
            for (std::size_t j : opt) selected[j] = 1;
        }
    }
    std::vector<std::string> ids;
    for (std::size_t j = 0; j < instance.size(); ++j) {
        if (selected[j]) ids.push_back(instance[j].id);
    }
    return ids;
}

Instance random_instance(const Decomposition& pi, std::size_t n_points, double lo, double hi,
                         Rng& rng) {
    if (n_points < 1) raise("EmptyInstance", "an instance needs at least one point");
    std::vector<LabeledPoint> points;
    points.reserve(n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
        std::vector<double> v(pi.p());
        for (double& x : v) x = rng.log_uniform(lo, hi);
        points.push_back({"x" + std::to_string(j + 1), PointImage(std::move(v))});
    }
    return Instance(pi, std::move(points));
}

}  // namespace moscal
