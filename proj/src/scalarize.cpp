#include "moscal/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moscal/rng.hpp"

namespace moscal {

namespace {

void check_positive_weights(const std::vector<double>& w) {
    if (w.empty()) raise("InvalidWeights", "weight vector must not be empty");
    for (double x : w) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            raise("InvalidWeights", "weights must be finite and strictly positive");
        }
    }
}

}  // namespace

NormFamily NormFamily::q_norm(double q) {
    if (!(q >= 1.0)) raise("InvalidNormParameter", "q must be at least 1");
    NormFamily n;
    n.kind = Kind::QNorm;
    n.q = q;
    return n;
}

NormFamily NormFamily::augmented_tchebycheff(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        raise("InvalidNormParameter", "rho must be strictly positive");
    }
    NormFamily n;
    n.kind = Kind::AugmentedTchebycheff;
    n.rho = rho;
    return n;
}

double NormFamily::operator()(std::span<const double> v) const {
    if (v.empty()) return 0.0;
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, x);
    if (kind == Kind::AugmentedTchebycheff) {
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum + rho * mx;
    }
    if (std::isinf(q)) return mx;
    if (q == 1.0) {
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum;
    }
    if (mx == 0.0) return 0.0;
    // scale by the max so pow never overflows
    double sum = 0.0;
    for (double x : v) sum += std::pow(x / mx, q);
    return mx * std::pow(sum, 1.0 / q);
}

double NormFamily::unit_value() const {
    return kind == Kind::AugmentedTchebycheff ? 1.0 + rho : 1.0;
}

ScalarizerSpec::ScalarizerSpec(Family family, std::vector<double> weights)
    : family_(family), weights_(std::move(weights)) {
    check_positive_weights(weights_);
}

ScalarizerSpec ScalarizerSpec::weighted_sum(std::vector<double> weights) {
    return ScalarizerSpec(Family::WeightedSum, std::move(weights));
}

ScalarizerSpec ScalarizerSpec::weighted_max_ordering(std::vector<double> weights) {
    return ScalarizerSpec(Family::WeightedMaxOrdering, std::move(weights));
}

ScalarizerSpec ScalarizerSpec::weighted_q_norm(double q, std::vector<double> weights) {
    ScalarizerSpec s(Family::WeightedQNorm, std::move(weights));
    if (!(q >= 1.0)) raise("InvalidNormParameter", "q must be at least 1");
    s.q_ = q;
    return s;
}

ScalarizerSpec ScalarizerSpec::augmented_tchebycheff(double rho, std::vector<double> weights) {
    ScalarizerSpec s(Family::AugmentedTchebycheff, std::move(weights));
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        raise("InvalidNormParameter", "rho must be strictly positive");
    }
    s.rho_ = rho;
    return s;
}

ScalarizerSpec ScalarizerSpec::harmonic_mean(std::vector<double> weights) {
    return ScalarizerSpec(Family::HarmonicMean, std::move(weights));
}

ScalarizerSpec ScalarizerSpec::norm_difference(NormFamily inner_min, NormFamily inner_max,
                                               std::vector<double> weights) {
    ScalarizerSpec s(Family::NormDifference, std::move(weights));
    s.inner_min_ = inner_min;
    s.inner_max_ = inner_max;
    return s;
}

ScalarizerSpec ScalarizerSpec::composite_min_max(double epsilon, std::vector<double> weights) {
    ScalarizerSpec s(Family::CompositeMinMax, std::move(weights));
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        raise("EpsOutOfRange", "epsilon must lie strictly between 0 and 1");
    }
    s.epsilon_ = epsilon;
    return s;
}

ScalarizerSpec ScalarizerSpec::custom_expression(std::vector<double> weights) {
    return ScalarizerSpec(Family::CustomExpression, std::move(weights));
}

ScalarizerSpec ScalarizerSpec::with_weights(std::vector<double> weights) const {
    check_positive_weights(weights);
    if (weights.size() != weights_.size()) {
        raise("DimensionMismatch", "replacement weights must keep the dimension");
    }
    ScalarizerSpec s = *this;
    s.weights_ = std::move(weights);
    return s;
}

ScalarizerSpec ScalarizerSpec::with_gamma(GammaSet gamma) const {
    if (!gamma.empty() && gamma.max_index() >= p()) {
        raise("IndexOutOfRange", "gamma index exceeds spec dimension");
    }
    ScalarizerSpec s = *this;
    s.gamma_ = std::move(gamma);
    return s;
}

ScalarizerSpec ScalarizerSpec::with_post(PostCompose post) const {
    ScalarizerSpec s = *this;
    s.post_ = post;
    return s;
}

namespace {

bool base_compatible(const ScalarizerSpec& spec, const Decomposition& eff) {
    switch (spec.family()) {
        case Family::WeightedSum:
            return true;
        case Family::WeightedMaxOrdering:
        case Family::WeightedQNorm:
        case Family::AugmentedTchebycheff:
            return eff.pure_min();
        case Family::HarmonicMean:
            return eff.pure_max();
        case Family::NormDifference:
            return eff.min_is_prefix();
        case Family::CompositeMinMax:
        case Family::CustomExpression:
            return eff.pure_min() && eff.p() == 2;
    }
    return false;
}

bool base_positive_valued(const ScalarizerSpec& spec, const Decomposition& eff) {
    switch (spec.family()) {
        case Family::WeightedSum:
            return eff.pure_min();
        case Family::WeightedMaxOrdering:
        case Family::WeightedQNorm:
        case Family::AugmentedTchebycheff:
        case Family::CompositeMinMax:
        case Family::CustomExpression:
            return true;
        case Family::HarmonicMean:
        case Family::NormDifference:
            return false;
    }
    return false;
}

}  // namespace

namespace detail {

double weighted_base_value(const ScalarizerSpec& spec, const Decomposition& eff,
                           std::span<const double> u) {
    double v = 0.0;
    switch (spec.family()) {
        case Family::WeightedSum: {
            for (std::size_t i = 0; i < u.size(); ++i) v += eff.is_min(i) ? u[i] : -u[i];
            break;
        }
        case Family::WeightedMaxOrdering: {
            v = -std::numeric_limits<double>::infinity();
            for (double x : u) v = std::max(v, x);
            break;
        }
        case Family::WeightedQNorm:
            v = NormFamily::q_norm(spec.q())(u);
            break;
        case Family::AugmentedTchebycheff:
            v = NormFamily::augmented_tchebycheff(spec.rho())(u);
            break;
        case Family::HarmonicMean: {
            // negated weighted harmonic mean, so optimal still means minimal;
            // w_i / y_i == w_i^2 / u_i
            double wsum = 0.0;
            double denom = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                wsum += spec.weights()[i];
                denom += spec.weights()[i] * spec.weights()[i] / u[i];
            }
            v = -wsum / denom;
            break;
        }
        case Family::NormDifference: {
            std::size_t k = 0;
            while (k < eff.p() && eff.is_min(k)) ++k;
            v = spec.inner_min()(u.subspan(0, k)) - spec.inner_max()(u.subspan(k));
            break;
        }
        case Family::CompositeMinMax: {
            const double a = u[0];
            const double b = u[1];
            const double eps = spec.epsilon();
            v = std::max(std::min(a / eps, b), std::min(a, b / eps));
            break;
        }
        case Family::CustomExpression:
            v = std::min(u[0] * u[0] + u[1], u[0] + u[1] * u[1]);
            break;
    }
    if (spec.post() == PostCompose::NegReciprocal) v = -1.0 / v;
    return v;
}

}  // namespace detail

bool compatible(const ScalarizerSpec& spec, const Decomposition& pi) {
    if (spec.p() != pi.p()) return false;
    if (!spec.gamma().empty() && spec.gamma().max_index() >= pi.p()) return false;
    Decomposition eff = pi.transformed(spec.gamma());
    if (!base_compatible(spec, eff)) return false;
    if (spec.post() == PostCompose::NegReciprocal && !base_positive_valued(spec, eff)) {
        return false;
    }
    return true;
}

double evaluate(const ScalarizerSpec& spec, const Decomposition& pi, const PointImage& y) {
    if (y.dim() != pi.p()) {
        raise("DimensionMismatch", "point dimension does not match the decomposition");
    }
    if (!compatible(spec, pi)) {
        raise("SpecIncompatibleWithDecomposition",
              "the scalarizer family is not monotone for this decomposition");
    }
    Decomposition eff = pi.transformed(spec.gamma());
    std::vector<double> u(y.dim());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double z = spec.gamma().contains(i) ? 1.0 / y[i] : y[i];
        u[i] = spec.weights()[i] * z;
    }
    return detail::weighted_base_value(spec, eff, u);
}

double evaluate_min_closure(const ScalarizerSpec& spec, std::span<const double> y) {
    if (!spec.gamma().empty() || spec.post() != PostCompose::Identity) {
        raise("SpecIncompatibleWithDecomposition",
              "closure evaluation requires a bare family");
    }
    if (y.size() != spec.p()) {
        raise("DimensionMismatch", "point dimension does not match the spec");
    }
    Decomposition eff = Decomposition::all_min(spec.p());
    if (!base_compatible(spec, eff)) {
        raise("SpecIncompatibleWithDecomposition",
              "family is not a pure-minimization scalarizer");
    }
    std::vector<double> u(y.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(y[i] >= 0.0)) raise("NonPositiveComponent", "closure evaluation needs y >= 0");
        u[i] = spec.weights()[i] * y[i];
    }
    return detail::weighted_base_value(spec, eff, u);
}

ScalarizerSpec gamma_transform(const ScalarizerSpec& spec, const GammaSet& gamma) {
    if (!gamma.empty() && gamma.max_index() >= spec.p()) {
        raise("IndexOutOfRange", "gamma index exceeds spec dimension");
    }
    return spec.with_gamma(spec.gamma().symmetric_difference(gamma));
}

namespace {

PointImage random_point(Rng& rng, std::size_t p) {
    std::vector<double> v(p);
    for (double& x : v) x = rng.log_uniform(1e-3, 1e3);
    return PointImage(std::move(v));
}

// Worsens the selected components of y by a factor in (1.02, 10] so the gap
// survives floating-point evaluation.
PointImage worsened(const PointImage& y, const Decomposition& pi,
                    const std::vector<bool>& which, Rng& rng) {
    std::vector<double> v = y.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!which[i]) continue;
        const double f = std::exp((0.01 + 0.99 * rng.next_unit_open_low()) * std::log(10.0));
        v[i] = pi.is_min(i) ? v[i] * f : v[i] / f;
    }
    return PointImage(std::move(v));
}

}  // namespace

MonotonicityVerdict check_monotonicity(const ScalarizerSpec& spec, const Decomposition& pi,
                                       std::size_t samples, std::uint64_t seed) {
    if (samples < 1) raise("InvalidSampleCount", "at least one sample is required");
    Rng rng(seed);
    const std::size_t p = pi.p();

    // strict pairs y <_pi y': a failure disproves strict monotonicity
    for (std::size_t t = 0; t < samples; ++t) {
        PointImage y = random_point(rng, p);
        PointImage worse = worsened(y, pi, std::vector<bool>(p, true), rng);
        if (!(evaluate(spec, pi, y) < evaluate(spec, pi, worse))) {
            return {MonotonicityVerdict::Level::Violated, std::make_pair(y, worse)};
        }
    }

    // weak pairs y <=_pi y' with only some components worsened: a failure
    // leaves strict monotonicity intact but blocks strong
    for (std::size_t t = 0; t < samples; ++t) {
        PointImage y = random_point(rng, p);
        std::vector<bool> which(p, false);
        std::size_t count = 0;
        for (std::size_t i = 0; i < p; ++i) {
            which[i] = rng.next_unit() < 0.5;
            count += which[i];
        }
        if (count == 0) which[rng.index(p)] = true;
        PointImage worse = worsened(y, pi, which, rng);
        if (!(evaluate(spec, pi, y) < evaluate(spec, pi, worse))) {
            return {MonotonicityVerdict::Level::Strict, std::make_pair(y, worse)};
        }
    }
    return {MonotonicityVerdict::Level::Strong, std::nullopt};
}

PointImage level_scaled_point(const PointImage& q, double lambda, const Decomposition& pi) {
    std::vector<double> v(q.dim());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = pi.is_min(i) ? lambda * q[i] : q[i] / lambda;
    }
    return PointImage(std::move(v));
}

namespace detail {

LevelScaling level_scaling_search(const ScalarizerSpec& spec, const Decomposition& pi,
                                  const PointImage& q, const PointImage& y, double tol) {
    if (!(tol > 0.0)) raise("InvalidTolerance", "tol must be strictly positive");
    if (q.dim() != pi.p()) {
        raise("DimensionMismatch", "point dimension does not match the decomposition");
    }
    const double target = evaluate(spec, pi, y);  // also validates compatibility
    const std::size_t p = pi.p();

    // non-allocating evaluation along the beam, for the many bisection steps
    Decomposition eff = pi.transformed(spec.gamma());
    std::vector<char> flip(p), minimize(p);
    for (std::size_t i = 0; i < p; ++i) {
        flip[i] = spec.gamma().contains(i);
        minimize[i] = pi.is_min(i);
    }
    std::vector<double> u(p);
    auto value_at = [&](double lambda) {
        for (std::size_t i = 0; i < p; ++i) {
            const double c = minimize[i] ? lambda * q[i] : q[i] / lambda;
            u[i] = spec.weights()[i] * (flip[i] ? 1.0 / c : c);
        }
        return weighted_base_value(spec, eff, u);
    };

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        const double r = minimize[i] ? y[i] / q[i] : q[i] / y[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    lo *= 0.5;
    hi *= 2.0;

    // s_q is strictly increasing in lambda; widen the bracket if rounding
    // pushed the target outside it
    double vlo = value_at(lo);
    double vhi = value_at(hi);
    for (int guard = 0; vlo > target && guard < 60; ++guard) {
        lo *= 0.5;
        vlo = value_at(lo);
    }
    for (int guard = 0; vhi < target && guard < 60; ++guard) {
        hi *= 2.0;
        vhi = value_at(hi);
    }
    if (vlo > target || vhi < target) {
        raise("ToleranceNotReached", "could not bracket the level set");
    }

    double mid = std::sqrt(lo * hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double v = value_at(mid);
        if (std::abs(v - target) <= tol) return {mid, true};
        if (v < target) {
            lo = mid;
        } else {
            hi = mid;
        }
        const double next = std::sqrt(lo * hi);
        if (!(next > lo) || !(next < hi)) return {next, false};  // bracket exhausted
        mid = next;
    }
    return {mid, false};
}

}  // namespace detail

double find_level_scaling(const ScalarizerSpec& spec, const Decomposition& pi,
                          const PointImage& q, const PointImage& y, double tol) {
    detail::LevelScaling result = detail::level_scaling_search(spec, pi, q, y, tol);
    if (!result.certified) {
        raise("ToleranceNotReached", "bisection did not reach the requested tolerance");
    }
    return result.lambda;
}

}  // namespace moscal
