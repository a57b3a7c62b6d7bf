#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "moscal/core.hpp"

namespace moscal {

enum class Family {
    WeightedSum,
    WeightedMaxOrdering,
    WeightedQNorm,
    AugmentedTchebycheff,
    HarmonicMean,
    NormDifference,
    CompositeMinMax,
    CustomExpression,
};

enum class PostCompose { Identity, NegReciprocal };

// A monotone norm usable as building block: the q-norms (q = inf is the
// Tchebycheff norm) and the modified augmented Tchebycheff norm.
struct NormFamily {
    enum class Kind { QNorm, AugmentedTchebycheff };

    Kind kind = Kind::QNorm;
    double q = 1.0;    // in [1, inf]
    double rho = 1.0;  // > 0

    static NormFamily q_norm(double q);
    static NormFamily augmented_tchebycheff(double rho);

    double operator()(std::span<const double> v) const;  // v componentwise >= 0
    double unit_value() const;                           // value at any unit vector

    friend bool operator==(const NormFamily&, const NormFamily&) = default;
};

// A scalarizing-function family with parameters: base formula, positive
// weights, an optional gamma flip applied to the argument before the weighted
// base formula, and an optional strictly increasing post-composition.
//
// evaluate() computes post(base(w .* flip_gamma(y))) under the decomposition
// the base family sees, which is pi transformed by gamma.
class ScalarizerSpec {
public:
    static ScalarizerSpec weighted_sum(std::vector<double> weights);
    static ScalarizerSpec weighted_max_ordering(std::vector<double> weights);
    static ScalarizerSpec weighted_q_norm(double q, std::vector<double> weights);
    static ScalarizerSpec augmented_tchebycheff(double rho, std::vector<double> weights);
    static ScalarizerSpec harmonic_mean(std::vector<double> weights);
    static ScalarizerSpec norm_difference(NormFamily inner_min, NormFamily inner_max,
                                          std::vector<double> weights);
    static ScalarizerSpec composite_min_max(double epsilon, std::vector<double> weights);
    // The two-branch quadratic min{ (w1 y1)^2 + w2 y2, w1 y1 + (w2 y2)^2 }.
    static ScalarizerSpec custom_expression(std::vector<double> weights);

    ScalarizerSpec with_weights(std::vector<double> weights) const;
    ScalarizerSpec with_gamma(GammaSet gamma) const;
    ScalarizerSpec with_post(PostCompose post) const;

    Family family() const { return family_; }
    const std::vector<double>& weights() const { return weights_; }
    const GammaSet& gamma() const { return gamma_; }
    PostCompose post() const { return post_; }
    double q() const { return q_; }
    double rho() const { return rho_; }
    double epsilon() const { return epsilon_; }
    const NormFamily& inner_min() const { return inner_min_; }
    const NormFamily& inner_max() const { return inner_max_; }
    std::size_t p() const { return weights_.size(); }

    friend bool operator==(const ScalarizerSpec&, const ScalarizerSpec&) = default;

private:
    ScalarizerSpec(Family family, std::vector<double> weights);

    Family family_;
    std::vector<double> weights_;
    GammaSet gamma_;
    PostCompose post_ = PostCompose::Identity;
    double q_ = 1.0;
    double rho_ = 1.0;
    double epsilon_ = 0.5;
    NormFamily inner_min_;
    NormFamily inner_max_;
};

// True when the spec is a scalarizing function for pi (the base family is
// monotone for the gamma-transformed decomposition and the post-composition
// is admissible there).
bool compatible(const ScalarizerSpec& spec, const Decomposition& pi);

double evaluate(const ScalarizerSpec& spec, const Decomposition& pi, const PointImage& y);

// Base-family value on the closure of the positive orthant under a pure
// minimization reading. Requires empty gamma and identity post; used for the
// unit-vector evaluations of norm-based quality bounds.
double evaluate_min_closure(const ScalarizerSpec& spec, std::span<const double> y);

// s^gamma(y) = s(flip_gamma(y)). Transforming twice with the same gamma gives
// back a spec that is structurally equal to the input.
ScalarizerSpec gamma_transform(const ScalarizerSpec& spec, const GammaSet& gamma);

// Verdict of the sampling-based monotonicity check. `violated` is a proof
// (the witness pair fails the strict implication); `strong`/`strict` are
// statistical evidence. A `strict` verdict carries the weak pair that blocks
// strong monotonicity.
struct MonotonicityVerdict {
    enum class Level { Strong, Strict, Violated };
    Level level = Level::Strong;
    std::optional<std::pair<PointImage, PointImage>> witness;
};

MonotonicityVerdict check_monotonicity(const ScalarizerSpec& spec, const Decomposition& pi,
                                       std::size_t samples = 10000, std::uint64_t seed = 42);

// Finds lambda > 0 such that scaling q by lambda on MIN and 1/lambda on MAX
// lands on the level set of y: |s(q') - s(y)| <= tol. Bracketing follows the
// proof bounds (1/2 min ratio, 2 max ratio), then bisection in log-lambda.
double find_level_scaling(const ScalarizerSpec& spec, const Decomposition& pi,
                          const PointImage& q, const PointImage& y, double tol = 1e-10);

// The scaled point q' built from the lambda returned by find_level_scaling.
PointImage level_scaled_point(const PointImage& q, double lambda, const Decomposition& pi);

namespace detail {

// Hot-loop evaluation core shared by evaluate() and the grid sweeps. `u` must
// already be the weighted, gamma-flipped argument and `eff` the
// gamma-transformed decomposition; no validation happens here.
double weighted_base_value(const ScalarizerSpec& spec, const Decomposition& eff,
                           std::span<const double> u);

// Bisection along the beam through q. `certified` records whether the value
// tolerance was met; when the bracket collapses to machine resolution first
// (possible under catastrophic cancellation at extreme rays), lambda is still
// the crossing to full double precision.
struct LevelScaling {
    double lambda = 1.0;
    bool certified = false;
};
LevelScaling level_scaling_search(const ScalarizerSpec& spec, const Decomposition& pi,
                                  const PointImage& q, const PointImage& y, double tol);

}  // namespace detail

}  // namespace moscal
