#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "moscal/core.hpp"
#include "moscal/scalarize.hpp"

namespace moscal {

// A user-supplied norm on the closure of the positive orthant.
using NormEvaluator = std::function<double(std::span<const double>)>;

// Randomized screen for the norm axioms (positivity, homogeneity, triangle
// inequality, strict monotonicity) on the weighted family under a pure
// minimization reading: 100 sampled pairs, tolerance 1e-9, fixed seed.
// Passing is evidence, failing is a counterexample.
bool is_norm_like(const ScalarizerSpec& spec, std::size_t p);
bool is_norm_like(const NormEvaluator& norm, std::size_t p);

// Closed-form approximation quality s(1/s(e^1),...,1/s(e^p)) of the weighted
// scalarization generated by a strictly monotone norm, for pure minimization.
// The value does not depend on the spec's base weights.
QualityCertificate theoretical_bound(const ScalarizerSpec& norm_family, std::size_t p);
QualityCertificate theoretical_bound(const NormEvaluator& norm, std::size_t p);

// Closed-form supremum of max_i y_i/ybar_i over the level set of ybar:
// s(ybar) * max_i 1/(s(e^i) * ybar_i). Witness is the arg-max coordinate.
QualityCertificate level_ratio_sup(const ScalarizerSpec& norm_family, const PointImage& ybar);
QualityCertificate level_ratio_sup(const NormEvaluator& norm, const PointImage& ybar);

// Sampled lower estimate of the level-set ratio supremum at yprime: shoots
// `budget` log-uniform rays through find_level_scaling onto the level set and
// maximizes the mixed covering ratio. Ray boxes escalate from [1e-3,1e3]
// outward so mass reaches the axes; a running maximum above `cap` returns the
// unbounded flag instead of a number.
QualityCertificate level_ratio_sup_sampled(const ScalarizerSpec& spec, const Decomposition& pi,
                                           const PointImage& yprime, std::size_t budget,
                                           double cap, std::uint64_t seed = 42);

// Estimate of the weighted-scalarization quality bound: the infimum over
// reference points ybar of the level-set ratio supremum at unit weights.
// For norm families under pure minimization the inner suprema use the closed
// form and the analytic minimizer is among the candidates, so the result is
// exact; otherwise inner suprema are sampled with ray_budget rays each.
QualityCertificate weighted_bound_estimate(const ScalarizerSpec& family_template,
                                           const Decomposition& pi, std::size_t ray_budget,
                                           std::size_t ybar_budget, double cap,
                                           std::uint64_t seed = 42);

}  // namespace moscal
