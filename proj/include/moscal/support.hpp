#pragma once

#include <cstdint>
#include <vector>

#include "moscal/core.hpp"
#include "moscal/rng.hpp"
#include "moscal/scalarize.hpp"

namespace moscal {

// Finite surrogate for the set of all positive weight vectors: all integer
// compositions of m into p positive parts, scaled by 1/m, in lexicographic
// order. Count is C(m-1, p-1).
struct WeightGrid {
    std::size_t p = 0;
    std::size_t m = 0;
    std::vector<std::vector<double>> vectors;
};

WeightGrid weight_grid(std::size_t p, std::size_t m);

inline constexpr double kDefaultTieTol = 1e-9;

// Ids whose scalarizer value lies within tie_tol*(1+|v*|) of the minimum v*.
std::vector<std::string> optimal_set(const Instance& instance, const ScalarizerSpec& spec,
                                     double tie_tol = kDefaultTieTol);

// Same, as indices into the instance.
std::vector<std::size_t> optimal_indices(const Instance& instance, const ScalarizerSpec& spec,
                                         double tie_tol = kDefaultTieTol);

// Union of optimal_set over the grid, where each grid vector multiplies the
// template's weights componentwise. With one_per_function, only the first
// optimal id (in instance order) per grid vector is kept.
std::vector<std::string> supported_set(const Instance& instance,
                                       const ScalarizerSpec& family_template,
                                       const WeightGrid& grid,
                                       double tie_tol = kDefaultTieTol,
                                       bool one_per_function = false);

// Instance with ids x1..xn and images drawn log-uniformly from [lo, hi]^p.
Instance random_instance(const Decomposition& pi, std::size_t n_points, double lo, double hi,
                         Rng& rng);

}  // namespace moscal
