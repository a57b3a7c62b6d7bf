#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "moscal/error.hpp"

namespace moscal {

enum class Sense { Min, Max };

// Subset of objective indices (0-based internally; JSON and CLI use 1-based).
class GammaSet {
public:
    GammaSet() = default;
    explicit GammaSet(std::vector<std::size_t> zero_based_indices);

    static GammaSet all(std::size_t p);

    bool empty() const { return indices_.empty(); }
    bool contains(std::size_t i) const;
    const std::vector<std::size_t>& indices() const { return indices_; }
    std::size_t max_index() const;  // only valid when !empty()

    // Flips compose like xor: applying two gamma sets in sequence is the same
    // as applying their symmetric difference once.
    GammaSet symmetric_difference(const GammaSet& other) const;

    friend bool operator==(const GammaSet&, const GammaSet&) = default;

private:
    std::vector<std::size_t> indices_;  // sorted, unique
};

// Partition of the p objectives into minimized and maximized ones.
class Decomposition {
public:
    explicit Decomposition(std::vector<Sense> senses);

    static Decomposition all_min(std::size_t p);
    static Decomposition all_max(std::size_t p);
    // min_idx/max_idx are 0-based and must partition {0..p-1}.
    static Decomposition from_index_sets(std::size_t p,
                                         const std::vector<std::size_t>& min_idx,
                                         const std::vector<std::size_t>& max_idx);

    std::size_t p() const { return senses_.size(); }
    Sense sense(std::size_t i) const { return senses_[i]; }
    bool is_min(std::size_t i) const { return senses_[i] == Sense::Min; }
    std::vector<std::size_t> min_indices() const;
    std::vector<std::size_t> max_indices() const;
    bool pure_min() const;
    bool pure_max() const;
    // True when the minimized objectives are exactly {0..k-1} for some k.
    bool min_is_prefix() const;

    // Senses flipped on gamma: MIN' = (MIN \ gamma) u (gamma n MAX).
    Decomposition transformed(const GammaSet& gamma) const;

    friend bool operator==(const Decomposition&, const Decomposition&) = default;

private:
    std::vector<Sense> senses_;
};

// A feasible point in objective space. Components are strictly positive and
// finite; construction validates.
class PointImage {
public:
    explicit PointImage(std::vector<double> values);

    std::size_t dim() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    friend bool operator==(const PointImage&, const PointImage&) = default;

private:
    std::vector<double> values_;
};

struct LabeledPoint {
    std::string id;
    PointImage image;
};

// Finite labeled set of images together with the objective decomposition.
// Two ids may share an image (distinct solutions mapped to the same point).
class Instance {
public:
    Instance(Decomposition decomposition, std::vector<LabeledPoint> points);

    const Decomposition& decomposition() const { return decomposition_; }
    std::size_t p() const { return decomposition_.p(); }
    std::size_t size() const { return points_.size(); }
    const std::vector<LabeledPoint>& points() const { return points_; }
    const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }
    std::optional<std::size_t> index_of(std::string_view id) const;

private:
    Decomposition decomposition_;
    std::vector<LabeledPoint> points_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

// Directed relation of y against y2 under the component-wise orders.
// StrictlyDominates implies the weak order would also hold.
enum class DominanceRelation { StrictlyDominates, Dominates, Equal, Incomparable };

DominanceRelation compare(const PointImage& y, const PointImage& y2,
                          const Decomposition& pi);

// Ids whose image is not dominated by any other id's image. Pairwise brute
// force; this is the oracle the rest of the library is checked against.
std::vector<std::string> nondominated_set(const Instance& instance);

// y covers y2 within factor alpha: y_i <= alpha*y2_i on MIN, y_i >= y2_i/alpha
// on MAX.
bool approximates(const PointImage& y, const PointImage& y2, double alpha,
                  const Decomposition& pi);

// The smallest factor with which y covers yprime:
// max{ y_i/yprime_i on MIN, yprime_i/y_i on MAX }.
double approximation_ratio(const PointImage& y, const PointImage& yprime,
                           const Decomposition& pi);

enum class Method { ClosedForm, BruteForce, Sampled };

// Result record for an approximation-quality computation. `unbounded` and a
// finite value are mutually exclusive; value is always >= 1.
struct QualityCertificate {
    double value = 1.0;
    bool unbounded = false;
    Method method = Method::BruteForce;
    std::optional<std::pair<std::string, std::string>> witness_ids;
    std::optional<std::size_t> witness_index;
    std::optional<std::vector<double>> witness_point;
    std::size_t budget_used = 0;
};

// Minimal alpha such that `subset` is an alpha-approximation set for the
// instance, with the hardest-to-cover id and its best approximator as
// witness. Ties resolve to the earliest points in instance order.
QualityCertificate min_alpha(const std::vector<std::string>& subset,
                             const Instance& instance);

// Componentwise reciprocal on the indices in gamma. Self-inverse up to
// floating-point rounding (exact when components are powers of two).
PointImage gamma_flip(const PointImage& y, const GammaSet& gamma);

// Same ids, images flipped by gamma, decomposition transformed accordingly.
Instance transform_instance(const Instance& instance, const GammaSet& gamma);

}  // namespace moscal
