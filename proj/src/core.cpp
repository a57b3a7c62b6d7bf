#include "moscal/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace moscal {

GammaSet::GammaSet(std::vector<std::size_t> zero_based_indices)
    : indices_(std::move(zero_based_indices)) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

GammaSet GammaSet::all(std::size_t p) {
    std::vector<std::size_t> idx(p);
    for (std::size_t i = 0; i < p; ++i) idx[i] = i;
    return GammaSet(std::move(idx));
}

bool GammaSet::contains(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::size_t GammaSet::max_index() const { return indices_.back(); }

GammaSet GammaSet::symmetric_difference(const GammaSet& other) const {
    std::vector<std::size_t> out;
    std::set_symmetric_difference(indices_.begin(), indices_.end(),
                                  other.indices_.begin(), other.indices_.end(),
                                  std::back_inserter(out));
    return GammaSet(std::move(out));
}

Decomposition::Decomposition(std::vector<Sense> senses) : senses_(std::move(senses)) {
    if (senses_.empty()) {
        raise("InvalidDecomposition", "at least one objective is required");
    }
}

Decomposition Decomposition::all_min(std::size_t p) {
    return Decomposition(std::vector<Sense>(p, Sense::Min));
}

Decomposition Decomposition::all_max(std::size_t p) {
    return Decomposition(std::vector<Sense>(p, Sense::Max));
}

Decomposition Decomposition::from_index_sets(std::size_t p,
                                             const std::vector<std::size_t>& min_idx,
                                             const std::vector<std::size_t>& max_idx) {
    if (p < 1) raise("InvalidDecomposition", "p must be at least 1");
    if (min_idx.size() + max_idx.size() != p) {
        raise("InvalidDecomposition", "min and max index sets must partition the objectives");
    }
    std::vector<int> seen(p, 0);
    auto mark = [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i : idx) {
            if (i >= p) raise("InvalidDecomposition", "objective index out of range");
            if (seen[i]++) raise("InvalidDecomposition", "objective index listed twice");
        }
    };
    mark(min_idx);
    mark(max_idx);
    std::vector<Sense> senses(p, Sense::Min);
    for (std::size_t i : max_idx) senses[i] = Sense::Max;
    return Decomposition(std::move(senses));
}

std::vector<std::size_t> Decomposition::min_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < senses_.size(); ++i) {
        if (senses_[i] == Sense::Min) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> Decomposition::max_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < senses_.size(); ++i) {
        if (senses_[i] == Sense::Max) out.push_back(i);
    }
    return out;
}

bool Decomposition::pure_min() const {
    return std::all_of(senses_.begin(), senses_.end(),
                       [](Sense s) { return s == Sense::Min; });
}

bool Decomposition::pure_max() const {
    return std::all_of(senses_.begin(), senses_.end(),
                       [](Sense s) { return s == Sense::Max; });
}

bool Decomposition::min_is_prefix() const {
    bool in_max = false;
    for (Sense s : senses_) {
        if (s == Sense::Max) {
            in_max = true;
        } else if (in_max) {
            return false;
        }
    }
    return true;
}

Decomposition Decomposition::transformed(const GammaSet& gamma) const {
    if (!gamma.empty() && gamma.max_index() >= p()) {
        raise("IndexOutOfRange", "gamma index exceeds number of objectives");
    }
    std::vector<Sense> senses = senses_;
    for (std::size_t i : gamma.indices()) {
        senses[i] = senses[i] == Sense::Min ? Sense::Max : Sense::Min;
    }
    return Decomposition(std::move(senses));
}

PointImage::PointImage(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!(v > 0.0) || !std::isfinite(v)) {
            raise("NonPositiveComponent",
                  "component " + std::to_string(i + 1) +
                      " must be a finite positive number, got " + std::to_string(v));
        }
    }
}

Instance::Instance(Decomposition decomposition, std::vector<LabeledPoint> points)
    : decomposition_(std::move(decomposition)), points_(std::move(points)) {
    if (points_.empty()) raise("EmptyInstance", "an instance needs at least one point");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const LabeledPoint& pt = points_[i];
        if (pt.image.dim() != decomposition_.p()) {
            raise("DimensionMismatch",
                  "point '" + pt.id + "' has dimension " + std::to_string(pt.image.dim()) +
                      ", expected " + std::to_string(decomposition_.p()));
        }
        if (!by_id_.emplace(pt.id, i).second) {
            raise("DuplicateId", "id '" + pt.id + "' appears more than once");
        }
    }
}

std::optional<std::size_t> Instance::index_of(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

namespace {

void check_dims(const PointImage& y, const PointImage& y2, const Decomposition& pi) {
    if (y.dim() != pi.p() || y2.dim() != pi.p()) {
        raise("DimensionMismatch", "point dimension does not match the decomposition");
    }
}

}  // namespace

DominanceRelation compare(const PointImage& y, const PointImage& y2,
                          const Decomposition& pi) {
    check_dims(y, y2, pi);
    bool all_weak = true;
    bool all_strict = true;
    bool equal = true;
    for (std::size_t i = 0; i < pi.p(); ++i) {
        const double a = y[i];
        const double b = y2[i];
        if (a != b) equal = false;
        if (pi.is_min(i)) {
            if (!(a <= b)) all_weak = false;
            if (!(a < b)) all_strict = false;
        } else {
            if (!(a >= b)) all_weak = false;
            if (!(a > b)) all_strict = false;
        }
    }
    if (all_strict) return DominanceRelation::StrictlyDominates;
    if (equal) return DominanceRelation::Equal;
    if (all_weak) return DominanceRelation::Dominates;
    return DominanceRelation::Incomparable;
}

std::vector<std::string> nondominated_set(const Instance& instance) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < instance.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < instance.size() && !dominated; ++j) {
            if (j == i) continue;
            DominanceRelation rel =
                compare(instance[j].image, instance[i].image, instance.decomposition());
            dominated = rel == DominanceRelation::Dominates ||
                        rel == DominanceRelation::StrictlyDominates;
        }
        if (!dominated) out.push_back(instance[i].id);
    }
    return out;
}

bool approximates(const PointImage& y, const PointImage& y2, double alpha,
                  const Decomposition& pi) {
    if (!(alpha >= 1.0)) raise("AlphaBelowOne", "alpha must be at least 1");
    check_dims(y, y2, pi);
    for (std::size_t i = 0; i < pi.p(); ++i) {
        if (pi.is_min(i)) {
            if (!(y[i] <= alpha * y2[i])) return false;
        } else {
            if (!(y[i] >= y2[i] / alpha)) return false;
        }
    }
    return true;
}

double approximation_ratio(const PointImage& y, const PointImage& yprime,
                           const Decomposition& pi) {
    check_dims(y, yprime, pi);
    double worst = 0.0;
    for (std::size_t i = 0; i < pi.p(); ++i) {
        const double r = pi.is_min(i) ? y[i] / yprime[i] : yprime[i] / y[i];
        worst = std::max(worst, r);
    }
    return worst;
}

QualityCertificate min_alpha(const std::vector<std::string>& subset,
                             const Instance& instance) {
    if (subset.empty()) raise("EmptySubset", "the candidate set must not be empty");
    std::set<std::size_t> indices;
    for (const std::string& id : subset) {
        auto idx = instance.index_of(id);
        if (!idx) raise("UnknownId", "id '" + id + "' is not part of the instance");
        indices.insert(*idx);
    }

    QualityCertificate cert;
    cert.method = Method::BruteForce;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t target = 0; target < instance.size(); ++target) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_idx = *indices.begin();
        for (std::size_t cand : indices) {
            const double r = approximation_ratio(instance[cand].image,
                                                 instance[target].image,
                                                 instance.decomposition());
            if (r < best) {
                best = r;
                best_idx = cand;
            }
        }
        if (best > worst) {
            worst = best;
            cert.witness_ids = std::make_pair(instance[target].id, instance[best_idx].id);
        }
    }
    cert.value = worst;
    return cert;
}

PointImage gamma_flip(const PointImage& y, const GammaSet& gamma) {
    if (!gamma.empty() && gamma.max_index() >= y.dim()) {
        raise("IndexOutOfRange", "gamma index exceeds point dimension");
    }
    std::vector<double> v = y.values();
    for (std::size_t i : gamma.indices()) v[i] = 1.0 / v[i];
    return PointImage(std::move(v));
}

Instance transform_instance(const Instance& instance, const GammaSet& gamma) {
    std::vector<LabeledPoint> points;
    points.reserve(instance.size());
    for (const LabeledPoint& pt : instance.points()) {
        points.push_back({pt.id, gamma_flip(pt.image, gamma)});
    }
    return Instance(instance.decomposition().transformed(gamma), std::move(points));
}

}  // namespace moscal
