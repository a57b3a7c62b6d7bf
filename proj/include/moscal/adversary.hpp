#pragma once

#include <string>
#include <vector>

#include "moscal/core.hpp"
#include "moscal/scalarize.hpp"

namespace moscal {

enum class AdversaryKind { FiniteScalarization, NormMinTightness, MixedMaxImpossibility };

struct NamedCheck {
    std::string name;
    bool passed = false;
    std::string witness;
};

// A constructed instance together with re-verifiable postconditions. The
// embedded scalarizers, grid resolution and target let reverify() recompute
// every check from scratch.
struct AdversarialCertificate {
    AdversaryKind kind;
    Instance instance;
    double target_alpha = 1.0;
    std::string unserved_id;
    std::vector<ScalarizerSpec> scalarizers;
    std::size_t grid_m = 0;
    double supported_quality = 1.0;
    std::vector<NamedCheck> checks;
};

// Instance on |S|+1 solutions where one solution is optimal for no member of
// the finite scalarization S and is not alpha-approximated by any other.
AdversarialCertificate adversarial_finite(const std::vector<ScalarizerSpec>& scalarization,
                                          const Decomposition& pi, double alpha);

// Tightness instance for the norm bound under pure minimization: the center
// point is never optimal for any weighting of the (renormalized) norm yet is
// not alpha*(1-eps)-approximated by the supported solutions.
AdversarialCertificate adversarial_norm_min(const ScalarizerSpec& norm_family, std::size_t p,
                                            double eps);

// Inapproximability instance for norm-difference scalarizations when at least
// one objective is maximized: MIN = {1..k}, MAX = {k+1..p}, and the center
// point is unserved and not alpha-approximated.
AdversarialCertificate adversarial_mixed_max(const NormFamily& inner_min,
                                             const NormFamily& inner_max, std::size_t k,
                                             std::size_t p, double alpha);

// Recomputes the certificate's checks from its embedded instance and
// scalarizers.
std::vector<NamedCheck> reverify(const AdversarialCertificate& certificate);

}  // namespace moscal
