#include "moscal/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "moscal/quality.hpp"
#include "moscal/rng.hpp"
#include "moscal/support.hpp"

namespace moscal {

namespace {

constexpr double kEqualityTol = 1e-9;          // relative, decreasing-step test
constexpr double kUniqueTieTol = 1e-12;        // stricter than kEqualityTol
constexpr std::size_t kGridResolution = 256;
constexpr std::size_t kRandomWeightTrials = 10000;
constexpr std::uint64_t kRandomWeightSeed = 0x0ddba11;

std::string format_weights(const std::vector<double>& w) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ")";
    return os.str();
}

// True when some other point has a strictly smaller value than `idx` under
// the template reweighted by w.
bool strictly_beaten(const Instance& inst, const ScalarizerSpec& templ,
                     const std::vector<double>& w, std::size_t idx) {
    std::vector<double> combined(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) combined[i] = templ.weights()[i] * w[i];
    ScalarizerSpec spec = templ.with_weights(std::move(combined));
    const double own = evaluate(spec, inst.decomposition(), inst[idx].image);
    for (std::size_t j = 0; j < inst.size(); ++j) {
        if (j == idx) continue;
        if (evaluate(spec, inst.decomposition(), inst[j].image) < own) return true;
    }
    return false;
}

NamedCheck check_never_grid_optimal(const Instance& inst, const ScalarizerSpec& templ,
                                    std::size_t idx, std::size_t m) {
    NamedCheck check{"unserved_never_grid_optimal", true,
                     "grid m=" + std::to_string(m)};
    for (const std::vector<double>& w : weight_grid(inst.p(), m).vectors) {
        if (!strictly_beaten(inst, templ, w, idx)) {
            check.passed = false;
            check.witness = "optimal at grid weight " + format_weights(w);
            break;
        }
    }
    return check;
}

NamedCheck check_never_random_optimal(const Instance& inst, const ScalarizerSpec& templ,
                                      std::size_t idx) {
    NamedCheck check{"unserved_never_random_optimal", true,
                     std::to_string(kRandomWeightTrials) + " random weights"};
    Rng rng(kRandomWeightSeed);
    std::vector<double> w(inst.p());
    for (std::size_t t = 0; t < kRandomWeightTrials; ++t) {
        for (double& x : w) x = rng.log_uniform(1e-3, 1e3);
        if (!strictly_beaten(inst, templ, w, idx)) {
            check.passed = false;
            check.witness = "optimal at random weight " + format_weights(w);
            break;
        }
    }
    return check;
}

NamedCheck check_not_approximated(const Instance& inst, std::size_t idx, double target) {
    NamedCheck check{"unserved_not_alpha_approximated", true,
                     "target " + std::to_string(target)};
    for (std::size_t j = 0; j < inst.size(); ++j) {
        if (j == idx) continue;
        const double r =
            approximation_ratio(inst[j].image, inst[idx].image, inst.decomposition());
        if (!(r > target)) {
            check.passed = false;
            check.witness = "covered by '" + inst[j].id + "' at ratio " + std::to_string(r);
            break;
        }
    }
    return check;
}

void require_all(const std::vector<NamedCheck>& checks) {
    for (const NamedCheck& c : checks) {
        if (!c.passed) {
            raise("ConstructionFailure", "postcondition '" + c.name + "' failed: " + c.witness);
        }
    }
}

// Checks shared by the two grid-certified constructions.
std::vector<NamedCheck> grid_certificate_checks(const Instance& inst,
                                                const ScalarizerSpec& templ, std::size_t idx,
                                                double target, std::size_t grid_m,
                                                double supported_quality) {
    std::vector<NamedCheck> checks;
    checks.push_back(check_not_approximated(inst, idx, target));
    checks.push_back(check_never_grid_optimal(inst, templ, idx, grid_m));
    checks.push_back(check_never_random_optimal(inst, templ, idx));
    NamedCheck quality{"supported_quality_exceeds_target", supported_quality > target,
                       "quality " + std::to_string(supported_quality) + " vs target " +
                           std::to_string(target)};
    checks.push_back(quality);
    return checks;
}

std::vector<NamedCheck> finite_checks(const Instance& inst,
                                      const std::vector<ScalarizerSpec>& scalarization,
                                      double alpha, std::string* unserved_out,
                                      double* quality_out) {
    std::vector<NamedCheck> checks;
    std::vector<char> covered(inst.size(), 0);
    NamedCheck unique{"unique_optimum_per_scalarizer", true, ""};
    for (std::size_t j = 0; j < scalarization.size(); ++j) {
        std::vector<std::size_t> opt = optimal_indices(inst, scalarization[j], kUniqueTieTol);
        if (opt.size() != 1) {
            unique.passed = false;
            unique.witness = "scalarizer " + std::to_string(j + 1) + " has " +
                             std::to_string(opt.size()) + " optima";
        }
        for (std::size_t o : opt) covered[o] = 1;
    }
    checks.push_back(unique);

    std::size_t unserved = inst.size();
    std::vector<std::string> covered_ids;
    for (std::size_t j = 0; j < inst.size(); ++j) {
        if (covered[j]) {
            covered_ids.push_back(inst[j].id);
        } else if (unserved == inst.size()) {
            unserved = j;
        }
    }
    NamedCheck exists{"exists_unserved", unserved != inst.size(), ""};
    if (exists.passed) exists.witness = "id '" + inst[unserved].id + "'";
    checks.push_back(exists);

    if (exists.passed) {
        checks.push_back(check_not_approximated(inst, unserved, alpha));
        if (unserved_out) *unserved_out = inst[unserved].id;
    }
    if (quality_out && !covered_ids.empty()) {
        *quality_out = min_alpha(covered_ids, inst).value;
    }
    return checks;
}

}  // namespace

AdversarialCertificate adversarial_finite(const std::vector<ScalarizerSpec>& scalarization,
                                          const Decomposition& pi, double alpha) {
    if (scalarization.empty()) {
        raise("EmptyScalarization", "the scalarization must contain at least one function");
    }
    if (!(alpha >= 1.0)) raise("AlphaBelowOne", "alpha must be at least 1");
    if (pi.p() < 2) {
        raise("InvalidDecomposition",
              "the finite-scalarization construction needs at least two objectives");
    }
    for (const ScalarizerSpec& s : scalarization) {
        if (!compatible(s, pi)) {
            raise("SpecIncompatibleWithDecomposition",
                  "every scalarizer must be monotone for the given decomposition");
        }
    }

    // Two active objectives carry the biobjective construction; the rest are
    // padded with the constant 1. Maximization objectives among the active
    // pair are handled by building in flipped (minimization) space.
    const std::vector<std::size_t> mins = pi.min_indices();
    const std::vector<std::size_t> maxs = pi.max_indices();
    std::size_t i0, i1;
    if (mins.size() >= 2) {
        i0 = mins[0];
        i1 = mins[1];
    } else if (mins.size() == 1) {
        i0 = mins[0];
        i1 = maxs[0];
    } else {
        i0 = maxs[0];
        i1 = maxs[1];
    }
    const bool flip0 = !pi.is_min(i0);
    const bool flip1 = !pi.is_min(i1);
    auto embed = [&](double v0, double v1) {
        std::vector<double> y(pi.p(), 1.0);
        y[i0] = flip0 ? 1.0 / v0 : v0;
        y[i1] = flip1 ? 1.0 / v1 : v1;
        return PointImage(std::move(y));
    };

    const std::size_t count = scalarization.size();
    auto values_of = [&](double v0, double v1) {
        std::vector<double> vals(count);
        PointImage y = embed(v0, v1);
        for (std::size_t j = 0; j < count; ++j) vals[j] = evaluate(scalarization[j], pi, y);
        return vals;
    };
    auto collides = [&](const std::vector<double>& a,
                        const std::vector<std::vector<double>>& prev) {
        for (const std::vector<double>& b : prev) {
            for (std::size_t j = 0; j < count; ++j) {
                if (std::abs(a[j] - b[j]) <=
                    kEqualityTol * (1.0 + std::max(std::abs(a[j]), std::abs(b[j])))) {
                    return true;
                }
            }
        }
        return false;
    };

    std::vector<double> f1{1.0};
    std::vector<double> f2{1.0};
    std::vector<std::vector<double>> values{values_of(1.0, 1.0)};
    const double bump = static_cast<double>(count) * static_cast<double>(count);
    for (std::size_t ell = 1; ell <= count; ++ell) {
        double a = *std::min_element(f1.begin(), f1.end()) / (alpha + 1.0);
        double b = (alpha + 1.0) * *std::max_element(f2.begin(), f2.end()) + bump;
        std::vector<double> vals = values_of(a, b);
        std::size_t steps = 0;
        const std::size_t cap = ell * count;
        while (collides(vals, values)) {
            if (steps++ >= cap) {
                raise("ConstructionFailure",
                      "decreasing steps exceeded the proof bound at solution " +
                          std::to_string(ell));
            }
            a *= 0.5;
            b -= 1.0;
            if (!(b > 0.0)) {
                raise("ConstructionFailure", "second objective left the positive orthant");
            }
            vals = values_of(a, b);
        }
        f1.push_back(a);
        f2.push_back(b);
        values.push_back(std::move(vals));
    }

    std::vector<LabeledPoint> points;
    for (std::size_t ell = 0; ell <= count; ++ell) {
        points.push_back({"x" + std::to_string(ell), embed(f1[ell], f2[ell])});
    }
    Instance inst(pi, std::move(points));

    AdversarialCertificate cert{AdversaryKind::FiniteScalarization, inst, alpha,
                                "",   scalarization,                 0,    1.0,
                                {}};
    cert.checks = finite_checks(inst, scalarization, alpha, &cert.unserved_id,
                                &cert.supported_quality);
    require_all(cert.checks);
    return cert;
}

AdversarialCertificate adversarial_norm_min(const ScalarizerSpec& norm_family, std::size_t p,
                                            double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) {
        raise("EpsOutOfRange", "eps must lie strictly between 0 and 1");
    }
    if (norm_family.p() != p) {
        raise("DimensionMismatch", "norm family dimension does not match p");
    }
    if (!is_norm_like(norm_family, p)) {
        raise("NotANorm", "the family failed the norm screen");
    }

    // renormalize so the weighted norm is 1 at every unit vector
    std::vector<double> w = norm_family.weights();
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<double> e(p, 0.0);
        e[i] = 1.0;
        w[i] /= evaluate_min_closure(norm_family, e);
    }
    ScalarizerSpec normalized = norm_family.with_weights(std::move(w));
    const double alpha = evaluate_min_closure(normalized, std::vector<double>(p, 1.0));
    const double delta = eps / (2.0 * alpha);
    const double target = alpha * (1.0 - eps);

    std::vector<LabeledPoint> points;
    points.push_back({"xbar", PointImage(std::vector<double>(p, 1.0 / alpha + delta))});
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<double> y(p);
        for (std::size_t j = 0; j < p; ++j) {
            y[j] = (1.0 - eps / 2.0) * ((i == j ? 1.0 : 0.0) + delta);
        }
        points.push_back({"x" + std::to_string(i + 1), PointImage(std::move(y))});
    }
    Instance inst(Decomposition::all_min(p), std::move(points));

    std::vector<std::string> supported =
        supported_set(inst, normalized, weight_grid(p, kGridResolution));
    const double quality = min_alpha(supported, inst).value;

    AdversarialCertificate cert{AdversaryKind::NormMinTightness,
                                inst,
                                target,
                                "xbar",
                                {normalized},
                                kGridResolution,
                                quality,
                                {}};
    cert.checks = grid_certificate_checks(inst, normalized, 0, target, kGridResolution, quality);
    require_all(cert.checks);
    return cert;
}

AdversarialCertificate adversarial_mixed_max(const NormFamily& inner_min,
                                             const NormFamily& inner_max, std::size_t k,
                                             std::size_t p, double alpha) {
    if (p < 2) {
        raise("InvalidDecomposition", "the mixed construction needs at least two objectives");
    }
    if (k >= p) raise("KOutOfRange", "at least one objective must be maximized (k < p)");
    if (!(alpha >= 1.0)) raise("AlphaBelowOne", "alpha must be at least 1");

    std::vector<std::size_t> min_idx, max_idx;
    for (std::size_t i = 0; i < p; ++i) (i < k ? min_idx : max_idx).push_back(i);
    Decomposition pi = Decomposition::from_index_sets(p, min_idx, max_idx);

    // weights fold in the unit normalization s1(e^i) = s2(e^i) = 1
    std::vector<double> w(p);
    for (std::size_t i = 0; i < p; ++i) {
        w[i] = 1.0 / (i < k ? inner_min.unit_value() : inner_max.unit_value());
    }
    ScalarizerSpec base = ScalarizerSpec::norm_difference(inner_min, inner_max, std::move(w));

    std::vector<LabeledPoint> points;
    points.push_back({"xbar", PointImage(std::vector<double>(p, 1.0))});
    if (k == p - 1) {
        const double m = (1.0 - alpha / (alpha + 1.0)) / 2.0;
        const double big = alpha + 2.0;
        std::vector<double> y1(p, m);
        y1[p - 1] = 1.0 / (alpha + 1.0);
        std::vector<double> y2(p, alpha + 1.0);
        y2[p - 1] = big;
        points.push_back({"x1", PointImage(std::move(y1))});
        points.push_back({"x2", PointImage(std::move(y2))});
    } else {
        // normalized s2 at the all-ones vector of the MAX block
        const double s2_ones =
            inner_max(std::vector<double>(p - k, 1.0)) / inner_max.unit_value();
        for (std::size_t j = k; j < p; ++j) {
            std::vector<double> y(p);
            for (std::size_t i = 0; i < p; ++i) {
                if (i < k) {
                    y[i] = 0.5;
                } else if (i == j) {
                    y[i] = s2_ones;
                } else {
                    y[i] = 1.0 / (alpha + 1.0);
                }
            }
            points.push_back({"x" + std::to_string(j + 1), PointImage(std::move(y))});
        }
    }
    Instance inst(pi, std::move(points));

    std::vector<std::string> supported = supported_set(inst, base, weight_grid(p, kGridResolution));
    const double quality = min_alpha(supported, inst).value;

    AdversarialCertificate cert{AdversaryKind::MixedMaxImpossibility,
                                inst,
                                alpha,
                                "xbar",
                                {base},
                                kGridResolution,
                                quality,
                                {}};
    cert.checks = grid_certificate_checks(inst, base, 0, alpha, kGridResolution, quality);
    require_all(cert.checks);
    return cert;
}

std::vector<NamedCheck> reverify(const AdversarialCertificate& certificate) {
    if (certificate.kind == AdversaryKind::FiniteScalarization) {
        return finite_checks(certificate.instance, certificate.scalarizers,
                             certificate.target_alpha, nullptr, nullptr);
    }
    const Instance& inst = certificate.instance;
    const ScalarizerSpec& templ = certificate.scalarizers.front();
    auto idx = inst.index_of(certificate.unserved_id);
    if (!idx) raise("UnknownId", "unserved id missing from the certificate instance");
    std::vector<std::string> supported =
        supported_set(inst, templ, weight_grid(inst.p(), certificate.grid_m));
    const double quality = min_alpha(supported, inst).value;
    return grid_certificate_checks(inst, templ, *idx, certificate.target_alpha,
                                   certificate.grid_m, quality);
}

}  // namespace moscal
