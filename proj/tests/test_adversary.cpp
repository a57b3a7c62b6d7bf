#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "moscal/adversary.hpp"
#include "moscal/quality.hpp"
#include "moscal/support.hpp"

using namespace moscal;

namespace {

bool all_passed(const AdversarialCertificate& cert) {
    for (const NamedCheck& c : cert.checks) {
        if (!c.passed) return false;
    }
    return true;
}

void check_reverifies(const AdversarialCertificate& cert) {
    std::vector<NamedCheck> again = reverify(cert);
    REQUIRE(again.size() == cert.checks.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].name == cert.checks[i].name);
        CHECK(again[i].passed == cert.checks[i].passed);
    }
}

}  // namespace

TEST_CASE("adversarial_finite: single weighted sum at alpha 2") {
    auto cert = adversarial_finite({ScalarizerSpec::weighted_sum({1, 1})},
                                   Decomposition::all_min(2), 2.0);
    REQUIRE(cert.instance.size() == 2);
    CHECK(cert.instance[0].image == PointImage({1, 1}));
    CHECK(cert.instance[1].image[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(cert.instance[1].image[1] == 4.0);  // (alpha+1)*1 + |S|^2
    CHECK(cert.unserved_id == "x1");
    CHECK(cert.supported_quality == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(cert.supported_quality > 2.0);
    CHECK(all_passed(cert));
    check_reverifies(cert);
}

TEST_CASE("adversarial_finite: several weighted sums") {
    std::vector<ScalarizerSpec> swarm = {ScalarizerSpec::weighted_sum({0.25, 0.75}),
                                         ScalarizerSpec::weighted_sum({0.5, 0.5}),
                                         ScalarizerSpec::weighted_sum({0.75, 0.25})};
    auto cert = adversarial_finite(swarm, Decomposition::all_min(2), 5.0);
    CHECK(cert.instance.size() == 4);  // |S| + 1 solutions
    CHECK(all_passed(cert));

    // at most |S| solutions can be supported
    std::size_t optima = 0;
    for (const auto& s : swarm) {
        optima += optimal_set(cert.instance, s).size();
    }
    CHECK(optima <= 3);
    check_reverifies(cert);
}

TEST_CASE("adversarial_finite pads extra objectives and handles flips") {
    // three objectives, mixed senses: the construction lives on two of them
    auto pi = Decomposition::from_index_sets(3, {1}, {0, 2});
    std::vector<ScalarizerSpec> swarm = {ScalarizerSpec::weighted_sum({1, 1, 1}),
                                         ScalarizerSpec::weighted_sum({2, 1, 1})};
    auto cert = adversarial_finite(swarm, pi, 3.0);
    CHECK(cert.instance.size() == 3);
    CHECK(cert.instance.decomposition() == pi);
    CHECK(all_passed(cert));
    check_reverifies(cert);

    // pure maximization goes through the flip reduction
    auto maxcert = adversarial_finite({ScalarizerSpec::weighted_sum({1, 1})},
                                      Decomposition::all_max(2), 2.0);
    CHECK(all_passed(maxcert));
    CHECK(maxcert.supported_quality > 2.0);
}

TEST_CASE("adversarial_finite validates input") {
    CHECK_THROWS_WITH_AS(adversarial_finite({}, Decomposition::all_min(2), 2.0),
                         doctest::Contains("EmptyScalarization"), DomainError);
    CHECK_THROWS_AS(adversarial_finite({ScalarizerSpec::weighted_sum({1, 1})},
                                       Decomposition::all_min(2), 0.5),
                    DomainError);
    CHECK_THROWS_AS(adversarial_finite({ScalarizerSpec::weighted_sum({1})},
                                       Decomposition::all_min(1), 2.0),
                    DomainError);
}

TEST_CASE("adversarial_norm_min: 1-norm, p=2, eps=0.5") {
    auto cert =
        adversarial_norm_min(ScalarizerSpec::weighted_q_norm(1.0, {1, 1}), 2, 0.5);
    REQUIRE(cert.instance.size() == 3);
    CHECK(cert.instance[0].id == "xbar");
    CHECK(cert.instance[0].image == PointImage({0.625, 0.625}));
    CHECK(cert.instance[1].image[0] == doctest::Approx(0.84375).epsilon(1e-15));
    CHECK(cert.instance[1].image[1] == doctest::Approx(0.09375).epsilon(1e-15));
    CHECK(cert.target_alpha == doctest::Approx(1.0));  // alpha (1 - eps) = 2 * 0.5
    CHECK(cert.supported_quality > cert.target_alpha);
    CHECK(all_passed(cert));
    check_reverifies(cert);
}

TEST_CASE("adversarial_norm_min: 2-norm tightness") {
    auto cert =
        adversarial_norm_min(ScalarizerSpec::weighted_q_norm(2.0, {1, 1}), 2, 0.1);
    CHECK(cert.supported_quality >= std::sqrt(2.0) * 0.9 - 1e-9);
    CHECK(all_passed(cert));
}

TEST_CASE("adversarial_norm_min tightness across norms and eps") {
    for (std::size_t p : {2u, 3u}) {
        for (double eps : {0.5, 0.1}) {
            for (double q : {1.0, 2.0}) {
                auto family = ScalarizerSpec::weighted_q_norm(q, std::vector<double>(p, 1.0));
                auto cert = adversarial_norm_min(family, p, eps);
                const double bound = theoretical_bound(family, p).value;
                CHECK(cert.supported_quality >= bound * (1.0 - eps) - 1e-9);
            }
        }
    }
}

TEST_CASE("adversarial_norm_min rejects bad eps") {
    auto family = ScalarizerSpec::weighted_q_norm(1.0, {1, 1});
    CHECK_THROWS_WITH_AS(adversarial_norm_min(family, 2, 1.0),
                         doctest::Contains("EpsOutOfRange"), DomainError);
    CHECK_THROWS_AS(adversarial_norm_min(family, 2, 0.0), DomainError);
    CHECK_THROWS_AS(adversarial_norm_min(ScalarizerSpec::custom_expression({1, 1}), 2, 0.5),
                    DomainError);
}

TEST_CASE("adversarial_mixed_max: one minimized, one maximized, alpha 2") {
    auto cert = adversarial_mixed_max(NormFamily::q_norm(1.0), NormFamily::q_norm(1.0), 1, 2,
                                      2.0);
    REQUIRE(cert.instance.size() == 3);
    CHECK(cert.instance[0].image == PointImage({1, 1}));
    CHECK(cert.instance[1].image[0] == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(cert.instance[1].image[1] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(cert.instance[2].image == PointImage({3, 4}));
    CHECK(all_passed(cert));
    CHECK(cert.supported_quality > 2.0);
    check_reverifies(cert);
}

TEST_CASE("adversarial_mixed_max: pure maximization case") {
    auto cert = adversarial_mixed_max(NormFamily::q_norm(1.0), NormFamily::q_norm(1.0), 0, 2,
                                      1.0);
    REQUIRE(cert.instance.size() == 3);
    CHECK(cert.instance[0].image == PointImage({1, 1}));
    CHECK(cert.instance[1].image == PointImage({2, 0.5}));
    CHECK(cert.instance[2].image == PointImage({0.5, 2}));
    CHECK(cert.instance.decomposition().pure_max());
    CHECK(all_passed(cert));
    CHECK(cert.supported_quality > 1.0);
    check_reverifies(cert);
}

TEST_CASE("adversarial_mixed_max scales with alpha") {
    for (double alpha : {2.0, 10.0, 100.0}) {
        for (auto [k, p] : std::vector<std::pair<std::size_t, std::size_t>>{
                 {1, 2}, {0, 2}, {1, 3}}) {
            auto cert = adversarial_mixed_max(NormFamily::q_norm(1.0), NormFamily::q_norm(1.0),
                                              k, p, alpha);
            CHECK(cert.supported_quality > alpha);
            CHECK(all_passed(cert));
        }
    }
}

TEST_CASE("adversarial_mixed_max validates the split") {
    CHECK_THROWS_WITH_AS(adversarial_mixed_max(NormFamily::q_norm(1.0),
                                               NormFamily::q_norm(1.0), 2, 2, 2.0),
                         doctest::Contains("KOutOfRange"), DomainError);
    CHECK_THROWS_AS(
        adversarial_mixed_max(NormFamily::q_norm(1.0), NormFamily::q_norm(1.0), 0, 1, 2.0),
        DomainError);
}

TEST_CASE("gamma transform rescues the pure maximization counterexample") {
    auto cert = adversarial_mixed_max(NormFamily::q_norm(1.0), NormFamily::q_norm(1.0), 0, 2,
                                      10.0);
    const std::size_t p = 2;

    // flipping the instance and sweeping the transformed weighted sum brings
    // the quality down to the minimization bound
    Instance flipped = transform_instance(cert.instance, GammaSet::all(p));
    auto plain = ScalarizerSpec::weighted_sum(std::vector<double>(p, 1.0));
    WeightGrid grid = weight_grid(p, 128);
    std::vector<std::string> cover = supported_set(flipped, plain, grid);
    CHECK(min_alpha(cover, flipped).value <= p + 0.05);
    CHECK(min_alpha(cover, cert.instance).value <= p + 0.05);

    // equivalently, sweep the transformed scalarization on the original
    auto transformed = gamma_transform(plain, GammaSet::all(p));
    std::vector<std::string> direct = supported_set(cert.instance, transformed, grid);
    CHECK(direct == cover);
}
