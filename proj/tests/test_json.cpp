#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "moscal/adversary.hpp"
#include "moscal/json_io.hpp"
#include "moscal/rng.hpp"

using namespace moscal;
using nlohmann::json;

TEST_CASE("instance json round-trips value-exactly") {
    Rng rng(97);
    for (int t = 0; t < 100; ++t) {
        const std::size_t p = 1 + rng.index(4);
        std::vector<Sense> senses(p, Sense::Min);
        for (auto& s : senses) {
            if (rng.next_unit() < 0.5) s = Sense::Max;
        }
        std::vector<LabeledPoint> pts;
        const std::size_t n = 1 + rng.index(8);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> y(p);
            for (double& v : y) v = rng.log_uniform(1e-6, 1e6);
            pts.push_back({"p" + std::to_string(j), PointImage(std::move(y))});
        }
        Instance inst(Decomposition(std::move(senses)), std::move(pts));

        const std::string text = instance_to_json(inst).dump();
        Instance back = instance_from_json(json::parse(text));
        CHECK(back.decomposition() == inst.decomposition());
        REQUIRE(back.size() == inst.size());
        for (std::size_t j = 0; j < inst.size(); ++j) {
            CHECK(back[j].id == inst[j].id);
            CHECK(back[j].image == inst[j].image);  // bit-exact
        }
    }
}

TEST_CASE("instance json round-trips awkward decimals exactly") {
    Instance inst(Decomposition::all_min(2),
                  {{"a", PointImage({0.1, 1.0 / 3.0})},
                   {"b", PointImage({1e-300, 2.2250738585072014e-308})}});
    Instance back = instance_from_json(json::parse(instance_to_json(inst).dump()));
    CHECK(back[0].image == inst[0].image);
    CHECK(back[1].image == inst[1].image);
}

TEST_CASE("instance json rejects invariant violations") {
    auto parse = [](const char* text) { return instance_from_json(json::parse(text)); };
    CHECK_THROWS_WITH_AS(parse(R"({"min":[1,2],"max":[],"points":[]})"),
                         doctest::Contains("SchemaViolation"), DomainError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"p":2,"min":[1,2],"max":[],"points":[{"id":"a","y":[1,0]}]})"),
        doctest::Contains("NonPositiveComponent"), DomainError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"p":2,"min":[1],"max":[2],"points":[{"id":"a","y":[1,1]},{"id":"a","y":[2,2]}]})"),
        doctest::Contains("DuplicateId"), DomainError);
    CHECK_THROWS_WITH_AS(
        parse(R"({"p":2,"min":[1,2],"max":[],"points":[{"id":"a","y":[1]}]})"),
        doctest::Contains("DimensionMismatch"), DomainError);
    CHECK_THROWS_WITH_AS(parse(R"({"p":2,"min":[1,2],"max":[],"points":[]})"),
                         doctest::Contains("EmptyInstance"), DomainError);
    // 0-based or out-of-range indices
    CHECK_THROWS_AS(parse(R"({"p":2,"min":[0,1],"max":[],"points":[{"id":"a","y":[1,1]}]})"),
                    DomainError);
    CHECK_THROWS_AS(parse(R"({"p":2,"min":[1,3],"max":[],"points":[{"id":"a","y":[1,1]}]})"),
                    DomainError);
    // indices must partition
    CHECK_THROWS_AS(parse(R"({"p":2,"min":[1],"max":[1],"points":[{"id":"a","y":[1,1]}]})"),
                    DomainError);
    CHECK_THROWS_AS(parse(R"({"p":2,"min":[1],"max":[],"points":[{"id":"a","y":[1,1]}]})"),
                    DomainError);
}

TEST_CASE("spec json round-trips every family") {
    std::vector<ScalarizerSpec> specs = {
        ScalarizerSpec::weighted_sum({1, 2}),
        ScalarizerSpec::weighted_max_ordering({0.5, 0.5}),
        ScalarizerSpec::weighted_q_norm(2.5, {1, 1, 1}),
        ScalarizerSpec::weighted_q_norm(std::numeric_limits<double>::infinity(), {1, 1}),
        ScalarizerSpec::augmented_tchebycheff(0.25, {2, 3}),
        ScalarizerSpec::harmonic_mean({1, 1}),
        ScalarizerSpec::norm_difference(NormFamily::q_norm(1.0),
                                        NormFamily::augmented_tchebycheff(0.5), {1, 1, 1}),
        ScalarizerSpec::composite_min_max(0.125, {1, 4}),
        ScalarizerSpec::custom_expression({1, 1}),
        ScalarizerSpec::weighted_sum({1, 2}).with_gamma(GammaSet({0})),
        ScalarizerSpec::weighted_q_norm(1.0, {1, 2})
            .with_gamma(GammaSet::all(2))
            .with_post(PostCompose::NegReciprocal),
    };
    for (const ScalarizerSpec& spec : specs) {
        ScalarizerSpec back = spec_from_json(json::parse(spec_to_json(spec).dump()));
        CHECK(back == spec);
    }
}

TEST_CASE("spec json rejects unknown families and bad posts") {
    CHECK_THROWS_AS(spec_from_json(json::parse(R"({"family":"nope","weights":[1]})")),
                    DomainError);
    CHECK_THROWS_AS(
        spec_from_json(json::parse(R"({"family":"wsum","weights":[1],"post":"square"})")),
        DomainError);
    CHECK_THROWS_AS(spec_from_json(json::parse(R"({"family":"wsum","weights":[]})")),
                    DomainError);
}

TEST_CASE("certificate json carries the unbounded flag") {
    QualityCertificate cert;
    cert.value = std::numeric_limits<double>::infinity();
    cert.unbounded = true;
    cert.method = Method::Sampled;
    cert.budget_used = 123;
    json j = certificate_to_json(cert);
    CHECK(j["value"] == "inf");
    QualityCertificate back = certificate_from_json(j);
    CHECK(back.unbounded);
    CHECK(back.budget_used == 123);

    QualityCertificate finite;
    finite.value = 2.5;
    finite.method = Method::ClosedForm;
    finite.witness_ids = std::make_pair(std::string("a"), std::string("b"));
    finite.witness_index = 1;
    QualityCertificate finite_back = certificate_from_json(certificate_to_json(finite));
    CHECK(finite_back.value == 2.5);
    CHECK(finite_back.method == Method::ClosedForm);
    REQUIRE(finite_back.witness_ids.has_value());
    CHECK(finite_back.witness_ids->first == "a");
    CHECK(finite_back.witness_index == 1);
}

TEST_CASE("adversarial certificate json round-trips and reverifies") {
    auto cert = adversarial_norm_min(ScalarizerSpec::weighted_q_norm(1.0, {1, 1}), 2, 0.5);
    json j = adversarial_to_json(cert);
    AdversarialCertificate back = adversarial_from_json(j);
    CHECK(back.kind == cert.kind);
    CHECK(back.target_alpha == cert.target_alpha);
    CHECK(back.unserved_id == cert.unserved_id);
    CHECK(back.grid_m == cert.grid_m);
    REQUIRE(back.checks.size() == cert.checks.size());

    std::vector<NamedCheck> again = reverify(back);
    REQUIRE(again.size() == cert.checks.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].passed == cert.checks[i].passed);
    }
}

TEST_CASE("format_double prints shortest round-trip forms") {
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(0.75) == "0.75");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}
