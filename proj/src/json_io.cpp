#include "moscal/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace moscal {

namespace {

using nlohmann::json;

const json& require_key(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        raise("SchemaViolation", std::string("missing key '") + key + "'");
    }
    return j.at(key);
}

std::size_t as_count(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        raise("SchemaViolation", std::string(what) + " must be a nonnegative integer");
    }
    return j.get<std::size_t>();
}

double as_number(const json& j, const char* what) {
    if (!j.is_number()) raise("SchemaViolation", std::string(what) + " must be a number");
    return j.get<double>();
}

// 1-based index arrays in files, 0-based in memory
std::vector<std::size_t> indices_from_json(const json& j, std::size_t p, const char* what) {
    if (!j.is_array()) raise("SchemaViolation", std::string(what) + " must be an array");
    std::vector<std::size_t> out;
    for (const json& e : j) {
        if (!e.is_number_integer()) {
            raise("SchemaViolation", std::string(what) + " entries must be integers");
        }
        const long long v = e.get<long long>();
        if (v < 1 || static_cast<std::size_t>(v) > p) {
            raise("SchemaViolation",
                  std::string(what) + " index " + std::to_string(v) + " is out of range 1.." +
                      std::to_string(p));
        }
        out.push_back(static_cast<std::size_t>(v) - 1);
    }
    return out;
}

json indices_to_json(const std::vector<std::size_t>& idx) {
    json arr = json::array();
    for (std::size_t i : idx) arr.push_back(i + 1);
    return arr;
}

}  // namespace

nlohmann::json instance_to_json(const Instance& instance) {
    json j;
    j["p"] = instance.p();
    j["min"] = indices_to_json(instance.decomposition().min_indices());
    j["max"] = indices_to_json(instance.decomposition().max_indices());
    json points = json::array();
    for (const LabeledPoint& pt : instance.points()) {
        points.push_back({{"id", pt.id}, {"y", pt.image.values()}});
    }
    j["points"] = points;
    return j;
}

Instance instance_from_json(const nlohmann::json& j) {
    const std::size_t p = as_count(require_key(j, "p"), "p");
    if (p < 1) raise("SchemaViolation", "p must be at least 1");
    Decomposition decomp = Decomposition::from_index_sets(
        p, indices_from_json(require_key(j, "min"), p, "min"),
        indices_from_json(require_key(j, "max"), p, "max"));
    const json& pts = require_key(j, "points");
    if (!pts.is_array()) raise("SchemaViolation", "points must be an array");
    std::vector<LabeledPoint> points;
    for (const json& e : pts) {
        const json& id = require_key(e, "id");
        if (!id.is_string()) raise("SchemaViolation", "point id must be a string");
        const json& y = require_key(e, "y");
        if (!y.is_array()) raise("SchemaViolation", "point y must be an array");
        std::vector<double> v;
        for (const json& c : y) v.push_back(as_number(c, "y component"));
        points.push_back({id.get<std::string>(), PointImage(std::move(v))});
    }
    return Instance(std::move(decomp), std::move(points));
}

namespace {

const char* family_name(Family f) {
    switch (f) {
        case Family::WeightedSum: return "wsum";
        case Family::WeightedMaxOrdering: return "maxorder";
        case Family::WeightedQNorm: return "qnorm";
        case Family::AugmentedTchebycheff: return "augtcheb";
        case Family::HarmonicMean: return "harmonic";
        case Family::NormDifference: return "normdiff";
        case Family::CompositeMinMax: return "composite";
        case Family::CustomExpression: return "custom";
    }
    return "unknown";
}

json q_to_json(double q) {
    if (std::isinf(q)) return json("inf");
    return json(q);
}

double q_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    return as_number(j, "q");
}

json norm_family_to_json(const NormFamily& n) {
    if (n.kind == NormFamily::Kind::QNorm) {
        return json{{"kind", "qnorm"}, {"q", q_to_json(n.q)}};
    }
    return json{{"kind", "augtcheb"}, {"rho", n.rho}};
}

NormFamily norm_family_from_json(const json& j) {
    const json& kind = require_key(j, "kind");
    if (kind == "qnorm") return NormFamily::q_norm(q_from_json(require_key(j, "q")));
    if (kind == "augtcheb") {
        return NormFamily::augmented_tchebycheff(as_number(require_key(j, "rho"), "rho"));
    }
    raise("SchemaViolation", "unknown norm kind");
}

}  // namespace

nlohmann::json spec_to_json(const ScalarizerSpec& spec) {
    json j;
    j["family"] = family_name(spec.family());
    json params = json::object();
    switch (spec.family()) {
        case Family::WeightedQNorm:
            params["q"] = q_to_json(spec.q());
            break;
        case Family::AugmentedTchebycheff:
            params["rho"] = spec.rho();
            break;
        case Family::CompositeMinMax:
            params["eps"] = spec.epsilon();
            break;
        case Family::NormDifference:
            params["inner_min"] = norm_family_to_json(spec.inner_min());
            params["inner_max"] = norm_family_to_json(spec.inner_max());
            break;
        default:
            break;
    }
    j["params"] = params;
    j["weights"] = spec.weights();
    j["gamma"] = indices_to_json(spec.gamma().indices());
    j["post"] = spec.post() == PostCompose::NegReciprocal ? "neg_reciprocal" : "identity";
    return j;
}

ScalarizerSpec spec_from_json(const nlohmann::json& j) {
    const json& family = require_key(j, "family");
    if (!family.is_string()) raise("SchemaViolation", "family must be a string");
    const json& wj = require_key(j, "weights");
    if (!wj.is_array() || wj.empty()) {
        raise("SchemaViolation", "weights must be a nonempty array");
    }
    std::vector<double> weights;
    for (const json& e : wj) weights.push_back(as_number(e, "weight"));
    const json params = j.contains("params") ? j.at("params") : json::object();

    const std::string name = family.get<std::string>();
    ScalarizerSpec spec = [&]() {
        if (name == "wsum") return ScalarizerSpec::weighted_sum(weights);
        if (name == "maxorder") return ScalarizerSpec::weighted_max_ordering(weights);
        if (name == "qnorm") {
            return ScalarizerSpec::weighted_q_norm(q_from_json(require_key(params, "q")),
                                                   weights);
        }
        if (name == "augtcheb") {
            return ScalarizerSpec::augmented_tchebycheff(
                as_number(require_key(params, "rho"), "rho"), weights);
        }
        if (name == "harmonic") return ScalarizerSpec::harmonic_mean(weights);
        if (name == "normdiff") {
            return ScalarizerSpec::norm_difference(
                norm_family_from_json(require_key(params, "inner_min")),
                norm_family_from_json(require_key(params, "inner_max")), weights);
        }
        if (name == "composite") {
            return ScalarizerSpec::composite_min_max(
                as_number(require_key(params, "eps"), "eps"), weights);
        }
        if (name == "custom") return ScalarizerSpec::custom_expression(weights);
        raise("SchemaViolation", "unknown family '" + name + "'");
    }();

    if (j.contains("gamma")) {
        spec = spec.with_gamma(GammaSet(indices_from_json(j.at("gamma"), weights.size(), "gamma")));
    }
    if (j.contains("post")) {
        const json& post = j.at("post");
        if (post == "neg_reciprocal") {
            spec = spec.with_post(PostCompose::NegReciprocal);
        } else if (post != "identity") {
            raise("SchemaViolation", "post must be identity or neg_reciprocal");
        }
    }
    return spec;
}

namespace {

const char* method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed_form";
        case Method::BruteForce: return "brute_force";
        case Method::Sampled: return "sampled";
    }
    return "unknown";
}

Method method_from_name(const std::string& s) {
    if (s == "closed_form") return Method::ClosedForm;
    if (s == "brute_force") return Method::BruteForce;
    if (s == "sampled") return Method::Sampled;
    raise("SchemaViolation", "unknown method '" + s + "'");
}

}  // namespace

nlohmann::json certificate_to_json(const QualityCertificate& cert) {
    json j;
    j["value"] = cert.unbounded ? json("inf") : json(cert.value);
    j["method"] = method_name(cert.method);
    json witness = json::object();
    if (cert.witness_ids) {
        witness["pair"] = {cert.witness_ids->first, cert.witness_ids->second};
    }
    if (cert.witness_index) witness["index"] = *cert.witness_index + 1;
    if (cert.witness_point) witness["point"] = *cert.witness_point;
    if (!witness.empty()) j["witness"] = witness;
    j["budget_used"] = cert.budget_used;
    return j;
}

QualityCertificate certificate_from_json(const nlohmann::json& j) {
    QualityCertificate cert;
    const json& value = require_key(j, "value");
    if (value.is_string() && value.get<std::string>() == "inf") {
        cert.unbounded = true;
        cert.value = std::numeric_limits<double>::infinity();
    } else {
        cert.value = as_number(value, "value");
    }
    cert.method = method_from_name(require_key(j, "method").get<std::string>());
    if (j.contains("witness")) {
        const json& w = j.at("witness");
        if (w.contains("pair")) {
            cert.witness_ids = std::make_pair(w.at("pair").at(0).get<std::string>(),
                                              w.at("pair").at(1).get<std::string>());
        }
        if (w.contains("index")) cert.witness_index = as_count(w.at("index"), "index") - 1;
        if (w.contains("point")) {
            std::vector<double> pt;
            for (const json& c : w.at("point")) pt.push_back(as_number(c, "point component"));
            cert.witness_point = pt;
        }
    }
    if (j.contains("budget_used")) cert.budget_used = as_count(j.at("budget_used"), "budget_used");
    return cert;
}

namespace {

const char* kind_name(AdversaryKind k) {
    switch (k) {
        case AdversaryKind::FiniteScalarization: return "finite";
        case AdversaryKind::NormMinTightness: return "norm_min";
        case AdversaryKind::MixedMaxImpossibility: return "mixed_max";
    }
    return "unknown";
}

AdversaryKind kind_from_name(const std::string& s) {
    if (s == "finite") return AdversaryKind::FiniteScalarization;
    if (s == "norm_min") return AdversaryKind::NormMinTightness;
    if (s == "mixed_max") return AdversaryKind::MixedMaxImpossibility;
    raise("SchemaViolation", "unknown certificate kind '" + s + "'");
}

}  // namespace

nlohmann::json adversarial_to_json(const AdversarialCertificate& cert) {
    json j;
    j["kind"] = kind_name(cert.kind);
    j["target_alpha"] = cert.target_alpha;
    j["unserved_id"] = cert.unserved_id;
    j["grid_m"] = cert.grid_m;
    j["supported_quality"] = cert.supported_quality;
    json specs = json::array();
    for (const ScalarizerSpec& s : cert.scalarizers) specs.push_back(spec_to_json(s));
    j["scalarizers"] = specs;
    j["instance"] = instance_to_json(cert.instance);
    json checks = json::array();
    for (const NamedCheck& c : cert.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    }
    j["checks"] = checks;
    return j;
}

AdversarialCertificate adversarial_from_json(const nlohmann::json& j) {
    std::vector<ScalarizerSpec> specs;
    for (const json& s : require_key(j, "scalarizers")) specs.push_back(spec_from_json(s));
    AdversarialCertificate cert{
        kind_from_name(require_key(j, "kind").get<std::string>()),
        instance_from_json(require_key(j, "instance")),
        as_number(require_key(j, "target_alpha"), "target_alpha"),
        require_key(j, "unserved_id").get<std::string>(),
        std::move(specs),
        as_count(require_key(j, "grid_m"), "grid_m"),
        as_number(require_key(j, "supported_quality"), "supported_quality"),
        {}};
    for (const json& c : require_key(j, "checks")) {
        cert.checks.push_back({require_key(c, "name").get<std::string>(),
                               require_key(c, "passed").get<bool>(),
                               c.contains("witness") ? c.at("witness").get<std::string>() : ""});
    }
    return cert;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise("FileError", "could not open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        raise("InvalidJson", e.what());
    }
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) raise("FileError", "could not open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return std::to_string(v);
    return std::string(buf, ptr);
}

}  // namespace moscal
