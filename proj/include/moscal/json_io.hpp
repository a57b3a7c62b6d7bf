#pragma once

#include <string>

#include <json.hpp>

#include "moscal/adversary.hpp"
#include "moscal/core.hpp"
#include "moscal/scalarize.hpp"

namespace moscal {

// Instance files: {"p": int, "min": [int...], "max": [int...],
//                  "points": [{"id": str, "y": [num...]}...]} with 1-based
// objective indices. Rejected on any invariant violation.
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

// Scalarizer specs: {"family": str, "params": {...}, "weights": [num...],
//                    "gamma": [int...], "post": "identity"|"neg_reciprocal"}.
nlohmann::json spec_to_json(const ScalarizerSpec& spec);
ScalarizerSpec spec_from_json(const nlohmann::json& j);

// Certificates: {"value": num|"inf", "method": str, "witness": {...},
//                "budget_used": int}.
nlohmann::json certificate_to_json(const QualityCertificate& cert);
QualityCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json adversarial_to_json(const AdversarialCertificate& cert);
AdversarialCertificate adversarial_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

}  // namespace moscal
