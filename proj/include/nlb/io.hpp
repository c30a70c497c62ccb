#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlb/bell.hpp"
#include "nlb/lqhv.hpp"
#include "nlb/quantum.hpp"
#include "nlb/scenario.hpp"

// JSON document formats: every document carries a top-level "kind" tag and an
// explicit scenario header; exact-mode numbers are encoded as "p/q" strings so
// rationals survive round trips. See docs/formats.md.
namespace nlb::io {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

json load_file(const std::string& path);
void save_file(const std::string& path, const json& doc);

std::string kind_of(const json& doc);

json scenario_doc(const Scenario& sc);
Scenario scenario_from(const json& doc);

// behavior and functional documents share the table layout; mode selects the
// scalar encoding
bool doc_is_exact(const json& doc);

json behavior_doc(const Behavior<Rational>& b);
json behavior_doc(const Behavior<double>& b);
Behavior<Rational> behavior_exact_from(const json& doc, double tolerance = 1e-10);
Behavior<double> behavior_float_from(const json& doc, double tolerance = 1e-10);

json functional_doc(const BellFunctional<Rational>& f);
json functional_doc(const BellFunctional<double>& f);
BellFunctional<Rational> functional_exact_from(const json& doc);
BellFunctional<double> functional_float_from(const json& doc);

json signed_distribution_doc(const SignedDistribution<Rational>& tau);
json signed_distribution_doc(const SignedDistribution<double>& tau);

json model_doc(const quantum::QuantumModel& model);
quantum::QuantumModel model_from(const json& doc);

// family documents list behavior files, resolved relative to `base_dir`
std::vector<std::string> family_from(const json& doc, const std::string& base_dir);

}  // namespace nlb::io
