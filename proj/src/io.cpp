#include "nlb/io.hpp"

#include <filesystem>
#include <fstream>

namespace nlb::io {

namespace {

using quantum::cplx;

json tables_json_exact(const Scenario& sc, const std::vector<std::vector<Rational>>& tables) {
    json arr = json::array();
    for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
        std::vector<int> tuple = sc.settings_tuple(s);
        for (int& t : tuple) ++t;  // 1-based in documents
        json entries = json::array();
        for (const auto& v : tables[s]) entries.push_back(v.to_string());
        arr.push_back(json{{"settings", tuple}, {"entries", entries}});
    }
    return arr;
}

json tables_json_float(const Scenario& sc, const std::vector<std::vector<double>>& tables) {
    json arr = json::array();
    for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
        std::vector<int> tuple = sc.settings_tuple(s);
        for (int& t : tuple) ++t;
        json entries = json::array();
        for (double v : tables[s]) entries.push_back(v);
        arr.push_back(json{{"settings", tuple}, {"entries", entries}});
    }
    return arr;
}

template <class T, class Conv>
std::vector<std::vector<T>> tables_from(const Scenario& sc, const json& doc, Conv conv) {
    if (!doc.contains("tables") || !doc["tables"].is_array())
        throw ParseError("document: missing tables array");
    std::vector<std::vector<T>> tables(sc.joint_settings_count());
    std::vector<bool> seen(sc.joint_settings_count(), false);
    for (const auto& entry : doc["tables"]) {
        if (!entry.contains("settings") || !entry.contains("entries"))
            throw ParseError("table entry: need settings and entries");
        std::vector<int> tuple = entry["settings"].get<std::vector<int>>();
        for (int& t : tuple) --t;
        int64_t sidx;
        try {
            sidx = sc.settings_index(tuple);
        } catch (const std::exception& e) {
            throw ParseError(std::string("table entry: ") + e.what());
        }
        if (seen[sidx]) throw ParseError("table entry: duplicate settings tuple");
        seen[sidx] = true;
        std::vector<T> row;
        row.reserve(entry["entries"].size());
        for (const auto& v : entry["entries"]) row.push_back(conv(v));
        if (static_cast<int64_t>(row.size()) != sc.joint_outcomes_count())
            throw ParseError("table entry: wrong entry count");
        tables[sidx] = std::move(row);
    }
    for (bool s : seen)
        if (!s) throw ParseError("document: missing a settings tuple table");
    return tables;
}

Rational rational_from_json(const json& v) {
    if (v.is_string()) {
        try {
            return Rational::from_string(v.get<std::string>());
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad rational literal: ") + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw ParseError("exact documents encode scalars as \"p/q\" strings");
}

double double_from_json(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        // tolerate integers or rationals in float documents
        Rational r = rational_from_json(v);
        return r.to_double();
    }
    throw ParseError("expected a numeric entry");
}

cplx cplx_from_json(const json& v) {
    if (!v.is_array() || v.size() != 2) throw ParseError("complex entries are [re, im] pairs");
    return {double_from_json(v[0]), double_from_json(v[1])};
}

json cplx_to_json(const cplx& v) { return json::array({v.real(), v.imag()}); }

quantum::CMat cmat_from(const json& doc) {
    if (!doc.contains("dim") || !doc.contains("data")) throw ParseError("matrix: need dim and data");
    int n = doc["dim"].get<int>();
    if (n < 1) throw ParseError("matrix: bad dimension");
    const auto& data = doc["data"];
    if (!data.is_array() || static_cast<int>(data.size()) != n * n)
        throw ParseError("matrix: data must hold dim*dim [re, im] pairs");
    quantum::CMat m(n);
    for (int i = 0; i < n * n; ++i) m.a[i] = cplx_from_json(data[i]);
    return m;
}

json cmat_doc(const quantum::CMat& m) {
    json data = json::array();
    for (const auto& v : m.a) data.push_back(cplx_to_json(v));
    return json{{"dim", m.n}, {"data", data}};
}

void require_kind(const json& doc, const std::string& kind) {
    if (kind_of(doc) != kind) throw ParseError("expected a document of kind \"" + kind + "\"");
}

}  // namespace

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return doc;
}

void save_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << '\n';
}

std::string kind_of(const json& doc) {
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw ParseError("document: missing kind tag");
    return doc["kind"].get<std::string>();
}

json scenario_doc(const Scenario& sc) {
    return json{{"parties", sc.parties()},
                {"settings", sc.settings_list()},
                {"outcomes", sc.outcomes_list()}};
}

Scenario scenario_from(const json& doc) {
    const json& s = doc.contains("scenario") ? doc["scenario"] : doc;
    if (!s.is_object() || !s.contains("parties") || !s.contains("settings") ||
        !s.contains("outcomes"))
        throw ParseError("scenario: need parties, settings, outcomes");
    try {
        return make_scenario(s["parties"].get<int>(), s["settings"].get<std::vector<int>>(),
                             s["outcomes"].get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
}

bool doc_is_exact(const json& doc) {
    if (!doc.contains("mode") || !doc["mode"].is_string())
        throw ParseError("document: missing mode (\"exact\" or \"float\")");
    std::string m = doc["mode"].get<std::string>();
    if (m == "exact") return true;
    if (m == "float") return false;
    throw ParseError("document: mode must be \"exact\" or \"float\"");
}

json behavior_doc(const Behavior<Rational>& b) {
    return json{{"kind", "behavior"},
                {"mode", "exact"},
                {"scenario", scenario_doc(b.scenario)},
                {"tables", tables_json_exact(b.scenario, b.tables)}};
}

json behavior_doc(const Behavior<double>& b) {
    return json{{"kind", "behavior"},
                {"mode", "float"},
                {"scenario", scenario_doc(b.scenario)},
                {"tables", tables_json_float(b.scenario, b.tables)}};
}

Behavior<Rational> behavior_exact_from(const json& doc, double tolerance) {
    require_kind(doc, "behavior");
    Scenario sc = scenario_from(doc);
    auto tables = tables_from<Rational>(sc, doc, rational_from_json);
    return validate_behavior(sc, std::move(tables), tolerance);
}

Behavior<double> behavior_float_from(const json& doc, double tolerance) {
    require_kind(doc, "behavior");
    Scenario sc = scenario_from(doc);
    auto tables = tables_from<double>(sc, doc, double_from_json);
    return validate_behavior(sc, std::move(tables), tolerance);
}

json functional_doc(const BellFunctional<Rational>& f) {
    return json{{"kind", "functional"},
                {"mode", "exact"},
                {"scenario", scenario_doc(f.scenario)},
                {"tables", tables_json_exact(f.scenario, f.tables)}};
}

json functional_doc(const BellFunctional<double>& f) {
    return json{{"kind", "functional"},
                {"mode", "float"},
                {"scenario", scenario_doc(f.scenario)},
                {"tables", tables_json_float(f.scenario, f.tables)}};
}

BellFunctional<Rational> functional_exact_from(const json& doc) {
    require_kind(doc, "functional");
    Scenario sc = scenario_from(doc);
    return BellFunctional<Rational>{sc, tables_from<Rational>(sc, doc, rational_from_json)};
}

BellFunctional<double> functional_float_from(const json& doc) {
    require_kind(doc, "functional");
    Scenario sc = scenario_from(doc);
    return BellFunctional<double>{sc, tables_from<double>(sc, doc, double_from_json)};
}

json signed_distribution_doc(const SignedDistribution<Rational>& tau) {
    json vals = json::array();
    for (const auto& v : tau.values) vals.push_back(v.to_string());
    return json{{"kind", "signed-distribution"},
                {"mode", "exact"},
                {"scenario", scenario_doc(tau.scenario)},
                {"values", vals}};
}

json signed_distribution_doc(const SignedDistribution<double>& tau) {
    json vals = json::array();
    for (double v : tau.values) vals.push_back(v);
    return json{{"kind", "signed-distribution"},
                {"mode", "float"},
                {"scenario", scenario_doc(tau.scenario)},
                {"values", vals}};
}

json model_doc(const quantum::QuantumModel& model) {
    json meas = json::array();
    for (const auto& party : model.measurements) {
        json settings = json::array();
        for (const auto& povm : party) {
            json elems = json::array();
            for (const auto& m : povm) elems.push_back(cmat_doc(m));
            settings.push_back(elems);
        }
        meas.push_back(settings);
    }
    return json{{"kind", "quantum-model"},
                {"scenario", scenario_doc(model.scenario)},
                {"dims", model.dims},
                {"projective", model.projective},
                {"state", cmat_doc(model.rho)},
                {"measurements", meas}};
}

quantum::QuantumModel model_from(const json& doc) {
    require_kind(doc, "quantum-model");
    quantum::QuantumModel model;
    model.scenario = scenario_from(doc);
    if (!doc.contains("dims") || !doc.contains("state") || !doc.contains("measurements"))
        throw ParseError("quantum-model: need dims, state, measurements");
    try {
        model.dims = doc["dims"].get<std::vector<int>>();
        model.projective = doc.value("projective", false);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("quantum-model: ") + e.what());
    }
    model.rho = cmat_from(doc["state"]);
    if (!doc["measurements"].is_array()) throw ParseError("quantum-model: bad measurements");
    for (const auto& party : doc["measurements"]) {
        std::vector<std::vector<quantum::CMat>> settings;
        if (!party.is_array()) throw ParseError("quantum-model: bad measurement family");
        for (const auto& povm : party) {
            std::vector<quantum::CMat> elems;
            if (!povm.is_array()) throw ParseError("quantum-model: bad POVM");
            for (const auto& m : povm) elems.push_back(cmat_from(m));
            settings.push_back(std::move(elems));
        }
        model.measurements.push_back(std::move(settings));
    }
    return model;
}

std::vector<std::string> family_from(const json& doc, const std::string& base_dir) {
    require_kind(doc, "family");
    if (!doc.contains("behaviors") || !doc["behaviors"].is_array())
        throw ParseError("family: need a behaviors file list");
    std::vector<std::string> out;
    for (const auto& v : doc["behaviors"]) {
        if (!v.is_string()) throw ParseError("family: behavior entries are file paths");
        std::filesystem::path p = v.get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        out.push_back(p.string());
    }
    return out;
}

}  // namespace nlb::io
