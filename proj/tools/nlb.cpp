// nlb: nonsignaling-box toolkit. Validates behaviors, computes tight LHV
// bounds of Bell functionals, the nonlocality parameter gamma with its dual
// certificate, nonsignaling analog intervals, and quantum behaviors.
//
// Exit codes: 0 success, 1 validation/domain failure, 2 parse error,
// 3 enumeration/LP budget exceeded, 4 LP failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nlb/bell.hpp"
#include "nlb/io.hpp"
#include "nlb/lqhv.hpp"
#include "nlb/quantum.hpp"

using namespace nlb;
namespace io = nlb::io;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Output {
    bool structured = false;
    io::json doc;

    void field(const std::string& key, const io::json& value) {
        if (structured) doc[key] = value;
    }
    void line(const std::string& text) {
        if (!structured) std::cout << text << '\n';
    }
    void flush() {
        if (structured) std::cout << doc.dump(2) << '\n';
    }
};

// behavior input: a document file or the built-in PR box
struct BehaviorInput {
    std::optional<Behavior<Rational>> exact;
    std::optional<Behavior<double>> approx;

    bool is_exact() const { return exact.has_value(); }
    Behavior<double> as_float() const { return exact ? to_float(*exact) : *approx; }
};

BehaviorInput load_behavior(const std::string& file, bool use_pr_box, double tolerance) {
    BehaviorInput in;
    if (use_pr_box) {
        in.exact = pr_box();
        return in;
    }
    io::json doc = io::load_file(file);
    if (io::doc_is_exact(doc))
        in.exact = io::behavior_exact_from(doc, tolerance);
    else
        in.approx = io::behavior_float_from(doc, tolerance);
    return in;
}

std::string strategy_text(const Scenario& sc, const DeterministicStrategy& s) {
    std::string out;
    for (int n = 0; n < sc.parties(); ++n) {
        if (n) out += ", ";
        out += "party " + std::to_string(n + 1) + ": [";
        for (int k = 0; k < sc.settings(n); ++k) {
            if (k) out += ' ';
            out += std::to_string(s.outcome(sc, n, k));
        }
        out += ']';
    }
    return out;
}

io::json strategy_json(const Scenario& sc, const DeterministicStrategy& s) {
    io::json parties = io::json::array();
    for (int n = 0; n < sc.parties(); ++n) {
        io::json outcomes = io::json::array();
        for (int k = 0; k < sc.settings(n); ++k) outcomes.push_back(s.outcome(sc, n, k));
        parties.push_back(outcomes);
    }
    return parties;
}

int cmd_check(const std::string& file, bool use_pr_box, double tolerance, Output& out) {
    BehaviorInput in = load_behavior(file, use_pr_box, tolerance);
    out.field("command", "check");
    out.field("validation", "pass");
    out.line("validation: PASS");
    bool passed;
    std::string detail;
    if (in.is_exact()) {
        auto rep = is_nonsignaling(*in.exact);
        passed = rep.passed;
        if (!passed)
            detail = "party " + std::to_string(rep.party + 1) + ", settings " +
                     std::to_string(rep.setting_a + 1) + " vs " +
                     std::to_string(rep.setting_b + 1) + ", deviation " +
                     rep.worst_deviation.to_string();
        out.field("worst_deviation", rep.worst_deviation.to_string());
        if (!passed) out.field("violating_party", rep.party + 1);
    } else {
        auto rep = is_nonsignaling(*in.approx, tolerance);
        passed = rep.passed;
        if (!passed)
            detail = "party " + std::to_string(rep.party + 1) + ", settings " +
                     std::to_string(rep.setting_a + 1) + " vs " +
                     std::to_string(rep.setting_b + 1) + ", deviation " +
                     fmt(rep.worst_deviation);
        out.field("worst_deviation", rep.worst_deviation);
        if (!passed) out.field("violating_party", rep.party + 1);
    }
    out.field("nonsignaling", passed ? "pass" : "fail");
    out.line(passed ? "nonsignaling: PASS" : "nonsignaling: FAIL (" + detail + ")");
    out.flush();
    return passed ? 0 : 1;
}

template <class T>
void report_bounds(const BellFunctional<T>& f, Output& out) {
    auto bounds = lhv_bounds(f);
    std::string binf, bsup, blhv;
    if constexpr (scalar_traits<T>::exact) {
        binf = bounds.b_inf.to_string();
        bsup = bounds.b_sup.to_string();
        blhv = bounds.b_lhv().to_string();
        out.field("b_inf", binf);
        out.field("b_sup", bsup);
        out.field("b_lhv", blhv);
    } else {
        binf = fmt17(bounds.b_inf);
        bsup = fmt17(bounds.b_sup);
        blhv = fmt17(bounds.b_lhv());
        out.field("b_inf", bounds.b_inf);
        out.field("b_sup", bounds.b_sup);
        out.field("b_lhv", bounds.b_lhv());
    }
    out.line("B_inf = " + binf + ", B_sup = " + bsup + ", B_lhv = " + blhv);
    out.line("argmin: " + strategy_text(f.scenario, bounds.argmin));
    out.line("argmax: " + strategy_text(f.scenario, bounds.argmax));
    out.field("argmin", strategy_json(f.scenario, bounds.argmin));
    out.field("argmax", strategy_json(f.scenario, bounds.argmax));
}

int cmd_lhv_bounds(const std::string& file, const std::string& builtin, int d, Output& out) {
    out.field("command", "lhv-bounds");
    if (!builtin.empty()) {
        report_bounds(builtin_functional(builtin, d), out);
    } else {
        io::json doc = io::load_file(file);
        if (io::doc_is_exact(doc))
            report_bounds(io::functional_exact_from(doc), out);
        else
            report_bounds(io::functional_float_from(doc), out);
    }
    out.flush();
    return 0;
}

int cmd_gamma(const std::string& file, bool use_pr_box, const std::string& mode,
              const std::string& witness_out, const std::string& certificate_out, Output& out) {
    BehaviorInput in = load_behavior(file, use_pr_box, 1e-10);
    bool run_exact = in.is_exact();
    if (mode == "float") run_exact = false;
    if (mode == "exact" && !in.is_exact())
        throw std::invalid_argument("gamma: cannot run a float document in exact mode");

    out.field("command", "gamma");
    out.field("mode", run_exact ? "exact" : "float");
    if (run_exact) {
        auto result = gamma(*in.exact);
        auto check = verify_certificate(*in.exact, result.certificate);
        bool verified = check.ratio == result.gamma;
        out.line("gamma = " + result.gamma.to_string() + " (exact, ~" +
                 fmt(result.gamma.to_double()) + ")");
        out.line("certificate ratio = " + check.ratio.to_string() +
                 (verified ? ", verified" : ", MISMATCH"));
        out.field("gamma", result.gamma.to_string());
        out.field("gamma_value", result.gamma.to_double());
        out.field("certificate_ratio", check.ratio.to_string());
        out.field("verified", verified);
        if (!witness_out.empty())
            io::save_file(witness_out, io::signed_distribution_doc(result.witness));
        if (!certificate_out.empty())
            io::save_file(certificate_out, io::functional_doc(result.certificate));
        out.flush();
        return verified ? 0 : 4;
    }
    auto behavior = in.as_float();
    auto result = gamma(behavior);
    auto check = verify_certificate(behavior, result.certificate);
    bool verified = std::fabs(check.ratio - result.gamma) <= 1e-9;
    out.line("gamma = " + fmt(result.gamma));
    out.line("certificate ratio = " + fmt(check.ratio) +
             (verified ? ", verified" : ", MISMATCH"));
    out.field("gamma", result.gamma);
    out.field("certificate_ratio", check.ratio);
    out.field("lp_residual", result.lp_residual);
    out.field("verified", verified);
    if (!witness_out.empty())
        io::save_file(witness_out, io::signed_distribution_doc(result.witness));
    if (!certificate_out.empty())
        io::save_file(certificate_out, io::functional_doc(result.certificate));
    out.flush();
    return verified ? 0 : 4;
}

int cmd_analog(double binf, double bsup, double upsilon, Output& out) {
    auto interval = analog_bounds(binf, bsup, upsilon);
    out.field("command", "analog");
    out.line("[" + fmt(interval.lower) + ", " + fmt(interval.upper) + "]");
    out.field("lower", interval.lower);
    out.field("upper", interval.upper);
    out.flush();
    return 0;
}

int cmd_quantum(const std::string& file, const std::string& preset, bool random, uint64_t seed,
                int random_d, bool povm, const std::string& behavior_out, bool check_bounds,
                Output& out) {
    quantum::QuantumModel model;
    if (!preset.empty()) {
        if (preset == "chsh-optimal") {
            model = quantum::chsh_optimal_model();
        } else if (preset == "maximally-mixed") {
            model = quantum::random_model(make_scenario(2, {2, 2}, {2, 2}), 0, true);
            model.rho = quantum::maximally_mixed(4);
        } else {
            throw std::invalid_argument("unknown preset: " + preset);
        }
    } else if (random) {
        Scenario sc = make_scenario(2, {2, 2}, {random_d, random_d});
        model = quantum::random_model(sc, seed, !povm);
    } else {
        model = io::model_from(io::load_file(file));
    }
    auto behavior = quantum::born_behavior(model);
    out.field("command", "quantum");
    out.field("projective", model.projective);

    if (!behavior_out.empty()) {
        io::save_file(behavior_out, io::behavior_doc(behavior));
        out.line("behavior written to " + behavior_out);
        out.field("behavior_file", behavior_out);
    } else if (out.structured) {
        out.field("behavior", io::behavior_doc(behavior));
    } else if (!check_bounds) {
        std::cout << io::behavior_doc(behavior).dump(2) << '\n';
    }

    int rc = 0;
    if (check_bounds) {
        const Scenario& sc = behavior.scenario;
        if (sc == make_scenario(2, {2, 2}, {2, 2})) {
            double chsh = evaluate(to_float(builtin_functional("CHSH")), behavior);
            out.line("CHSH = " + fmt(chsh));
            out.field("chsh", chsh);
        }
        int d = 0, S = 0;
        for (int n = 0; n < sc.parties(); ++n) {
            d = std::max(d, sc.outcomes(n));
            S = std::max(S, sc.settings(n));
        }
        double bound = model.projective ? quantum::bound_projective(d, S, sc.parties())
                                        : quantum::bound_general(d, S, sc.parties());
        auto result = gamma(behavior);
        bool pass = result.gamma <= bound + 1e-6;
        out.line("gamma = " + fmt(result.gamma) + (pass ? " <= " : " > ") + "bound " +
                 fmt(bound) + (pass ? " PASS" : " FAIL"));
        out.field("gamma", result.gamma);
        out.field("bound", bound);
        out.field("bound_pass", pass);
        if (!pass) rc = 1;
    }
    out.flush();
    return rc;
}

int cmd_family(const std::string& file, const std::string& mode, Output& out) {
    io::json doc = io::load_file(file);
    std::string base = std::filesystem::path(file).parent_path().string();
    auto files = io::family_from(doc, base);
    if (files.empty()) throw std::invalid_argument("family: empty behavior list");

    // exact arithmetic only when every member is exact and float was not forced
    std::vector<io::json> docs;
    bool all_exact = true;
    for (const auto& f : files) {
        docs.push_back(io::load_file(f));
        all_exact = all_exact && io::doc_is_exact(docs.back());
    }
    bool run_exact = all_exact && mode != "float";
    out.field("command", "family");
    out.field("mode", run_exact ? "exact" : "float");
    io::json per = io::json::array();
    if (run_exact) {
        std::vector<Behavior<Rational>> family;
        for (const auto& d : docs) family.push_back(io::behavior_exact_from(d));
        auto result = upsilon_family(family);
        for (size_t i = 0; i < files.size(); ++i) {
            out.line("gamma(" + files[i] + ") = " + result.gammas[i].to_string());
            per.push_back(io::json{{"file", files[i]}, {"gamma", result.gammas[i].to_string()}});
        }
        out.line("upsilon = " + result.value.to_string() + ", attained by " +
                 files[result.argmax]);
        out.field("gammas", per);
        out.field("upsilon", result.value.to_string());
        out.field("argmax", files[result.argmax]);
    } else {
        std::vector<Behavior<double>> family;
        for (const auto& d : docs)
            family.push_back(io::doc_is_exact(d) ? to_float(io::behavior_exact_from(d))
                                                 : io::behavior_float_from(d));
        auto result = upsilon_family(family);
        for (size_t i = 0; i < files.size(); ++i) {
            out.line("gamma(" + files[i] + ") = " + fmt(result.gammas[i]));
            per.push_back(io::json{{"file", files[i]}, {"gamma", result.gammas[i]}});
        }
        out.line("upsilon = " + fmt(result.value) + ", attained by " + files[result.argmax]);
        out.field("gammas", per);
        out.field("upsilon", result.value);
        out.field("argmax", files[result.argmax]);
    }
    out.flush();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonsignaling-box toolkit: LHV bounds, nonlocality gamma, quantum behaviors"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));

    auto* check = app.add_subcommand("check", "validate a behavior and test nonsignaling");
    std::string check_file;
    bool check_pr = false;
    double check_tol = 1e-10;
    check->add_option("behavior", check_file, "behavior document");
    check->add_flag("--pr-box", check_pr, "use the built-in PR box");
    check->add_option("--tolerance", check_tol, "float-mode tolerance");

    auto* lhv = app.add_subcommand("lhv-bounds", "tight LHV constants of a Bell functional");
    std::string lhv_file, lhv_builtin;
    int lhv_d = 0;
    lhv->add_option("functional", lhv_file, "functional document");
    lhv->add_option("--builtin", lhv_builtin, "built-in functional: CH, CHSH or ZG");
    lhv->add_option("--d", lhv_d, "outcomes per site for ZG");

    auto* gam = app.add_subcommand("gamma", "nonlocality parameter with dual certificate");
    std::string gamma_file, gamma_mode, witness_out, certificate_out;
    bool gamma_pr = false;
    gam->add_option("behavior", gamma_file, "behavior document");
    gam->add_flag("--pr-box", gamma_pr, "use the built-in PR box");
    gam->add_option("--mode", gamma_mode, "force exact or float arithmetic")
        ->check(CLI::IsMember({"exact", "float"}));
    gam->add_option("--witness-out", witness_out, "write the optimal signed model here");
    gam->add_option("--certificate-out", certificate_out, "write the dual functional here");

    auto* ana = app.add_subcommand("analog", "nonsignaling analog interval of an LHV range");
    double binf = 0, bsup = 0, upsilon = 1;
    ana->add_option("--binf", binf, "LHV infimum")->required();
    ana->add_option("--bsup", bsup, "LHV supremum")->required();
    ana->add_option("--upsilon", upsilon, "nonlocality parameter of the class")->required();

    auto* qu = app.add_subcommand("quantum", "behavior of a quantum model");
    std::string model_file, preset, behavior_out;
    uint64_t seed = 0;
    int random_d = 2;
    bool povm = false, check_bounds = false;
    qu->add_option("model", model_file, "quantum-model document");
    qu->add_option("--preset", preset, "chsh-optimal or maximally-mixed");
    auto* random_opt =
        qu->add_option("--random", seed, "seeded random bipartite two-setting model");
    qu->add_option("--d", random_d, "outcomes per site for --random");
    qu->add_flag("--povm", povm, "sample general POVMs instead of projective measurements");
    qu->add_option("--out", behavior_out, "write the behavior document here");
    qu->add_flag("--check-bounds", check_bounds, "compare gamma against the closed-form bound");

    auto* fam = app.add_subcommand("family", "max gamma over a family of behaviors");
    std::string family_file, family_mode;
    fam->add_option("family", family_file, "family document")->required();
    fam->add_option("--mode", family_mode, "force exact or float arithmetic")
        ->check(CLI::IsMember({"exact", "float"}));

    CLI11_PARSE(app, argc, argv);

    Output out;
    out.structured = format == "structured";

    try {
        if (check->parsed()) {
            if (check_file.empty() && !check_pr)
                throw std::invalid_argument("check: need a behavior file or --pr-box");
            return cmd_check(check_file, check_pr, check_tol, out);
        }
        if (lhv->parsed()) {
            if (lhv_file.empty() == lhv_builtin.empty())
                throw std::invalid_argument(
                    "lhv-bounds: need exactly one of a functional file or --builtin");
            return cmd_lhv_bounds(lhv_file, lhv_builtin, lhv_d, out);
        }
        if (gam->parsed()) {
            if (gamma_file.empty() && !gamma_pr)
                throw std::invalid_argument("gamma: need a behavior file or --pr-box");
            return cmd_gamma(gamma_file, gamma_pr, gamma_mode, witness_out, certificate_out, out);
        }
        if (ana->parsed()) return cmd_analog(binf, bsup, upsilon, out);
        if (qu->parsed()) {
            bool have_random = random_opt->count() > 0;
            int sources = (!model_file.empty() ? 1 : 0) + (!preset.empty() ? 1 : 0) +
                          (have_random ? 1 : 0);
            if (sources != 1)
                throw std::invalid_argument(
                    "quantum: need exactly one of a model file, --preset or --random");
            return cmd_quantum(model_file, preset, have_random, seed, random_d, povm,
                               behavior_out, check_bounds, out);
        }
        if (fam->parsed()) return cmd_family(family_file, family_mode, out);
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const lp::SolveError& e) {
        std::cerr << "lp failure: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
