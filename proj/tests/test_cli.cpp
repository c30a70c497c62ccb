// End-to-end checks of the command-line surface: spawns the built binary and
// inspects stdout plus exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "nlb/io.hpp"
#include "nlb/scenario.hpp"

namespace fs = std::filesystem;
using namespace nlb;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(NLB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "nlb_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_doc(const std::string& name, const io::json& doc) {
    fs::path p = scratch_dir() / name;
    io::save_file(p.string(), doc);
    return p.string();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("check command") {
    auto ok = run_cli("check --pr-box");
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "nonsignaling: PASS"));

    // signaling fixture: Bob's outcome tracks Alice's setting
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    std::vector<std::vector<Rational>> tables(4, std::vector<Rational>(4, Rational(0)));
    tables[0][0] = tables[1][0] = Rational(1);
    tables[2][1] = tables[3][1] = Rational(1);
    auto beh = validate_behavior(sc, tables);
    auto path = write_doc("signaling.json", io::behavior_doc(beh));
    auto bad = run_cli("check " + path);
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "FAIL"));
    CHECK(contains(bad.out, "party 1"));

    fs::path broken = scratch_dir() / "broken.json";
    std::ofstream(broken) << "{ not json";
    CHECK(run_cli("check " + broken.string()).code == 2);

    auto structured = run_cli("--format structured check --pr-box");
    auto doc = io::json::parse(structured.out);
    CHECK(doc["nonsignaling"] == "pass");
}

TEST_CASE("lhv-bounds command") {
    auto ch = run_cli("lhv-bounds --builtin CH");
    CHECK(ch.code == 0);
    CHECK(contains(ch.out, "B_inf = -1, B_sup = 0"));

    auto zg = run_cli("lhv-bounds --builtin ZG --d 5");
    CHECK(zg.code == 0);
    CHECK(contains(zg.out, "B_inf = 1, B_sup = 2"));

    auto chsh = run_cli("lhv-bounds --builtin CHSH");
    CHECK(chsh.code == 0);
    CHECK(contains(chsh.out, "B_inf = -2, B_sup = 2"));

    CHECK(run_cli("lhv-bounds --builtin NOPE").code == 1);

    // budget exhaustion surfaces as exit 3
    auto limited = run_cli("lhv-bounds --builtin CH");
    CHECK(limited.code == 0);
    setenv("NLB_ENUM_BUDGET", "4", 1);
    CHECK(run_cli("lhv-bounds --builtin CH").code == 3);
    unsetenv("NLB_ENUM_BUDGET");

    // functional document input
    auto path = write_doc("chsh.json", io::functional_doc(builtin_functional("CHSH")));
    auto from_file = run_cli("lhv-bounds " + path);
    CHECK(from_file.code == 0);
    CHECK(contains(from_file.out, "B_sup = 2"));
}

TEST_CASE("gamma command") {
    auto pr = run_cli("gamma --pr-box");
    CHECK(pr.code == 0);
    CHECK(contains(pr.out, "gamma = 2 (exact"));
    CHECK(contains(pr.out, "verified"));

    auto uniform = write_doc(
        "uniform.json", io::behavior_doc(uniform_behavior<Rational>(pr_box().scenario)));
    auto lhv = run_cli("gamma " + uniform);
    CHECK(lhv.code == 0);
    CHECK(contains(lhv.out, "gamma = 1 (exact"));

    auto fl = run_cli("gamma --pr-box --mode float");
    CHECK(fl.code == 0);
    CHECK(contains(fl.out, "gamma = 2"));

    // witness and certificate outputs re-parse
    fs::path wit = scratch_dir() / "witness.json";
    fs::path cert = scratch_dir() / "certificate.json";
    auto with_files = run_cli("gamma --pr-box --witness-out " + wit.string() +
                              " --certificate-out " + cert.string());
    CHECK(with_files.code == 0);
    auto wdoc = io::load_file(wit.string());
    CHECK(io::kind_of(wdoc) == "signed-distribution");
    auto cdoc = io::load_file(cert.string());
    CHECK_NOTHROW(io::functional_exact_from(cdoc));

    // signaling input exits 1
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    std::vector<std::vector<Rational>> tables(4, std::vector<Rational>(4, Rational(0)));
    tables[0][0] = tables[1][0] = Rational(1);
    tables[2][1] = tables[3][1] = Rational(1);
    auto spath = write_doc("signaling2.json", io::behavior_doc(validate_behavior(sc, tables)));
    CHECK(run_cli("gamma " + spath).code == 1);

    auto structured = run_cli("--format structured gamma --pr-box");
    auto doc = io::json::parse(structured.out);
    CHECK(doc["gamma"] == "2");
    CHECK(doc["verified"] == true);
}

TEST_CASE("analog command") {
    auto ch = run_cli("analog --binf -1 --bsup 0 --upsilon 1.41421356");
    CHECK(ch.code == 0);
    CHECK(contains(ch.out, "[-1.20710678, 0.20710678]"));

    auto zg = run_cli("analog --binf 1 --bsup 2 --upsilon 3");
    CHECK(zg.code == 0);
    CHECK(contains(zg.out, "[0, 3]"));

    auto identity = run_cli("analog --binf -0.5 --bsup 1.5 --upsilon 1");
    CHECK(contains(identity.out, "[-0.5, 1.5]"));

    CHECK(run_cli("analog --binf 0 --bsup 1 --upsilon 0.5").code == 1);
}

TEST_CASE("quantum command") {
    auto chsh = run_cli("quantum --preset chsh-optimal --check-bounds");
    CHECK(chsh.code == 0);
    CHECK(contains(chsh.out, "CHSH = 2.82842712"));
    CHECK(contains(chsh.out, "gamma = 1.41421356"));
    CHECK(contains(chsh.out, "PASS"));

    fs::path beh = scratch_dir() / "random42.json";
    auto rnd = run_cli("quantum --random 42 --out " + beh.string() + " --check-bounds");
    CHECK(rnd.code == 0);
    CHECK(contains(rnd.out, "PASS"));
    auto parsed = io::behavior_float_from(io::load_file(beh.string()));
    CHECK(parsed.scenario.joint_settings_count() == 4);

    auto mixed = run_cli("quantum --preset maximally-mixed --check-bounds");
    CHECK(mixed.code == 0);
    CHECK(contains(mixed.out, "gamma = 1 "));

    // model document round trip through the CLI
    auto mpath = write_doc("model.json", io::model_doc(quantum::chsh_optimal_model()));
    auto from_file = run_cli("quantum " + mpath + " --check-bounds");
    CHECK(from_file.code == 0);
    CHECK(contains(from_file.out, "PASS"));
}

TEST_CASE("family command") {
    auto dir = scratch_dir();
    write_doc("fam_pr.json", io::behavior_doc(pr_box()));
    write_doc("fam_uniform.json",
              io::behavior_doc(uniform_behavior<Rational>(pr_box().scenario)));
    io::json fam = {{"kind", "family"}, {"behaviors", {"fam_pr.json", "fam_uniform.json"}}};
    auto fpath = write_doc("family.json", fam);

    auto res = run_cli("family " + fpath);
    CHECK(res.code == 0);
    CHECK(contains(res.out, "upsilon = 2"));
    CHECK(contains(res.out, "fam_pr.json"));

    auto fl = run_cli("family " + fpath + " --mode float");
    CHECK(fl.code == 0);
    CHECK(contains(fl.out, "upsilon = 2"));
}
