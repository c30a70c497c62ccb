#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "nlb/lqhv.hpp"
#include "nlb/quantum.hpp"

using namespace nlb;

namespace {

// the CHSH value of a global assignment under +/-1 outcome values
int chsh_of_assignment(const Scenario& sc, const std::vector<int>& choices) {
    auto v = [&](int party, int setting) { return 1 - 2 * choices[sc.slot(party, setting)]; };
    return v(0, 0) * v(1, 0) + v(0, 0) * v(1, 1) + v(0, 1) * v(1, 0) - v(0, 1) * v(1, 1);
}

// the signed model of the PR box supported on CHSH-extremal assignments:
// +3/16 where the assignment's CHSH value is +2, -1/16 where it is -2
SignedDistribution<Rational> pr_witness() {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    SignedDistribution<Rational> tau{sc, std::vector<Rational>(16)};
    std::vector<int> choices(4, 0);
    int64_t w = 0;
    do {
        int c = chsh_of_assignment(sc, choices);
        tau.values[w++] = c == 2 ? Rational(3, 16) : Rational(-1, 16);
    } while (MixedRadix::next(choices, {2, 2, 2, 2}));
    return tau;
}

Behavior<Rational> random_lhv_mixture(std::mt19937_64& rng) {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    std::vector<Behavior<Rational>> members;
    std::vector<long long> raw;
    long long total = 0;
    for (int i = 0; i < 6; ++i) {
        std::vector<int> choices(4);
        for (auto& c : choices) c = static_cast<int>(rng() % 2);
        members.push_back(deterministic_behavior<Rational>(sc, DeterministicStrategy{choices}));
        raw.push_back(static_cast<long long>(rng() % 9) + 1);
        total += raw.back();
    }
    std::vector<Rational> weights;
    for (long long r : raw) weights.push_back(Rational(r, total));
    return mix(members, weights);
}

}  // namespace

TEST_CASE("marginals of a point mass reproduce the deterministic behavior") {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    DeterministicStrategy strat{{0, 1, 1, 0}};
    SignedDistribution<Rational> tau{sc, std::vector<Rational>(16, Rational(0))};
    // locate the assignment index of the strategy
    std::vector<int> choices(4, 0);
    int64_t w = 0;
    do {
        if (choices == strat.choices) break;
        ++w;
    } while (MixedRadix::next(choices, {2, 2, 2, 2}));
    tau.values[w] = Rational(1);
    auto tables = marginals_of(sc, tau);
    auto det = deterministic_behavior<Rational>(sc, strat);
    CHECK(tables == det.tables);
}

TEST_CASE("the explicit PR witness reproduces the PR box with variation norm 2") {
    auto tau = pr_witness();
    CHECK(tau.total() == Rational(1));
    CHECK(tau.total_variation() == Rational(2));
    auto tables = marginals_of(tau.scenario, tau);
    CHECK(tables == pr_box().tables);
}

TEST_CASE("probability distributions over assignments give nonsignaling behaviors") {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        SignedDistribution<Rational> tau{sc, {}};
        long long total = 0;
        std::vector<long long> raw(16);
        for (auto& r : raw) {
            r = static_cast<long long>(rng() % 5);
            total += r;
        }
        if (total == 0) continue;
        for (long long r : raw) tau.values.push_back(Rational(r, total));
        auto beh = validate_behavior(sc, marginals_of(sc, tau));
        CHECK(is_nonsignaling(beh).passed);
    }
}

TEST_CASE("tv_lp dimensions") {
    auto prog = tv_lp(to_float(pr_box()));
    CHECK(prog.c.size() == 32);
    CHECK(prog.rows.size() == 16);

    Scenario sc33 = make_scenario(2, {2, 2}, {3, 3});
    auto prog33 = tv_lp(uniform_behavior<Rational>(sc33));
    CHECK(prog33.c.size() == 162);
    CHECK(prog33.rows.size() == 36);

    CHECK_THROWS_AS(tv_lp(pr_box(), 4), BudgetExceeded);
}

TEST_CASE("gamma of the PR box is exactly 2 with a CHSH-class certificate") {
    auto result = gamma(pr_box());
    CHECK(result.gamma == Rational(2));
    CHECK(result.witness.total() == Rational(1));
    CHECK(result.witness.total_variation() == Rational(2));
    CHECK(marginals_of(result.witness.scenario, result.witness) == pr_box().tables);

    // certificate: normalized LHV norm 1, achieved value 2, independent check
    CHECK(result.certificate_blhv == Rational(1));
    CHECK(result.certificate_value == Rational(2));
    auto report = verify_certificate(pr_box(), result.certificate);
    CHECK(report.ratio == Rational(2));

    // its correlation part is CHSH up to local relabeling: equal magnitudes,
    // odd number of negative coefficients
    const Scenario& sc = result.certificate.scenario;
    std::vector<Rational> alpha;
    for (int s = 0; s < 4; ++s) {
        Rational acc(0);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                acc += result.certificate.tables[s][sc.outcome_index({a, b})] *
                       Rational((1 - 2 * a) * (1 - 2 * b), 4);
        alpha.push_back(acc);
    }
    int negatives = 0;
    for (const auto& a : alpha) {
        CHECK(a.abs() == alpha[0].abs());
        if (a.sign() < 0) ++negatives;
    }
    CHECK(negatives % 2 == 1);
}

TEST_CASE("gamma is 1 exactly on deterministic mixtures") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        auto beh = random_lhv_mixture(rng);
        auto result = gamma(beh);
        CHECK(result.gamma == Rational(1));
        CHECK(result.certificate_value == Rational(1));
        CHECK(marginals_of(beh.scenario, result.witness) == beh.tables);
    }
}

TEST_CASE("gamma in float mode matches exact mode on rational boxes") {
    auto exact = gamma(pr_box());
    auto fl = gamma(to_float(pr_box()));
    CHECK(fl.gamma == doctest::Approx(exact.gamma.to_double()).epsilon(1e-9));
    CHECK(fl.certificate_value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gamma rejects signaling behaviors, and the LP agrees") {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    std::vector<std::vector<Rational>> tables(4, std::vector<Rational>(4, Rational(0)));
    tables[sc.settings_index({0, 0})][sc.outcome_index({0, 0})] = Rational(1);
    tables[sc.settings_index({0, 1})][sc.outcome_index({0, 0})] = Rational(1);
    tables[sc.settings_index({1, 0})][sc.outcome_index({0, 1})] = Rational(1);
    tables[sc.settings_index({1, 1})][sc.outcome_index({0, 1})] = Rational(1);
    auto beh = validate_behavior(sc, tables);
    CHECK_THROWS_AS(gamma(beh), SignalingError);
    // the two detectors agree: the marginal test fails and the LP is infeasible
    auto prog = tv_lp(beh);
    CHECK(lp::solve(prog).status == lp::Status::infeasible);
}

TEST_CASE("analog interval formulas") {
    double s2 = std::sqrt(2.0);
    auto ab = analog_bounds(-1.0, 0.0, s2);
    CHECK(ab.lower == doctest::Approx(-(1.0 + s2) / 2).epsilon(1e-12));
    CHECK(ab.upper == doctest::Approx((s2 - 1.0) / 2).epsilon(1e-12));

    auto identity = analog_bounds(Rational(-1), Rational(0), Rational(1));
    CHECK(identity.lower == Rational(-1));
    CHECK(identity.upper == Rational(0));

    auto zg = analog_bounds(Rational(1), Rational(2), Rational(3));
    CHECK(zg.lower == Rational(0));
    CHECK(zg.upper == Rational(3));

    // collapsed interval stays a point for any upsilon
    auto point = analog_bounds(Rational(5), Rational(5), Rational(100));
    CHECK(point.lower == Rational(5));
    CHECK(point.upper == Rational(5));

    CHECK_THROWS_AS(analog_bounds(Rational(0), Rational(1), Rational(1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(analog_bounds(Rational(1), Rational(0), Rational(2)), std::invalid_argument);
}

TEST_CASE("upsilon over a finite family picks the PR box") {
    std::vector<Behavior<Rational>> family = {pr_box(),
                                              uniform_behavior<Rational>(pr_box().scenario)};
    auto result = upsilon_family(family);
    CHECK(result.value == Rational(2));
    CHECK(result.argmax == 0);
    CHECK(result.gammas[1] == Rational(1));

    std::mt19937_64 rng(9);
    std::vector<Behavior<Rational>> lhv_family = {random_lhv_mixture(rng),
                                                  random_lhv_mixture(rng)};
    CHECK(upsilon_family(lhv_family).value == Rational(1));
}

TEST_CASE("deleting a setting never increases gamma") {
    auto pr = pr_box();
    auto g_full = gamma(pr).gamma;
    for (int party = 0; party < 2; ++party)
        for (int setting = 0; setting < 2; ++setting) {
            auto reduced = drop_setting(pr, party, setting);
            auto g_red = gamma(reduced).gamma;
            CHECK(g_red <= g_full);
            // one remaining setting on a side always admits a nonnegative model
            CHECK(g_red == Rational(1));
        }
}

TEST_CASE("gamma is convex under mixing") {
    std::mt19937_64 rng(11);
    auto pr = pr_box();
    for (int rep = 0; rep < 4; ++rep) {
        auto lhv = random_lhv_mixture(rng);
        long long num = static_cast<long long>(rng() % 9) + 1;
        Rational w(num, 10);
        auto mixture = mix(std::vector<Behavior<Rational>>{pr, lhv}, {w, Rational(1) - w});
        auto g = gamma(mixture).gamma;
        Rational bound = w * Rational(2) + (Rational(1) - w) * Rational(1);
        CHECK(g <= bound);
        CHECK(g >= Rational(1));
    }
}

TEST_CASE("gamma of the quantum CHSH-optimal behavior is sqrt(2)") {
    auto behavior = quantum::born_behavior(quantum::chsh_optimal_model());
    auto result = gamma(behavior);
    CHECK(result.gamma == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    auto report = verify_certificate(behavior, result.certificate);
    CHECK(report.ratio == doctest::Approx(result.gamma).epsilon(1e-9));
}
