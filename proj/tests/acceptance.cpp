// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line each. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nlb/bell.hpp"
#include "nlb/lqhv.hpp"
#include "nlb/quantum.hpp"

using namespace nlb;

namespace {

struct Harness {
    int failures = 0;
    int index = 0;

    // max_seconds <= 0 means no runtime requirement
    void run(const std::string& name, double max_seconds,
             const std::function<bool(std::string&)>& body) {
        ++index;
        std::string detail;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && max_seconds > 0 && secs > max_seconds) {
            ok = false;
            detail = "runtime " + std::to_string(secs) + " s exceeds " +
                     std::to_string(max_seconds) + " s";
        }
        std::printf("criterion %2d: %s  %s%s%s  (%.3f s)\n", index, ok ? "PASS" : "FAIL",
                    name.c_str(), detail.empty() ? "" : " -- ", detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

bool within(double value, double target, double tol) { return std::fabs(value - target) <= tol; }

// the eight extremal two-party two-setting two-outcome boxes of PR type:
// a xor b = x.y xor ax xor by xor g
Behavior<Rational> pr_variant(int alpha, int beta, int gam) {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    std::vector<std::vector<Rational>> tables(4, std::vector<Rational>(4, Rational(0)));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gam))
                        tables[x * 2 + y][a * 2 + b] = Rational(1, 2);
    return Behavior<Rational>{sc, std::move(tables)};
}

Behavior<Rational> random_deterministic_mixture(std::mt19937_64& rng, int members) {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    std::vector<Behavior<Rational>> parts;
    std::vector<long long> raw;
    long long total = 0;
    for (int i = 0; i < members; ++i) {
        std::vector<int> choices(4);
        for (auto& c : choices) c = static_cast<int>(rng() % 2);
        parts.push_back(deterministic_behavior<Rational>(sc, DeterministicStrategy{choices}));
        raw.push_back(static_cast<long long>(rng() % 15) + 1);
        total += raw.back();
    }
    std::vector<Rational> weights;
    for (long long r : raw) weights.push_back(Rational(r, total));
    return mix(parts, weights);
}

// nonsignaling (2222) behavior: an extremal PR-type box mixed with
// deterministic noise, all weights rational
Behavior<Rational> random_ns_behavior(std::mt19937_64& rng) {
    auto box = pr_variant(static_cast<int>(rng() % 2), static_cast<int>(rng() % 2),
                          static_cast<int>(rng() % 2));
    auto noise = random_deterministic_mixture(rng, 5);
    long long num = static_cast<long long>(rng() % 65);  // box weight in [0,1]
    Rational w(num, 64);
    return mix(std::vector<Behavior<Rational>>{box, noise}, {w, Rational(1) - w});
}

}  // namespace

int main() {
    Harness h;

    h.run("CH LHV constants are (-1, 0), exact", 0.1, [](std::string& detail) {
        auto bounds = lhv_bounds(builtin_functional("CH"));
        detail = "B_inf = " + bounds.b_inf.to_string() + ", B_sup = " + bounds.b_sup.to_string();
        return bounds.b_inf == Rational(-1) && bounds.b_sup == Rational(0);
    });

    h.run("ZG LHV constants are (1, 2) for d = 2..9, exact", 5.0, [](std::string& detail) {
        for (int d = 2; d <= 9; ++d) {
            auto bounds = lhv_bounds(builtin_functional("ZG", d));
            if (bounds.b_inf != Rational(1) || bounds.b_sup != Rational(2)) {
                detail = "failed at d = " + std::to_string(d);
                return false;
            }
        }
        detail = "8 outcome counts, 16..6561 strategies each";
        return true;
    });

    h.run("gamma(PR box) = 2 exactly with verified dual certificate", 1.0, [](std::string& detail) {
        auto result = gamma(pr_box());
        if (result.gamma != Rational(2)) {
            detail = "gamma = " + result.gamma.to_string();
            return false;
        }
        auto check = verify_certificate(pr_box(), result.certificate);
        if (check.ratio != Rational(2)) {
            detail = "certificate ratio = " + check.ratio.to_string();
            return false;
        }
        if (marginals_of(result.witness.scenario, result.witness) != pr_box().tables) {
            detail = "witness marginals do not reproduce the box";
            return false;
        }
        if (result.witness.total_variation() != Rational(2)) {
            detail = "witness variation norm is not 2";
            return false;
        }
        detail = "gamma exact, ratio exact, witness reproduces the box";
        return true;
    });

    h.run("gamma = 1 exactly on 50 seeded deterministic mixtures", 5.0, [](std::string& detail) {
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 50; ++i) {
            auto beh = random_deterministic_mixture(rng, 6);
            auto result = gamma(beh);
            if (result.gamma != Rational(1)) {
                detail = "mixture " + std::to_string(i) + " gave " + result.gamma.to_string();
                return false;
            }
        }
        return true;
    });

    h.run("CHSH-optimal quantum behavior: gamma = sqrt(2) +- 1e-6, CHSH = 2 sqrt(2) +- 1e-9",
          1.0, [](std::string& detail) {
              auto behavior = quantum::born_behavior(quantum::chsh_optimal_model());
              double chsh = evaluate(to_float(builtin_functional("CHSH")), behavior);
              if (!within(chsh, 2.0 * std::sqrt(2.0), 1e-9)) {
                  detail = "CHSH = " + std::to_string(chsh);
                  return false;
              }
              auto result = gamma(behavior);
              detail = "gamma = " + std::to_string(result.gamma);
              return within(result.gamma, std::sqrt(2.0), 1e-6);
          });

    h.run("CH analog interval at upsilon = sqrt(2), upper endpoint attained", 0.0, [](std::string& detail) {
        double s2 = std::sqrt(2.0);
        auto interval = analog_bounds(-1.0, 0.0, s2);
        if (!within(interval.lower, -(1.0 + s2) / 2.0, 1e-12) ||
            !within(interval.upper, (s2 - 1.0) / 2.0, 1e-12)) {
            detail = "interval mismatch";
            return false;
        }
        auto behavior = quantum::born_behavior(quantum::chsh_optimal_model());
        double ch = evaluate(to_float(builtin_functional("CH")), behavior);
        detail = "CH value = " + std::to_string(ch);
        return within(ch, interval.upper, 1e-9);
    });

    h.run("ZG values of 30 seeded projective models per d in {3,4,9} stay in the analog interval",
          60.0, [](std::string& detail) {
              for (int d : {3, 4, 9}) {
                  auto zg = to_float(builtin_functional("ZG", d));
                  double half_width = std::min(std::sqrt(static_cast<double>(d)), 3.0);
                  double lo = (3.0 - half_width) / 2.0 - 1e-6;
                  double hi = (3.0 + half_width) / 2.0 + 1e-6;
                  if (d == 9) {
                      lo = 0.0 - 1e-6;
                      hi = 3.0 + 1e-6;
                  }
                  Scenario sc = make_scenario(2, {2, 2}, {d, d});
                  for (uint64_t seed = 1; seed <= 30; ++seed) {
                      auto behavior =
                          quantum::born_behavior(quantum::random_model(sc, 1000 * d + seed, true));
                      double value = evaluate(zg, behavior);
                      if (value < lo || value > hi) {
                          detail = "d = " + std::to_string(d) + ", seed " + std::to_string(seed) +
                                   ": value " + std::to_string(value);
                          return false;
                      }
                  }
              }
              return true;
          });

    // criteria 8 and 9 share the same seeded behavior suite
    std::mt19937_64 suite_rng(777);
    std::vector<Behavior<Rational>> suite;
    for (int i = 0; i < 100; ++i) suite.push_back(random_ns_behavior(suite_rng));

    h.run("primal-dual agreement and witness consistency on 100 seeded boxes (float, 1e-9)",
          0.0, [&suite](std::string& detail) {
              for (size_t i = 0; i < suite.size(); ++i) {
                  auto behavior = to_float(suite[i]);
                  auto result = gamma(behavior);
                  auto check = verify_certificate(behavior, result.certificate);
                  if (!within(check.ratio, result.gamma, 1e-9)) {
                      detail = "box " + std::to_string(i) + ": ratio vs gamma";
                      return false;
                  }
                  auto tables = marginals_of(result.witness.scenario, result.witness);
                  for (size_t s = 0; s < tables.size(); ++s)
                      for (size_t o = 0; o < tables[s].size(); ++o)
                          if (!within(tables[s][o], behavior.tables[s][o], 1e-9)) {
                              detail = "box " + std::to_string(i) + ": witness marginals";
                              return false;
                          }
              }
              return true;
          });

    h.run("deleting a setting never increases gamma (exact, same suite)",
          0.0, [&suite](std::string& detail) {
              for (size_t i = 0; i < suite.size(); ++i) {
                  Rational full = gamma(suite[i]).gamma;
                  for (int party = 0; party < 2; ++party)
                      for (int setting = 0; setting < 2; ++setting) {
                          Rational reduced = gamma(drop_setting(suite[i], party, setting)).gamma;
                          if (reduced > full) {
                              detail = "box " + std::to_string(i) + ", party " +
                                       std::to_string(party + 1) + ", setting " +
                                       std::to_string(setting + 1);
                              return false;
                          }
                      }
              }
              return true;
          });

    h.run("closed-form bound spot checks and 3x3x3 grid", 0.0, [](std::string& detail) {
        if (!within(quantum::bound_general(2, 2, 2), 3.0, 0.0)) {
            detail = "bound_general(2,2,2)";
            return false;
        }
        for (int d : {2, 3, 5})
            for (int S : {1, 2, 4})
                for (int N : {2, 3, 4}) {
                    double expect = std::pow(2.0 * std::min(d, S) - 1.0, N - 1);
                    if (!within(quantum::bound_general(d, S, N), expect, 1e-12)) {
                        detail = "grid point d=" + std::to_string(d) + " S=" + std::to_string(S) +
                                 " N=" + std::to_string(N);
                        return false;
                    }
                }
        if (!within(quantum::bound_projective(2, 2, 2), std::sqrt(2.0), 1e-15)) {
            detail = "bound_projective(2,2,2)";
            return false;
        }
        if (!within(quantum::bound_projective(9, 2, 2), 3.0, 1e-15)) {
            detail = "bound_projective(9,2,2)";
            return false;
        }
        return true;
    });

    h.run("correlation bound equals brute-force vertex enumeration on 50 random tensors",
          0.0, [](std::string& detail) {
              std::mt19937_64 rng(4242);
              std::uniform_int_distribution<long long> num(-9, 9);
              for (int rep = 0; rep < 50; ++rep) {
                  int parties = 2 + static_cast<int>(rng() % 2);
                  std::vector<int> settings, outcomes;
                  for (int n = 0; n < parties; ++n) {
                      settings.push_back(1 + static_cast<int>(rng() % 3));
                      outcomes.push_back(2);
                  }
                  Scenario sc = make_scenario(parties, settings, outcomes);
                  std::vector<Rational> alpha;
                  for (int64_t s = 0; s < sc.joint_settings_count(); ++s)
                      alpha.push_back(Rational(num(rng), 3));
                  CorrelationFunctional<Rational> corr{sc, alpha};

                  // oracle: every sign vertex of every party
                  int slots = 0;
                  for (int n = 0; n < parties; ++n) slots += settings[n];
                  std::vector<int> signs(slots, 0), sizes(slots, 2);
                  std::vector<int> offset(parties, 0);
                  for (int n = 1; n < parties; ++n) offset[n] = offset[n - 1] + settings[n - 1];
                  Rational best(0);
                  do {
                      Rational value(0);
                      std::vector<int> stuple(parties, 0);
                      for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
                          int parity = 0;
                          for (int n = 0; n < parties; ++n) parity ^= signs[offset[n] + stuple[n]];
                          if (parity)
                              value -= corr.alpha[s];
                          else
                              value += corr.alpha[s];
                          MixedRadix::next(stuple, settings);
                      }
                      if (value.abs() > best) best = value.abs();
                  } while (MixedRadix::next(signs, sizes));

                  if (correlation_bound(corr) != best) {
                      detail = "tensor " + std::to_string(rep);
                      return false;
                  }
              }
              return true;
          });

    std::printf("%d of %d criteria passed\n", h.index - h.failures, h.index);
    return h.failures;
}
