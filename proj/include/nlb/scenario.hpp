#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlb/rational.hpp"

namespace nlb {

// Multipartite correlation scenario: N parties, S_n measurement settings and
// d_n outcomes (labelled 0..d_n-1) at the n-th site. Settings are 1-based in
// user-facing interfaces and 0-based internally.
class Scenario {
public:
    Scenario() : Scenario(1, {1}, {2}) {}  // degenerate single-coin default
    Scenario(int parties, std::vector<int> settings, std::vector<int> outcomes);

    int parties() const { return parties_; }
    int settings(int party) const { return settings_[party]; }
    int outcomes(int party) const { return outcomes_[party]; }
    const std::vector<int>& settings_list() const { return settings_; }
    const std::vector<int>& outcomes_list() const { return outcomes_; }

    // number of joint measurements, prod S_n
    int64_t joint_settings_count() const { return joint_settings_; }
    // joint outcomes per measurement, prod d_n
    int64_t joint_outcomes_count() const { return joint_outcomes_; }
    // size of the global assignment space, prod d_n^(S_n); saturates at INT64_MAX
    int64_t assignment_count() const { return assignments_; }

    // Lexicographic indexing, party 1 slowest.
    int64_t settings_index(const std::vector<int>& tuple) const;
    std::vector<int> settings_tuple(int64_t index) const;
    int64_t outcome_index(const std::vector<int>& tuple) const;
    std::vector<int> outcome_tuple(int64_t index) const;

    // Flat (party, setting) slot layout shared by deterministic strategies
    // and global assignments: party-major, setting-minor.
    int slot_count() const { return static_cast<int>(slot_party_.size()); }
    int slot(int party, int setting) const { return slot_offset_[party] + setting; }
    int slot_party(int slot) const { return slot_party_[slot]; }
    int slot_setting(int slot) const { return slot_setting_[slot]; }
    int slot_size(int slot) const { return outcomes_[slot_party_[slot]]; }

    friend bool operator==(const Scenario& a, const Scenario& b) {
        return a.settings_ == b.settings_ && a.outcomes_ == b.outcomes_;
    }

private:
    int parties_;
    std::vector<int> settings_, outcomes_;
    int64_t joint_settings_, joint_outcomes_, assignments_;
    std::vector<int> slot_offset_, slot_party_, slot_setting_;
};

Scenario make_scenario(int parties, std::vector<int> settings, std::vector<int> outcomes);

// One outcome fixed for every (party, setting) pair.
struct DeterministicStrategy {
    std::vector<int> choices;  // indexed by Scenario slot

    int outcome(const Scenario& sc, int party, int setting) const {
        return choices[sc.slot(party, setting)];
    }
};

// Full family of joint outcome distributions, one dense table per settings
// tuple. T is Rational (exact mode) or double (float mode). Tables are in
// lexicographic order on both indices, party 1 slowest.
template <class T>
struct Behavior {
    Scenario scenario;
    std::vector<std::vector<T>> tables;  // [settings_index][outcome_index]

    const T& entry(int64_t settings_idx, int64_t outcome_idx) const {
        return tables[settings_idx][outcome_idx];
    }
};

template <class T>
struct NonsignalingReport {
    bool passed = true;
    T worst_deviation{};
    // populated when failed: marginals of `party` over the other sites differ
    // between its settings setting_a and setting_b (0-based), with the other
    // parties' settings fixed at `context` (0-based, entry for `party` unused)
    int party = -1;
    int setting_a = -1, setting_b = -1;
    std::vector<int> context;
};

// Checks shape, entrywise nonnegativity and per-table normalization.
// Exact mode ignores the tolerance and requires exact equality.
template <class T>
Behavior<T> validate_behavior(const Scenario& sc, std::vector<std::vector<T>> tables,
                              double tolerance = 1e-10);

// Marginal distribution of `parties` (strictly increasing, nonempty) under the
// given settings tuple (0-based), in lexicographic order on the kept parties.
template <class T>
std::vector<T> marginal(const Behavior<T>& b, const std::vector<int>& settings_tuple,
                        const std::vector<int>& parties);

// Marginal independence of every single party's complement from that party's
// setting, quantified over all other-party setting choices.
template <class T>
NonsignalingReport<T> is_nonsignaling(const Behavior<T>& b, double tolerance = 1e-10);

template <class T>
Behavior<T> deterministic_behavior(const Scenario& sc, const DeterministicStrategy& strategy);

template <class T>
Behavior<T> mix(const std::vector<Behavior<T>>& behaviors, const std::vector<T>& weights,
                double tolerance = 1e-10);

// The extremal nonsignaling two-party box: P(a,b | x,y) = 1/2 when
// a xor b = x and y, else 0, with x,y in {0,1} mapped from settings {1,2}.
Behavior<Rational> pr_box();

template <class T>
Behavior<T> uniform_behavior(const Scenario& sc);

// Sub-behavior with one setting of one party removed (0-based indices);
// remaining settings keep their relative order.
template <class T>
Behavior<T> drop_setting(const Behavior<T>& b, int party, int setting);

Behavior<double> to_float(const Behavior<Rational>& b);

// Odometer over mixed-radix tuples; `next` returns false after the last one.
struct MixedRadix {
    std::vector<int> sizes;
    static bool next(std::vector<int>& tuple, const std::vector<int>& sizes) {
        for (size_t i = sizes.size(); i-- > 0;) {
            if (++tuple[i] < sizes[i]) return true;
            tuple[i] = 0;
        }
        return false;
    }
};

}  // namespace nlb
