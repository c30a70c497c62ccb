#include "nlb/scenario.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlb {

Scenario::Scenario(int parties, std::vector<int> settings, std::vector<int> outcomes)
    : parties_(parties), settings_(std::move(settings)), outcomes_(std::move(outcomes)) {
    if (parties_ < 1) throw std::invalid_argument("scenario: need at least one party");
    if (static_cast<int>(settings_.size()) != parties_ ||
        static_cast<int>(outcomes_.size()) != parties_)
        throw std::invalid_argument("scenario: settings/outcomes list length must equal party count");
    for (int n = 0; n < parties_; ++n) {
        if (settings_[n] < 1) throw std::invalid_argument("scenario: every party needs S_n >= 1");
        if (outcomes_[n] < 2) throw std::invalid_argument("scenario: every party needs d_n >= 2");
    }
    joint_settings_ = 1;
    joint_outcomes_ = 1;
    for (int n = 0; n < parties_; ++n) {
        joint_settings_ *= settings_[n];
        joint_outcomes_ *= outcomes_[n];
        if (joint_settings_ > (int64_t{1} << 40) || joint_outcomes_ > (int64_t{1} << 40))
            throw std::invalid_argument("scenario: table sizes overflow");
    }
    assignments_ = 1;
    slot_offset_.resize(parties_);
    for (int n = 0; n < parties_; ++n) {
        slot_offset_[n] = static_cast<int>(slot_party_.size());
        for (int s = 0; s < settings_[n]; ++s) {
            slot_party_.push_back(n);
            slot_setting_.push_back(s);
            if (assignments_ <= std::numeric_limits<int64_t>::max() / outcomes_[n])
                assignments_ *= outcomes_[n];
            else
                assignments_ = std::numeric_limits<int64_t>::max();
        }
    }
}

Scenario make_scenario(int parties, std::vector<int> settings, std::vector<int> outcomes) {
    return Scenario(parties, std::move(settings), std::move(outcomes));
}

int64_t Scenario::settings_index(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != parties_)
        throw std::invalid_argument("settings tuple has wrong length");
    int64_t idx = 0;
    for (int n = 0; n < parties_; ++n) {
        if (tuple[n] < 0 || tuple[n] >= settings_[n])
            throw std::invalid_argument("settings tuple entry out of range");
        idx = idx * settings_[n] + tuple[n];
    }
    return idx;
}

std::vector<int> Scenario::settings_tuple(int64_t index) const {
    std::vector<int> t(parties_);
    for (int n = parties_; n-- > 0;) {
        t[n] = static_cast<int>(index % settings_[n]);
        index /= settings_[n];
    }
    return t;
}

int64_t Scenario::outcome_index(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != parties_)
        throw std::invalid_argument("outcome tuple has wrong length");
    int64_t idx = 0;
    for (int n = 0; n < parties_; ++n) {
        if (tuple[n] < 0 || tuple[n] >= outcomes_[n])
            throw std::invalid_argument("outcome tuple entry out of range");
        idx = idx * outcomes_[n] + tuple[n];
    }
    return idx;
}

std::vector<int> Scenario::outcome_tuple(int64_t index) const {
    std::vector<int> t(parties_);
    for (int n = parties_; n-- > 0;) {
        t[n] = static_cast<int>(index % outcomes_[n]);
        index /= outcomes_[n];
    }
    return t;
}

namespace {

template <class T>
bool nonneg_within(const T& v, double tol) {
    if constexpr (scalar_traits<T>::exact)
        return v.sign() >= 0;
    else
        return v >= -tol;
}

template <class T>
bool equal_within(const T& a, const T& b, double tol) {
    if constexpr (scalar_traits<T>::exact)
        return a == b;
    else
        return std::fabs(a - b) <= tol;
}

}  // namespace

template <class T>
Behavior<T> validate_behavior(const Scenario& sc, std::vector<std::vector<T>> tables,
                              double tolerance) {
    if (static_cast<int64_t>(tables.size()) != sc.joint_settings_count())
        throw std::invalid_argument("behavior: expected one table per settings tuple");
    const T one = scalar_traits<T>::one();
    for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
        const auto& tab = tables[s];
        if (static_cast<int64_t>(tab.size()) != sc.joint_outcomes_count())
            throw std::invalid_argument("behavior: table has wrong number of entries");
        T total = scalar_traits<T>::zero();
        for (const auto& p : tab) {
            if (!nonneg_within(p, tolerance))
                throw std::invalid_argument("behavior: negative probability entry");
            total += p;
        }
        if (!equal_within(total, one, tolerance))
            throw std::invalid_argument("behavior: table does not sum to 1");
    }
    return Behavior<T>{sc, std::move(tables)};
}

template <class T>
std::vector<T> marginal(const Behavior<T>& b, const std::vector<int>& settings_tuple,
                        const std::vector<int>& parties) {
    const Scenario& sc = b.scenario;
    if (parties.empty()) throw std::invalid_argument("marginal: empty party subset");
    for (size_t i = 0; i < parties.size(); ++i) {
        if (parties[i] < 0 || parties[i] >= sc.parties())
            throw std::invalid_argument("marginal: party out of range");
        if (i > 0 && parties[i] <= parties[i - 1])
            throw std::invalid_argument("marginal: party subset must be strictly increasing");
    }
    int64_t sidx = sc.settings_index(settings_tuple);
    int64_t size = 1;
    for (int p : parties) size *= sc.outcomes(p);
    std::vector<T> out(size, scalar_traits<T>::zero());
    std::vector<int> tuple(sc.parties(), 0);
    for (int64_t o = 0; o < sc.joint_outcomes_count(); ++o) {
        int64_t key = 0;
        for (int p : parties) key = key * sc.outcomes(p) + tuple[p];
        out[key] += b.tables[sidx][o];
        MixedRadix::next(tuple, sc.outcomes_list());
    }
    return out;
}

template <class T>
NonsignalingReport<T> is_nonsignaling(const Behavior<T>& b, double tolerance) {
    const Scenario& sc = b.scenario;
    NonsignalingReport<T> report;
    report.worst_deviation = scalar_traits<T>::zero();
    if (sc.parties() == 1) return report;

    std::vector<int> others;
    for (int n = 0; n < sc.parties(); ++n) others.push_back(n);

    for (int n = 0; n < sc.parties(); ++n) {
        if (sc.settings(n) < 2) continue;
        std::vector<int> rest = others;
        rest.erase(rest.begin() + n);
        // iterate over the other parties' settings
        std::vector<int> rest_sizes;
        for (int m : rest) rest_sizes.push_back(sc.settings(m));
        std::vector<int> rest_tuple(rest.size(), 0);
        do {
            std::vector<int> full(sc.parties(), 0);
            for (size_t i = 0; i < rest.size(); ++i) full[rest[i]] = rest_tuple[i];
            full[n] = 0;
            std::vector<T> ref = marginal(b, full, rest);
            for (int s = 1; s < sc.settings(n); ++s) {
                full[n] = s;
                std::vector<T> cur = marginal(b, full, rest);
                for (size_t k = 0; k < cur.size(); ++k) {
                    T dev = scalar_traits<T>::abs(cur[k] - ref[k]);
                    if (dev > report.worst_deviation) {
                        report.worst_deviation = dev;
                        report.party = n;
                        report.setting_a = 0;
                        report.setting_b = s;
                        report.context = full;
                    }
                }
            }
        } while (MixedRadix::next(rest_tuple, rest_sizes));
    }

    if constexpr (scalar_traits<T>::exact)
        report.passed = report.worst_deviation.is_zero();
    else
        report.passed = report.worst_deviation <= tolerance;
    if (report.passed) {
        report.party = -1;
        report.setting_a = report.setting_b = -1;
        report.context.clear();
    }
    return report;
}

template <class T>
Behavior<T> deterministic_behavior(const Scenario& sc, const DeterministicStrategy& strategy) {
    if (static_cast<int>(strategy.choices.size()) != sc.slot_count())
        throw std::invalid_argument("deterministic strategy has wrong length");
    for (int k = 0; k < sc.slot_count(); ++k)
        if (strategy.choices[k] < 0 || strategy.choices[k] >= sc.slot_size(k))
            throw std::invalid_argument("deterministic strategy outcome out of range");
    std::vector<std::vector<T>> tables(
        sc.joint_settings_count(),
        std::vector<T>(sc.joint_outcomes_count(), scalar_traits<T>::zero()));
    std::vector<int> stuple(sc.parties(), 0);
    for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
        std::vector<int> otuple(sc.parties());
        for (int n = 0; n < sc.parties(); ++n) otuple[n] = strategy.outcome(sc, n, stuple[n]);
        tables[s][sc.outcome_index(otuple)] = scalar_traits<T>::one();
        MixedRadix::next(stuple, sc.settings_list());
    }
    return Behavior<T>{sc, std::move(tables)};
}

template <class T>
Behavior<T> mix(const std::vector<Behavior<T>>& behaviors, const std::vector<T>& weights,
                double tolerance) {
    if (behaviors.empty() || behaviors.size() != weights.size())
        throw std::invalid_argument("mix: need matching nonempty behavior/weight lists");
    const Scenario& sc = behaviors[0].scenario;
    T total = scalar_traits<T>::zero();
    for (const auto& w : weights) {
        if (!nonneg_within(w, tolerance)) throw std::invalid_argument("mix: negative weight");
        total += w;
    }
    if (!equal_within(total, scalar_traits<T>::one(), tolerance))
        throw std::invalid_argument("mix: weights must sum to 1");
    for (const auto& b : behaviors)
        if (!(b.scenario == sc)) throw std::invalid_argument("mix: scenario mismatch");
    std::vector<std::vector<T>> tables(
        sc.joint_settings_count(),
        std::vector<T>(sc.joint_outcomes_count(), scalar_traits<T>::zero()));
    for (size_t i = 0; i < behaviors.size(); ++i)
        for (int64_t s = 0; s < sc.joint_settings_count(); ++s)
            for (int64_t o = 0; o < sc.joint_outcomes_count(); ++o)
                tables[s][o] += weights[i] * behaviors[i].tables[s][o];
    return Behavior<T>{sc, std::move(tables)};
}

Behavior<Rational> pr_box() {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    Rational half(1, 2), zero(0);
    std::vector<std::vector<Rational>> tables(4, std::vector<Rational>(4, zero));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y)) tables[x * 2 + y][a * 2 + b] = half;
    return Behavior<Rational>{sc, std::move(tables)};
}

template <class T>
Behavior<T> uniform_behavior(const Scenario& sc) {
    T p = scalar_traits<T>::from_ratio(1, sc.joint_outcomes_count());
    std::vector<std::vector<T>> tables(sc.joint_settings_count(),
                                       std::vector<T>(sc.joint_outcomes_count(), p));
    return Behavior<T>{sc, std::move(tables)};
}

template <class T>
Behavior<T> drop_setting(const Behavior<T>& b, int party, int setting) {
    const Scenario& sc = b.scenario;
    if (party < 0 || party >= sc.parties()) throw std::invalid_argument("drop_setting: bad party");
    if (setting < 0 || setting >= sc.settings(party))
        throw std::invalid_argument("drop_setting: bad setting");
    if (sc.settings(party) == 1)
        throw std::invalid_argument("drop_setting: party has a single setting");
    std::vector<int> new_settings = sc.settings_list();
    new_settings[party] -= 1;
    Scenario reduced(sc.parties(), new_settings, sc.outcomes_list());
    std::vector<std::vector<T>> tables(reduced.joint_settings_count());
    std::vector<int> tuple(reduced.parties(), 0);
    for (int64_t s = 0; s < reduced.joint_settings_count(); ++s) {
        std::vector<int> orig = tuple;
        if (orig[party] >= setting) orig[party] += 1;
        tables[s] = b.tables[sc.settings_index(orig)];
        MixedRadix::next(tuple, new_settings);
    }
    return Behavior<T>{reduced, std::move(tables)};
}

Behavior<double> to_float(const Behavior<Rational>& b) {
    std::vector<std::vector<double>> tables(b.tables.size());
    for (size_t s = 0; s < b.tables.size(); ++s) {
        tables[s].reserve(b.tables[s].size());
        for (const auto& v : b.tables[s]) tables[s].push_back(v.to_double());
    }
    return Behavior<double>{b.scenario, std::move(tables)};
}

#define NLB_INSTANTIATE(T)                                                                       \
    template Behavior<T> validate_behavior<T>(const Scenario&, std::vector<std::vector<T>>,      \
                                              double);                                          \
    template std::vector<T> marginal<T>(const Behavior<T>&, const std::vector<int>&,             \
                                        const std::vector<int>&);                               \
    template NonsignalingReport<T> is_nonsignaling<T>(const Behavior<T>&, double);               \
    template Behavior<T> deterministic_behavior<T>(const Scenario&, const DeterministicStrategy&); \
    template Behavior<T> mix<T>(const std::vector<Behavior<T>>&, const std::vector<T>&, double); \
    template Behavior<T> uniform_behavior<T>(const Scenario&);                                   \
    template Behavior<T> drop_setting<T>(const Behavior<T>&, int, int);

NLB_INSTANTIATE(Rational)
NLB_INSTANTIATE(double)

#undef NLB_INSTANTIATE

}  // namespace nlb
