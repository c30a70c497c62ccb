#include "nlb/bell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlb/kernels.hpp"

namespace nlb {

template <class T>
T evaluate(const BellFunctional<T>& f, const Behavior<T>& b) {
    if (!(f.scenario == b.scenario))
        throw std::invalid_argument("evaluate: functional/behavior scenario mismatch");
    T acc = scalar_traits<T>::zero();
    for (size_t s = 0; s < f.tables.size(); ++s) {
        if constexpr (scalar_traits<T>::exact) {
            for (size_t o = 0; o < f.tables[s].size(); ++o) acc += f.tables[s][o] * b.tables[s][o];
        } else {
            acc += kern::dot(f.tables[s].data(), b.tables[s].data(), f.tables[s].size());
        }
    }
    return acc;
}

template <class T>
T strategy_value(const BellFunctional<T>& f, const DeterministicStrategy& strategy) {
    const Scenario& sc = f.scenario;
    T acc = scalar_traits<T>::zero();
    std::vector<int> stuple(sc.parties(), 0);
    std::vector<int> otuple(sc.parties());
    for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
        for (int n = 0; n < sc.parties(); ++n) otuple[n] = strategy.outcome(sc, n, stuple[n]);
        acc += f.tables[s][sc.outcome_index(otuple)];
        MixedRadix::next(stuple, sc.settings_list());
    }
    return acc;
}

template <class T>
LhvBounds<T> lhv_bounds(const BellFunctional<T>& f, int64_t budget) {
    const Scenario& sc = f.scenario;
    if (sc.assignment_count() > budget)
        throw BudgetExceeded("lhv_bounds: deterministic strategy count " +
                             std::to_string(sc.assignment_count()) + " exceeds budget " +
                             std::to_string(budget));

    // per settings tuple: the slots read and the radix weights of each party,
    // so a strategy evaluates without re-deriving tuples
    const int64_t ns = sc.joint_settings_count();
    std::vector<std::vector<int>> slots(ns, std::vector<int>(sc.parties()));
    {
        std::vector<int> stuple(sc.parties(), 0);
        for (int64_t s = 0; s < ns; ++s) {
            for (int n = 0; n < sc.parties(); ++n) slots[s][n] = sc.slot(n, stuple[n]);
            MixedRadix::next(stuple, sc.settings_list());
        }
    }
    std::vector<int64_t> weight(sc.parties());
    {
        int64_t w = 1;
        for (int n = sc.parties(); n-- > 0;) {
            weight[n] = w;
            w *= sc.outcomes(n);
        }
    }

    std::vector<int> slot_sizes(sc.slot_count());
    for (int k = 0; k < sc.slot_count(); ++k) slot_sizes[k] = sc.slot_size(k);

    LhvBounds<T> out;
    bool first = true;
    std::vector<int> choices(sc.slot_count(), 0);
    do {
        T value = scalar_traits<T>::zero();
        for (int64_t s = 0; s < ns; ++s) {
            int64_t oidx = 0;
            for (int n = 0; n < sc.parties(); ++n) oidx += weight[n] * choices[slots[s][n]];
            value += f.tables[s][oidx];
        }
        if (first || value > out.b_sup) {
            out.b_sup = value;
            out.argmax.choices = choices;
        }
        if (first || value < out.b_inf) {
            out.b_inf = value;
            out.argmin.choices = choices;
        }
        first = false;
    } while (MixedRadix::next(choices, slot_sizes));
    return out;
}

template <class T>
T correlation_bound(const CorrelationFunctional<T>& corr, int64_t budget) {
    const Scenario& sc = corr.scenario;
    if (static_cast<int64_t>(corr.alpha.size()) != sc.joint_settings_count())
        throw std::invalid_argument("correlation_bound: coefficient count mismatch");
    int rest_slots = 0;
    for (int n = 1; n < sc.parties(); ++n) rest_slots += sc.settings(n);
    if (rest_slots >= 62 || (int64_t{1} << rest_slots) > budget)
        throw BudgetExceeded("correlation_bound: 2^" + std::to_string(rest_slots) +
                             " sign vertices exceed budget");

    const int s1 = sc.settings(0);
    std::vector<T> partial(s1);
    std::vector<int> signs(rest_slots, 0);  // 0 -> +1, 1 -> -1
    std::vector<int> sizes(rest_slots, 2);
    // slot of (party n >= 1, setting s) among the enumerated signs
    std::vector<int> offset(sc.parties(), 0);
    for (int n = 2; n < sc.parties(); ++n) offset[n] = offset[n - 1] + sc.settings(n - 1);

    T best = scalar_traits<T>::zero();
    bool first = true;
    do {
        for (int k = 0; k < s1; ++k) partial[k] = scalar_traits<T>::zero();
        std::vector<int> stuple(sc.parties(), 0);
        for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
            int parity = 0;
            for (int n = 1; n < sc.parties(); ++n) parity ^= signs[offset[n] + stuple[n]];
            if (parity)
                partial[stuple[0]] -= corr.alpha[s];
            else
                partial[stuple[0]] += corr.alpha[s];
            MixedRadix::next(stuple, sc.settings_list());
        }
        // the optimal party-1 signs align with the partial sums
        T value = scalar_traits<T>::zero();
        for (int k = 0; k < s1; ++k) value += scalar_traits<T>::abs(partial[k]);
        if (first || value > best) best = value;
        first = false;
    } while (MixedRadix::next(signs, sizes));
    return best;
}

template <class T>
BellFunctional<T> lift_correlation(const CorrelationFunctional<T>& corr,
                                   const std::vector<std::vector<T>>& value_maps) {
    const Scenario& sc = corr.scenario;
    if (static_cast<int64_t>(corr.alpha.size()) != sc.joint_settings_count())
        throw std::invalid_argument("lift_correlation: coefficient count mismatch");
    std::vector<std::vector<T>> maps = value_maps;
    if (maps.empty()) {
        maps.resize(sc.parties());
        for (int n = 0; n < sc.parties(); ++n) {
            if (sc.outcomes(n) != 2)
                throw std::invalid_argument(
                    "lift_correlation: default value map needs two outcomes per site");
            maps[n] = {scalar_traits<T>::one(), -scalar_traits<T>::one()};
        }
    }
    if (static_cast<int>(maps.size()) != sc.parties())
        throw std::invalid_argument("lift_correlation: one value map per party required");
    const T one = scalar_traits<T>::one();
    for (int n = 0; n < sc.parties(); ++n) {
        if (static_cast<int>(maps[n].size()) != sc.outcomes(n))
            throw std::invalid_argument("lift_correlation: value map length mismatch");
        for (const T& v : maps[n])
            if (scalar_traits<T>::abs(v) > one)
                throw std::invalid_argument("lift_correlation: outcome value outside [-1,1]");
    }
    std::vector<std::vector<T>> tables(sc.joint_settings_count());
    for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
        tables[s].assign(sc.joint_outcomes_count(), scalar_traits<T>::zero());
        std::vector<int> otuple(sc.parties(), 0);
        for (int64_t o = 0; o < sc.joint_outcomes_count(); ++o) {
            T v = corr.alpha[s];
            for (int n = 0; n < sc.parties(); ++n) v *= maps[n][otuple[n]];
            tables[s][o] = v;
            MixedRadix::next(otuple, sc.outcomes_list());
        }
    }
    return BellFunctional<T>{sc, std::move(tables)};
}

namespace {

BellFunctional<Rational> make_ch() {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    Rational zero(0), one(1);
    std::vector<std::vector<Rational>> t(4, std::vector<Rational>(4, zero));
    // joint term on every settings pair, single-party terms attached to (1,1)
    t[0] = {one - one - one, -one, -one, zero};  // P(0,0) - P_A(0) - P_B(0)
    t[1][0] = one;
    t[2][0] = one;
    t[3][0] = -one;
    return BellFunctional<Rational>{sc, std::move(t)};
}

BellFunctional<Rational> make_chsh() {
    Scenario sc = make_scenario(2, {2, 2}, {2, 2});
    Rational one(1);
    CorrelationFunctional<Rational> corr{sc, {one, one, one, -one}};
    return lift_correlation(corr);
}

// Two-setting d-outcome two-party functional with tight LHV range [1,2]:
// the threshold average over cuts t = 1..d-1 of the CH expression on the
// binarized outcomes [l >= t], plus the constant 2. Summing the threshold
// indicator products gives tables in min(a,b), a and b.
BellFunctional<Rational> make_zg(int d) {
    if (d < 2) throw std::invalid_argument("ZG functional needs d >= 2");
    Scenario sc = make_scenario(2, {2, 2}, {d, d});
    const long long den = d - 1;
    std::vector<std::vector<Rational>> t(4, std::vector<Rational>(d * d));
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            long long m = std::min(a, b);
            t[0][a * d + b] = Rational(m - a - b, den) + Rational(2);
            t[1][a * d + b] = Rational(m, den);
            t[2][a * d + b] = Rational(m, den);
            t[3][a * d + b] = Rational(-m, den);
        }
    }
    return BellFunctional<Rational>{sc, std::move(t)};
}

}  // namespace

BellFunctional<Rational> builtin_functional(const std::string& name, int d) {
    BellFunctional<Rational> f;
    Rational lo, hi;
    if (name == "CH") {
        f = make_ch();
        lo = Rational(-1);
        hi = Rational(0);
    } else if (name == "CHSH") {
        f = make_chsh();
        lo = Rational(-2);
        hi = Rational(2);
    } else if (name == "ZG") {
        f = make_zg(d);
        lo = Rational(1);
        hi = Rational(2);
    } else {
        throw std::invalid_argument("unknown builtin functional: " + name);
    }
    LhvBounds<Rational> bounds = lhv_bounds(f);
    if (bounds.b_inf != lo || bounds.b_sup != hi)
        throw std::logic_error("builtin functional failed its LHV range check");
    return f;
}

BellFunctional<double> to_float(const BellFunctional<Rational>& f) {
    std::vector<std::vector<double>> tables(f.tables.size());
    for (size_t s = 0; s < f.tables.size(); ++s) {
        tables[s].reserve(f.tables[s].size());
        for (const auto& v : f.tables[s]) tables[s].push_back(v.to_double());
    }
    return BellFunctional<double>{f.scenario, std::move(tables)};
}

template <class T>
BellFunctional<T> scale(const BellFunctional<T>& f, const T& c) {
    BellFunctional<T> out = f;
    for (auto& tab : out.tables)
        for (auto& v : tab) v *= c;
    return out;
}

template <class T>
BellFunctional<T> negate(const BellFunctional<T>& f) {
    BellFunctional<T> out = f;
    for (auto& tab : out.tables)
        for (auto& v : tab) v = -v;
    return out;
}

#define NLB_INSTANTIATE(T)                                                                   \
    template T evaluate<T>(const BellFunctional<T>&, const Behavior<T>&);                    \
    template T strategy_value<T>(const BellFunctional<T>&, const DeterministicStrategy&);    \
    template LhvBounds<T> lhv_bounds<T>(const BellFunctional<T>&, int64_t);                  \
    template T correlation_bound<T>(const CorrelationFunctional<T>&, int64_t);               \
    template BellFunctional<T> lift_correlation<T>(const CorrelationFunctional<T>&,          \
                                                   const std::vector<std::vector<T>>&);      \
    template BellFunctional<T> scale<T>(const BellFunctional<T>&, const T&);                 \
    template BellFunctional<T> negate<T>(const BellFunctional<T>&);

NLB_INSTANTIATE(Rational)
NLB_INSTANTIATE(double)

#undef NLB_INSTANTIATE

}  // namespace nlb
