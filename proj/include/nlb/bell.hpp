#pragma once

#include <string>
#include <vector>

#include "nlb/budget.hpp"
#include "nlb/scenario.hpp"

namespace nlb {

// Coefficient family f_(s1..sN)(l1..lN), one dense table per settings tuple,
// same shape and indexing as a Behavior.
template <class T>
struct BellFunctional {
    Scenario scenario;
    std::vector<std::vector<T>> tables;
};

// Bell expression on full correlators: one real coefficient per settings
// tuple, evaluated against products of outcome values in [-1,1].
template <class T>
struct CorrelationFunctional {
    Scenario scenario;
    std::vector<T> alpha;  // [settings_index]
};

template <class T>
struct LhvBounds {
    T b_inf{}, b_sup{};
    DeterministicStrategy argmin, argmax;

    T b_lhv() const {
        T a = scalar_traits<T>::abs(b_inf), b = scalar_traits<T>::abs(b_sup);
        return a > b ? a : b;
    }
};

// sum over settings tuples of <f_(s), P_(s)>
template <class T>
T evaluate(const BellFunctional<T>& f, const Behavior<T>& b);

// value of the functional on a deterministic strategy
template <class T>
T strategy_value(const BellFunctional<T>& f, const DeterministicStrategy& strategy);

// Tight extremal values over all prod_n d_n^(S_n) deterministic strategies,
// with first-found (lexicographically least) witnesses. Throws BudgetExceeded
// when the strategy count exceeds the budget.
template <class T>
LhvBounds<T> lhv_bounds(const BellFunctional<T>& f, int64_t budget = enum_budget());

// max over sign vectors eta_n in {-1,1}^(S_n) of |sum alpha * prod eta|;
// parties 2..N are enumerated, party 1 is resolved analytically.
template <class T>
T correlation_bound(const CorrelationFunctional<T>& corr, int64_t budget = enum_budget());

// f_(s)(l) = alpha_(s) * prod_n value_maps[n][l_n]; maps must lie in [-1,1].
// An empty maps vector selects the default l -> 1-2l (requires d_n = 2).
template <class T>
BellFunctional<T> lift_correlation(const CorrelationFunctional<T>& corr,
                                   const std::vector<std::vector<T>>& value_maps = {});

// Built-in functionals: "CH" (two-party joint-probability form, LHV range
// [-1,0]), "CHSH" (lifted correlation form, LHV range [-2,2]), "ZG" (two-party
// d-outcome form with LHV range [1,2]; pass d >= 2). The stated ranges are
// asserted at construction time.
BellFunctional<Rational> builtin_functional(const std::string& name, int d = 0);

BellFunctional<double> to_float(const BellFunctional<Rational>& f);

template <class T>
BellFunctional<T> scale(const BellFunctional<T>& f, const T& c);

template <class T>
BellFunctional<T> negate(const BellFunctional<T>& f);

}  // namespace nlb
