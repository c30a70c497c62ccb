#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nlb/bell.hpp"
#include "nlb/budget.hpp"
#include "nlb/lp.hpp"
#include "nlb/scenario.hpp"

namespace nlb {

// Raised when a behavior fails nonsignaling (equivalently, when the
// total-variation LP has no feasible signed model).
struct SignalingError : std::runtime_error {
    explicit SignalingError(const std::string& what) : std::runtime_error(what) {}
};

// Normalized real-valued distribution over the global assignment space
// Omega = prod_n Lambda_n^(S_n), indexed by the Scenario slot layout.
template <class T>
struct SignedDistribution {
    Scenario scenario;
    std::vector<T> values;  // length scenario.assignment_count()

    T total() const;
    T total_variation() const;  // sum of absolute values
};

template <class T>
struct GammaResult {
    T gamma{};
    SignedDistribution<T> witness;
    // Dual Bell functional scaled so its enumerated LHV norm is 1 and the
    // achieved value is positive; the achieved value then equals gamma.
    BellFunctional<T> certificate;
    T certificate_value{};  // evaluate(certificate, behavior)
    T certificate_blhv{};   // independently enumerated LHV norm of certificate
    double lp_residual = 0.0;  // float mode: worst constraint violation
};

template <class T>
struct AnalogBounds {
    T lower{}, upper{};
};

template <class T>
struct CertificateReport {
    T value{};
    LhvBounds<T> bounds;
    T ratio{};  // |value| / max(|b_inf|, |b_sup|)
};

// For each settings tuple, the marginal of tau on the outcomes selected by
// that tuple; a Behavior-shaped table family, possibly with negative entries.
template <class T>
std::vector<std::vector<T>> marginals_of(const Scenario& sc, const SignedDistribution<T>& tau);

// minimize sum(u+v) over tau = u - v, u,v >= 0, subject to
// marginals_of(tau) = behavior tables. 2|Omega| variables, one equality row
// per (settings tuple, outcome tuple); the row system is rank-deficient by
// construction. Throws BudgetExceeded when |Omega| exceeds the budget.
template <class T>
lp::LinearProgram<T> tv_lp(const Behavior<T>& behavior, int64_t budget = omega_budget());

// Minimum total variation over signed models reproducing the behavior,
// with the primal witness and the dual Bell-functional certificate.
template <class T>
GammaResult<T> gamma(const Behavior<T>& behavior, const lp::Options& opts = {});

// Recomputes the certificate's LHV norm by strategy enumeration (independent
// of the LP) and the achieved value on the behavior.
template <class T>
CertificateReport<T> verify_certificate(const Behavior<T>& behavior,
                                        const BellFunctional<T>& certificate);

// Interval containing the functional's value on every nonsignaling behavior
// whose nonlocality parameter is at most upsilon:
// [b_inf - (u-1)/2 * w, b_sup + (u-1)/2 * w] with w = b_sup - b_inf.
template <class T>
AnalogBounds<T> analog_bounds(const T& b_inf, const T& b_sup, const T& upsilon);

template <class T>
struct FamilyResult {
    T value{};          // max gamma over the family
    size_t argmax = 0;  // index of the behavior attaining it
    std::vector<T> gammas;
};

template <class T>
FamilyResult<T> upsilon_family(const std::vector<Behavior<T>>& behaviors,
                               const lp::Options& opts = {});

}  // namespace nlb
