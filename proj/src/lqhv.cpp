#include "nlb/lqhv.hpp"

#include <cmath>
#include <string>

namespace nlb {

template <class T>
T SignedDistribution<T>::total() const {
    T acc = scalar_traits<T>::zero();
    for (const auto& v : values) acc += v;
    return acc;
}

template <class T>
T SignedDistribution<T>::total_variation() const {
    T acc = scalar_traits<T>::zero();
    for (const auto& v : values) acc += scalar_traits<T>::abs(v);
    return acc;
}

namespace {

// outcome index under each settings tuple for one assignment
template <class T>
std::vector<int64_t> outcome_indices(const Scenario& sc, const std::vector<int>& choices) {
    std::vector<int64_t> out(sc.joint_settings_count());
    std::vector<int> stuple(sc.parties(), 0);
    std::vector<int> otuple(sc.parties());
    for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
        for (int n = 0; n < sc.parties(); ++n) otuple[n] = choices[sc.slot(n, stuple[n])];
        out[s] = sc.outcome_index(otuple);
        MixedRadix::next(stuple, sc.settings_list());
    }
    return out;
}

}  // namespace

template <class T>
std::vector<std::vector<T>> marginals_of(const Scenario& sc, const SignedDistribution<T>& tau) {
    if (static_cast<int64_t>(tau.values.size()) != sc.assignment_count())
        throw std::invalid_argument("marginals_of: distribution size does not match scenario");
    std::vector<std::vector<T>> tables(
        sc.joint_settings_count(),
        std::vector<T>(sc.joint_outcomes_count(), scalar_traits<T>::zero()));
    std::vector<int> slot_sizes(sc.slot_count());
    for (int k = 0; k < sc.slot_count(); ++k) slot_sizes[k] = sc.slot_size(k);
    std::vector<int> choices(sc.slot_count(), 0);
    int64_t w = 0;
    do {
        const T& v = tau.values[w++];
        bool zero;
        if constexpr (scalar_traits<T>::exact)
            zero = v.is_zero();
        else
            zero = v == 0.0;
        if (!zero) {
            auto idx = outcome_indices<T>(sc, choices);
            for (int64_t s = 0; s < sc.joint_settings_count(); ++s) tables[s][idx[s]] += v;
        }
    } while (MixedRadix::next(choices, slot_sizes));
    return tables;
}

template <class T>
lp::LinearProgram<T> tv_lp(const Behavior<T>& behavior, int64_t budget) {
    const Scenario& sc = behavior.scenario;
    const int64_t omega = sc.assignment_count();
    if (omega > budget)
        throw BudgetExceeded("tv_lp: assignment space size " + std::to_string(omega) +
                             " exceeds budget " + std::to_string(budget));
    const int64_t ns = sc.joint_settings_count();
    const int64_t no = sc.joint_outcomes_count();
    lp::LinearProgram<T> prog;
    prog.c.assign(2 * omega, scalar_traits<T>::one());
    prog.rows.assign(ns * no, std::vector<T>(2 * omega, scalar_traits<T>::zero()));
    prog.rhs.resize(ns * no);
    for (int64_t s = 0; s < ns; ++s)
        for (int64_t o = 0; o < no; ++o) prog.rhs[s * no + o] = behavior.tables[s][o];

    std::vector<int> slot_sizes(sc.slot_count());
    for (int k = 0; k < sc.slot_count(); ++k) slot_sizes[k] = sc.slot_size(k);
    std::vector<int> choices(sc.slot_count(), 0);
    int64_t w = 0;
    const T one = scalar_traits<T>::one();
    do {
        auto idx = outcome_indices<T>(sc, choices);
        for (int64_t s = 0; s < ns; ++s) {
            auto& row = prog.rows[s * no + idx[s]];
            row[w] = one;           // u_w
            row[omega + w] = -one;  // v_w
        }
        ++w;
    } while (MixedRadix::next(choices, slot_sizes));
    return prog;
}

template <class T>
GammaResult<T> gamma(const Behavior<T>& behavior, const lp::Options& opts) {
    const Scenario& sc = behavior.scenario;
    auto ns_report = is_nonsignaling(behavior);
    if (!ns_report.passed)
        throw SignalingError("gamma: behavior is signaling (party " +
                             std::to_string(ns_report.party + 1) + ")");

    lp::LinearProgram<T> prog = tv_lp(behavior);
    lp::Solution<T> sol = lp::solve(prog, opts);
    if (sol.status == lp::Status::infeasible)
        throw SignalingError("gamma: no signed model reproduces the behavior (signaling)");
    if (sol.status != lp::Status::optimal)
        throw lp::SolveError("gamma: total-variation LP did not reach an optimum");
    if constexpr (!scalar_traits<T>::exact) {
        if (!sol.stable)
            throw lp::SolveError("gamma: float LP numerically unstable, residual " +
                                 std::to_string(sol.max_residual));
    }

    const int64_t omega = sc.assignment_count();
    GammaResult<T> out;
    out.gamma = sol.objective;
    out.lp_residual = sol.max_residual;
    out.witness.scenario = sc;
    out.witness.values.resize(omega);
    for (int64_t w = 0; w < omega; ++w) out.witness.values[w] = sol.x[w] - sol.x[omega + w];

    // dual row values, one table entry per (settings, outcome) row
    const int64_t no = sc.joint_outcomes_count();
    BellFunctional<T> cert{sc, {}};
    cert.tables.resize(sc.joint_settings_count());
    for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
        cert.tables[s].resize(no);
        for (int64_t o = 0; o < no; ++o) cert.tables[s][o] = sol.y[s * no + o];
    }
    // normalize by the independently enumerated LHV norm
    LhvBounds<T> raw_bounds = lhv_bounds(cert);
    T blhv = raw_bounds.b_lhv();
    bool degenerate;
    if constexpr (scalar_traits<T>::exact)
        degenerate = blhv.is_zero();
    else
        degenerate = std::fabs(blhv) < 1e-14;
    if (degenerate)
        throw lp::SolveError("gamma: degenerate dual certificate");
    if constexpr (scalar_traits<T>::exact)
        cert = scale(cert, blhv.reciprocal());
    else
        cert = scale(cert, 1.0 / blhv);
    out.certificate = cert;
    out.certificate_value = evaluate(cert, behavior);
    out.certificate_blhv = lhv_bounds(cert).b_lhv();
    return out;
}

template <class T>
CertificateReport<T> verify_certificate(const Behavior<T>& behavior,
                                        const BellFunctional<T>& certificate) {
    CertificateReport<T> rep;
    rep.bounds = lhv_bounds(certificate);
    rep.value = evaluate(certificate, behavior);
    T blhv = rep.bounds.b_lhv();
    if constexpr (scalar_traits<T>::exact) {
        if (blhv.is_zero()) throw std::invalid_argument("verify_certificate: zero functional");
        rep.ratio = scalar_traits<T>::abs(rep.value) / blhv;
    } else {
        if (blhv == 0.0) throw std::invalid_argument("verify_certificate: zero functional");
        rep.ratio = std::fabs(rep.value) / blhv;
    }
    return rep;
}

template <class T>
AnalogBounds<T> analog_bounds(const T& b_inf, const T& b_sup, const T& upsilon) {
    if (b_sup < b_inf) throw std::invalid_argument("analog_bounds: b_inf must not exceed b_sup");
    if (upsilon < scalar_traits<T>::one())
        throw std::invalid_argument("analog_bounds: upsilon must be >= 1");
    T width = b_sup - b_inf;
    T half = scalar_traits<T>::from_ratio(1, 2);
    T margin = (upsilon - scalar_traits<T>::one()) * half * width;
    return AnalogBounds<T>{b_inf - margin, b_sup + margin};
}

template <class T>
FamilyResult<T> upsilon_family(const std::vector<Behavior<T>>& behaviors,
                               const lp::Options& opts) {
    if (behaviors.empty()) throw std::invalid_argument("upsilon_family: empty family");
    FamilyResult<T> out;
    for (size_t i = 0; i < behaviors.size(); ++i) {
        GammaResult<T> g = gamma(behaviors[i], opts);
        out.gammas.push_back(g.gamma);
        if (i == 0 || g.gamma > out.value) {
            out.value = g.gamma;
            out.argmax = i;
        }
    }
    return out;
}

#define NLB_INSTANTIATE(T)                                                                  \
    template struct SignedDistribution<T>;                                                  \
    template std::vector<std::vector<T>> marginals_of<T>(const Scenario&,                   \
                                                         const SignedDistribution<T>&);    \
    template lp::LinearProgram<T> tv_lp<T>(const Behavior<T>&, int64_t);                    \
    template GammaResult<T> gamma<T>(const Behavior<T>&, const lp::Options&);               \
    template CertificateReport<T> verify_certificate<T>(const Behavior<T>&,                 \
                                                        const BellFunctional<T>&);         \
    template AnalogBounds<T> analog_bounds<T>(const T&, const T&, const T&);                \
    template FamilyResult<T> upsilon_family<T>(const std::vector<Behavior<T>>&,             \
                                               const lp::Options&);

NLB_INSTANTIATE(Rational)
NLB_INSTANTIATE(double)

#undef NLB_INSTANTIATE

}  // namespace nlb
