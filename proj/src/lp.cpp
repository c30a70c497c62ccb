#include "nlb/lp.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "nlb/kernels.hpp"

namespace nlb::lp {

namespace {

template <class T>
constexpr bool kExact = scalar_traits<T>::exact;

template <class T>
bool pos(const T& v, double tol) {
    if constexpr (kExact<T>)
        return v.sign() > 0;
    else
        return v > tol;
}

template <class T>
bool neg(const T& v, double tol) {
    if constexpr (kExact<T>)
        return v.sign() < 0;
    else
        return v < -tol;
}

// One simplex tableau over the (possibly sign-flipped, row-filtered) system.
template <class T>
struct Tableau {
    int nrows, nstruct, ncols;  // ncols = nstruct + nrows artificials
    std::vector<std::vector<T>> t;
    std::vector<T> rhs;
    std::vector<T> red;  // reduced costs c_j - y.A_j for the active cost vector
    std::vector<int> basis;
    double tol;

    int art(int i) const { return nstruct + i; }

    void pivot(int pr, int pc) {
        T inv;
        if constexpr (kExact<T>)
            inv = t[pr][pc].reciprocal();
        else
            inv = 1.0 / t[pr][pc];
        for (auto& v : t[pr]) v *= inv;
        rhs[pr] *= inv;
        t[pr][pc] = scalar_traits<T>::one();
        for (int i = 0; i < nrows; ++i) {
            if (i == pr) continue;
            T f = t[i][pc];
            if constexpr (kExact<T>) {
                if (f.is_zero()) continue;
                for (int j = 0; j < ncols; ++j)
                    if (!t[pr][j].is_zero()) t[i][j] -= f * t[pr][j];
                rhs[i] -= f * rhs[pr];
            } else {
                if (f == 0.0) continue;
                kern::axpy(-f, t[pr].data(), t[i].data(), ncols);
                rhs[i] -= f * rhs[pr];
                t[i][pc] = 0.0;
            }
        }
        T f = red[pc];
        bool skip;
        if constexpr (kExact<T>)
            skip = f.is_zero();
        else
            skip = f == 0.0;
        if (!skip) {
            if constexpr (kExact<T>) {
                for (int j = 0; j < ncols; ++j)
                    if (!t[pr][j].is_zero()) red[j] -= f * t[pr][j];
            } else {
                kern::axpy(-f, t[pr].data(), red.data(), ncols);
                red[pc] = 0.0;
            }
        }
        basis[pr] = pc;
    }

    // Bland: least-index negative reduced cost among allowed columns.
    int entering_bland(bool allow_artificial) const {
        int limit = allow_artificial ? ncols : nstruct;
        for (int j = 0; j < limit; ++j)
            if (neg(red[j], tol)) return j;
        return -1;
    }

    // Dantzig: most negative reduced cost.
    int entering_dantzig(bool allow_artificial) const {
        int limit = allow_artificial ? ncols : nstruct;
        int best = -1;
        for (int j = 0; j < limit; ++j)
            if (neg(red[j], tol) && (best < 0 || red[j] < red[best])) best = j;
        return best;
    }

    // Min-ratio row for column pc; Bland tie-break on basic column index in
    // exact mode, largest pivot magnitude in float mode. -1 when unbounded.
    int leaving(int pc) const {
        int lr = -1;
        for (int i = 0; i < nrows; ++i) {
            if (!pos(t[i][pc], tol)) continue;
            if (lr < 0) {
                lr = i;
                continue;
            }
            if constexpr (kExact<T>) {
                int cmp = Rational::compare(rhs[i] * t[lr][pc], rhs[lr] * t[i][pc]);
                if (cmp < 0 || (cmp == 0 && basis[i] < basis[lr])) lr = i;
            } else {
                double ri = rhs[i] / t[i][pc], rl = rhs[lr] / t[lr][pc];
                if (ri < rl - tol || (std::fabs(ri - rl) <= tol && t[i][pc] > t[lr][pc])) lr = i;
            }
        }
        return lr;
    }
};

}  // namespace

template <class T>
Solution<T> solve(const LinearProgram<T>& prog, const Options& opts) {
    const int V = static_cast<int>(prog.c.size());
    const int R = static_cast<int>(prog.rows.size());
    if (static_cast<int>(prog.rhs.size()) != R)
        throw std::invalid_argument("lp: rhs length does not match row count");
    for (const auto& row : prog.rows)
        if (static_cast<int>(row.size()) != V)
            throw std::invalid_argument("lp: row length does not match objective length");

    const double tol = opts.tolerance;
    Solution<T> sol;
    sol.y.assign(R, scalar_traits<T>::zero());

    // Select a maximal independent subset of rows. Rows are reduced against
    // previously accepted pivot rows on a scratch copy; a row that reduces to
    // zero coefficients is redundant when its rhs residual also vanishes and
    // makes the system infeasible otherwise.
    std::vector<int> retained;
    if (opts.preprocess) {
        std::vector<std::vector<T>> work;   // reduced accepted rows
        std::vector<T> work_rhs;
        std::vector<int> pivot_col;
        for (int r = 0; r < R; ++r) {
            std::vector<T> row = prog.rows[r];
            T rhs = prog.rhs[r];
            for (size_t k = 0; k < work.size(); ++k) {
                T f = row[pivot_col[k]];
                bool zero;
                if constexpr (kExact<T>)
                    zero = f.is_zero();
                else
                    zero = f == 0.0;
                if (zero) continue;
                for (int j = 0; j < V; ++j) row[j] -= f * work[k][j];
                rhs -= f * work_rhs[k];
                row[pivot_col[k]] = scalar_traits<T>::zero();
            }
            int pc = -1;
            if constexpr (kExact<T>) {
                for (int j = 0; j < V; ++j)
                    if (!row[j].is_zero()) {
                        pc = j;
                        break;
                    }
            } else {
                double best = tol;
                for (int j = 0; j < V; ++j)
                    if (std::fabs(row[j]) > best) {
                        best = std::fabs(row[j]);
                        pc = j;
                    }
            }
            if (pc < 0) {
                bool inconsistent;
                if constexpr (kExact<T>)
                    inconsistent = !rhs.is_zero();
                else
                    inconsistent = std::fabs(rhs) > 10 * tol;
                if (inconsistent) {
                    sol.status = Status::infeasible;
                    return sol;
                }
                continue;  // redundant row, dual stays 0
            }
            T inv;
            if constexpr (kExact<T>)
                inv = row[pc].reciprocal();
            else
                inv = 1.0 / row[pc];
            for (int j = 0; j < V; ++j) row[j] *= inv;
            rhs *= inv;
            row[pc] = scalar_traits<T>::one();
            work.push_back(std::move(row));
            work_rhs.push_back(rhs);
            pivot_col.push_back(pc);
            retained.push_back(r);
        }
    } else {
        for (int r = 0; r < R; ++r) retained.push_back(r);
    }
    sol.retained_rows = retained;
    const int m = static_cast<int>(retained.size());

    // Build the solver system from the retained original rows, flipping signs
    // so every rhs is nonnegative.
    std::vector<int> row_sign(m, 1);
    Tableau<T> tb;
    tb.nrows = m;
    tb.nstruct = V;
    tb.ncols = V + m;
    tb.tol = tol;
    tb.t.assign(m, std::vector<T>(tb.ncols, scalar_traits<T>::zero()));
    tb.rhs.assign(m, scalar_traits<T>::zero());
    tb.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        const auto& src = prog.rows[retained[i]];
        T b = prog.rhs[retained[i]];
        bool flip;
        if constexpr (kExact<T>)
            flip = b.sign() < 0;
        else
            flip = b < 0.0;
        row_sign[i] = flip ? -1 : 1;
        for (int j = 0; j < V; ++j) tb.t[i][j] = flip ? -src[j] : src[j];
        tb.rhs[i] = flip ? -b : b;
        tb.t[i][tb.art(i)] = scalar_traits<T>::one();
        tb.basis[i] = tb.art(i);
    }

    // Phase 1: minimize the artificial sum. With the all-artificial basis the
    // reduced cost of column j is -sum_i t[i][j].
    tb.red.assign(tb.ncols, scalar_traits<T>::zero());
    for (int j = 0; j < V; ++j)
        for (int i = 0; i < m; ++i) tb.red[j] -= tb.t[i][j];

    int64_t iterations = 0;
    bool bland = kExact<T> || opts.bland;
    int64_t degenerate_run = 0;
    auto run = [&](bool allow_artificial) -> bool {
        // returns false on unboundedness
        while (true) {
            int pc = bland ? tb.entering_bland(allow_artificial)
                           : tb.entering_dantzig(allow_artificial);
            if (pc < 0) return true;
            int pr = tb.leaving(pc);
            if (pr < 0) return false;
            if constexpr (!kExact<T>) {
                // persistent degeneracy: fall back to Bland's rule
                if (tb.rhs[pr] <= tol) {
                    if (++degenerate_run > 2000) bland = true;
                } else {
                    degenerate_run = 0;
                }
            }
            tb.pivot(pr, pc);
            if (++iterations > opts.max_iterations)
                throw SolveError("lp: simplex iteration limit exceeded");
        }
    };

    if (!run(true))  // bounded below by 0; a failed ratio test means numeric trouble
        throw SolveError("lp: phase one ratio test failed");

    T phase1 = scalar_traits<T>::zero();
    for (int i = 0; i < m; ++i)
        if (tb.basis[i] >= V) phase1 += tb.rhs[i];
    bool infeasible;
    if constexpr (kExact<T>)
        infeasible = phase1.sign() > 0;
    else
        infeasible = phase1 > 10 * tol;
    if (infeasible) {
        sol.status = Status::infeasible;
        return sol;
    }

    // Drive any residual zero-valued artificials out of the basis.
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] < V) continue;
        int pc = -1;
        for (int j = 0; j < V; ++j) {
            bool nz;
            if constexpr (kExact<T>)
                nz = !tb.t[i][j].is_zero();
            else
                nz = std::fabs(tb.t[i][j]) > tol;
            if (nz) {
                pc = j;
                break;
            }
        }
        if (pc >= 0) tb.pivot(i, pc);
        // An all-zero row can only appear without preprocessing; the
        // artificial stays basic at zero and is harmless.
    }

    // Phase 2 with the real costs; artificial columns are barred from
    // entering. red_j = c_j - c_B . column_j, recomputed from scratch.
    auto cost_of = [&](int j) -> T {
        return j < V ? prog.c[j] : scalar_traits<T>::zero();
    };
    for (int j = 0; j < tb.ncols; ++j) {
        T v = cost_of(j);
        for (int i = 0; i < m; ++i) {
            T cb = cost_of(tb.basis[i]);
            bool zero;
            if constexpr (kExact<T>)
                zero = cb.is_zero();
            else
                zero = cb == 0.0;
            if (!zero) v -= cb * tb.t[i][j];
        }
        tb.red[j] = v;
    }
    degenerate_run = 0;
    if (!run(false)) {
        sol.status = Status::unbounded;
        return sol;
    }

    sol.status = Status::optimal;
    sol.x.assign(V, scalar_traits<T>::zero());
    for (int i = 0; i < m; ++i)
        if (tb.basis[i] < V) sol.x[tb.basis[i]] = tb.rhs[i];
    sol.objective = scalar_traits<T>::zero();
    for (int j = 0; j < V; ++j) sol.objective += prog.c[j] * sol.x[j];
    sol.basis.assign(tb.basis.begin(), tb.basis.end());
    // Duals: reduced cost at artificial i equals -y_i in the solver's row
    // orientation; undo the sign flips applied to make rhs nonnegative.
    for (int i = 0; i < m; ++i) {
        T yi = -tb.red[tb.art(i)];
        sol.y[retained[i]] = row_sign[i] < 0 ? -yi : yi;
    }

    if constexpr (!kExact<T>) {
        double worst = 0.0;
        for (int r = 0; r < R; ++r) {
            double ax = kern::dot(prog.rows[r].data(), sol.x.data(), V);
            worst = std::max(worst, std::fabs(ax - prog.rhs[r]));
        }
        for (int j = 0; j < V; ++j) worst = std::max(worst, std::max(0.0, -sol.x[j]));
        sol.max_residual = worst;
        sol.stable = worst <= 10 * tol;
    }
    return sol;
}

template <class T>
VerifyReport verify_solution(const LinearProgram<T>& prog, const Solution<T>& sol,
                             double tolerance) {
    const int V = static_cast<int>(prog.c.size());
    const int R = static_cast<int>(prog.rows.size());
    VerifyReport rep;
    if (sol.status != Status::optimal) return rep;

    auto ok_zero = [&](const T& v) {
        if constexpr (kExact<T>)
            return v.is_zero();
        else
            return std::fabs(v) <= tolerance;
    };
    auto ok_nonneg = [&](const T& v) {
        if constexpr (kExact<T>)
            return v.sign() >= 0;
        else
            return v >= -tolerance;
    };
    auto track = [&](const T& v) {
        double d = std::fabs(scalar_traits<T>::to_double(v));
        if (d > rep.worst) rep.worst = d;
    };

    rep.feasible = true;
    for (int r = 0; r < R; ++r) {
        T ax = scalar_traits<T>::zero();
        for (int j = 0; j < V; ++j) ax += prog.rows[r][j] * sol.x[j];
        T resid = ax - prog.rhs[r];
        if (!ok_zero(resid)) rep.feasible = false, track(resid);
    }
    rep.nonnegative = true;
    for (const T& xj : sol.x)
        if (!ok_nonneg(xj)) rep.nonnegative = false, track(xj);

    // slack_j = c_j - (A^T y)_j
    std::vector<T> slack(prog.c);
    for (int r = 0; r < R; ++r) {
        bool zero;
        if constexpr (kExact<T>)
            zero = sol.y[r].is_zero();
        else
            zero = sol.y[r] == 0.0;
        if (zero) continue;
        for (int j = 0; j < V; ++j) slack[j] -= sol.y[r] * prog.rows[r][j];
    }
    rep.dual_feasible = true;
    rep.complementary = true;
    for (int j = 0; j < V; ++j) {
        if (!ok_nonneg(slack[j])) rep.dual_feasible = false, track(slack[j]);
        bool x_positive;
        if constexpr (kExact<T>)
            x_positive = sol.x[j].sign() > 0;
        else
            x_positive = sol.x[j] > tolerance;
        if (x_positive) {
            T cs = slack[j] * sol.x[j];
            if (!ok_zero(cs)) rep.complementary = false, track(cs);
        }
    }
    T by = scalar_traits<T>::zero();
    for (int r = 0; r < R; ++r) by += prog.rhs[r] * sol.y[r];
    T gap = sol.objective - by;
    rep.strong_duality = ok_zero(gap);
    if (!rep.strong_duality) track(gap);
    return rep;
}

template <class T>
void dump(const LinearProgram<T>& prog, std::ostream& os) {
    auto write = [&](const T& v) {
        if constexpr (kExact<T>) {
            os << v.to_string();
        } else {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << buf;
        }
    };
    os << "minimize\n";
    for (size_t j = 0; j < prog.c.size(); ++j) {
        if (j) os << ' ';
        write(prog.c[j]);
    }
    os << "\nsubject-to\n";
    for (size_t r = 0; r < prog.rows.size(); ++r) {
        for (size_t j = 0; j < prog.rows[r].size(); ++j) {
            if (j) os << ' ';
            write(prog.rows[r][j]);
        }
        os << " | ";
        write(prog.rhs[r]);
        os << '\n';
    }
}

#define NLB_INSTANTIATE(T)                                                               \
    template Solution<T> solve<T>(const LinearProgram<T>&, const Options&);              \
    template VerifyReport verify_solution<T>(const LinearProgram<T>&, const Solution<T>&, \
                                             double);                                    \
    template void dump<T>(const LinearProgram<T>&, std::ostream&);

NLB_INSTANTIATE(Rational)
NLB_INSTANTIATE(double)

#undef NLB_INSTANTIATE

}  // namespace nlb::lp
