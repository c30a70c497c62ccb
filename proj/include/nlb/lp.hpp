#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "nlb/rational.hpp"

namespace nlb::lp {

// minimize c.x subject to A x = b, x >= 0
template <class T>
struct LinearProgram {
    std::vector<T> c;
    std::vector<std::vector<T>> rows;  // R x V
    std::vector<T> rhs;                // R
};

enum class Status { optimal, infeasible, unbounded };

template <class T>
struct Solution {
    Status status = Status::infeasible;
    std::vector<T> x;          // primal, length V (optimal only)
    T objective{};
    std::vector<T> y;          // dual value per original row; 0 on rows
                               // eliminated as redundant by preprocessing
    std::vector<int> basis;    // basic column per retained row
    std::vector<int> retained_rows;
    // float mode only: worst |Ax-b| residual over all rows and whether it
    // stayed within 10x the pivot tolerance
    double max_residual = 0.0;
    bool stable = true;
};

struct Options {
    bool preprocess = true;      // drop linearly dependent equality rows
    double tolerance = 1e-9;     // float-mode pivot/feasibility tolerance
    bool bland = false;          // float mode: force Bland instead of Dantzig
    int64_t max_iterations = 2000000;
};

struct SolveError : std::runtime_error {
    explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

// Exact T=Rational uses Bland's rule throughout and returns status-correct
// results; T=double uses Dantzig pricing with a Bland fallback and the
// configured tolerances.
template <class T>
Solution<T> solve(const LinearProgram<T>& prog, const Options& opts = {});

struct VerifyReport {
    bool feasible = false;       // A x = b
    bool nonnegative = false;    // x >= 0
    bool dual_feasible = false;  // A^T y <= c
    bool strong_duality = false; // c.x = b.y
    bool complementary = false;  // x_j > 0  =>  (c - A^T y)_j = 0
    double worst = 0.0;
    bool ok() const {
        return feasible && nonnegative && dual_feasible && strong_duality && complementary;
    }
};

template <class T>
VerifyReport verify_solution(const LinearProgram<T>& prog, const Solution<T>& sol,
                             double tolerance = 1e-9);

// Plain-text dump for cross-checking against external solvers; exact entries
// are written as p/q, float entries as decimal literals.
template <class T>
void dump(const LinearProgram<T>& prog, std::ostream& os);

}  // namespace nlb::lp
