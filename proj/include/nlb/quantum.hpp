#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "nlb/scenario.hpp"

namespace nlb::quantum {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.
struct CMat {
    int n = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, cplx(0.0, 0.0)) {}

    cplx& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
    const cplx& at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }

    static CMat identity(int dim);
    CMat adjoint() const;
    cplx trace() const;
    double max_abs() const;
};

CMat operator+(const CMat& x, const CMat& y);
CMat operator-(const CMat& x, const CMat& y);
CMat operator*(const CMat& x, const CMat& y);
CMat operator*(cplx s, const CMat& x);
CMat kron(const CMat& x, const CMat& y);

// outer product psi psi^dagger of a (not necessarily normalized) vector
CMat outer(const std::vector<cplx>& psi);

// Cyclic Jacobi eigendecomposition of a Hermitian matrix: A = V diag(w) V^dag,
// eigenvalues ascending.
struct EigResult {
    std::vector<double> values;
    CMat vectors;  // columns are eigenvectors
};
EigResult eigh(const CMat& hermitian);

double hermiticity_error(const CMat& m);  // max |A - A^dag|
double min_eigenvalue(const CMat& hermitian);

// Trace over the parties not listed in `keep` (strictly increasing), for a
// density operator on a tensor product with the given local dimensions.
CMat partial_trace(const CMat& rho, const std::vector<int>& dims, const std::vector<int>& keep);

// Deterministic pseudo-random stream (splitmix64; gaussians via Box-Muller),
// so seeded model sampling is bit-reproducible across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}
    uint64_t next_u64();
    double uniform();   // [0, 1)
    double gaussian();  // standard normal
private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// State rho on the tensor product of per-party spaces plus one POVM per
// (party, setting); element k of a POVM corresponds to outcome k.
struct QuantumModel {
    Scenario scenario;
    std::vector<int> dims;  // local Hilbert dimension per party
    CMat rho;
    std::vector<std::vector<std::vector<CMat>>> measurements;  // [party][setting][outcome]
    bool projective = false;
};

// Checks Hermiticity, positivity and normalization of the state, POVM
// completeness, and (when flagged) projectivity/orthogonality. Throws
// std::invalid_argument with a description on the first violation.
void validate_model(const QuantumModel& model);

// P(outcomes | settings) = tr[rho (M^1 x ... x M^N)]
Behavior<double> born_behavior(const QuantumModel& model);

CMat singlet();                 // (|01> - |10>)/sqrt(2) as a density operator
CMat ghz(int parties);          // (|0..0> + |1..1>)/sqrt(2)
CMat max_entangled(int d);      // sum_k |kk>/sqrt(d)
CMat maximally_mixed(int dim);  // I/dim

// Projectors onto the +/- Bloch directions (sin t cos p, sin t sin p, cos t);
// element 0 is the + direction.
std::vector<CMat> qubit_projector(double theta, double phi);

// Singlet with measurement directions in the Bloch x-z plane chosen so the
// behavior attains the two-setting two-outcome quantum maximum: the lifted
// CHSH value is 2*sqrt(2) and gamma is sqrt(2).
QuantumModel chsh_optimal_model();

// Haar-random pure state and either Haar-random projective measurements
// (basis columns of random unitaries) or random POVMs; deterministic in seed.
QuantumModel random_model(const Scenario& sc, uint64_t seed, bool projective);

// Closed-form nonlocality ceilings for N-partite qudit scenarios with S
// settings per site: any measurements / projective measurements.
double bound_general(int d, int S, int N);
double bound_projective(int d, int S, int N);

}  // namespace nlb::quantum
