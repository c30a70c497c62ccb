#pragma once

#include <cstddef>

// Dense double-precision inner loops used by the float-mode simplex and
// table contractions. A scalar reference implementation always exists;
// an AVX2/FMA (x86-64) or NEON (aarch64) variant is selected once at
// startup when the running CPU supports it. The variants are equivalence-
// tested against the scalar kernels.
namespace nlb::kern {

// sum_i x[i] * y[i]
double dot(const double* x, const double* y, size_t n);
// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, size_t n);
// sum_i x[i]
double sum(const double* x, size_t n);
// sum_i |x[i]|
double sum_abs(const double* x, size_t n);

// Scalar reference implementations (kept callable for equivalence tests).
double dot_scalar(const double* x, const double* y, size_t n);
void axpy_scalar(double a, const double* x, double* y, size_t n);
double sum_scalar(const double* x, size_t n);
double sum_abs_scalar(const double* x, size_t n);

// Name of the instruction set the dispatched kernels run on:
// "scalar", "avx2" or "neon".
const char* active_isa();

}  // namespace nlb::kern
