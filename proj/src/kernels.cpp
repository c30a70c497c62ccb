#include "nlb/kernels.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#define NLB_X86 1
#include <immintrin.h>
#else
#define NLB_X86 0
#endif

#if defined(__aarch64__)
#define NLB_NEON 1
#include <arm_neon.h>
#else
#define NLB_NEON 0
#endif

namespace nlb::kern {

double dot_scalar(const double* x, const double* y, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double sum_scalar(const double* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sum_abs_scalar(const double* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += std::fabs(x[i]);
    return acc;
}

#if NLB_X86

__attribute__((target("avx2,fma"))) static double dot_avx2(const double* x, const double* y, size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc0);
    double acc = lane[0] + lane[1] + lane[2] + lane[3];
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

__attribute__((target("avx2,fma"))) static void axpy_avx2(double a, const double* x, double* y, size_t n) {
    __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(y + i + 4,
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2"))) static double sum_avx2(const double* x, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double r = lane[0] + lane[1] + lane[2] + lane[3];
    for (; i < n; ++i) r += x[i];
    return r;
}

__attribute__((target("avx2"))) static double sum_abs_avx2(const double* x, size_t n) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(x + i)));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double r = lane[0] + lane[1] + lane[2] + lane[3];
    for (; i < n; ++i) r += std::fabs(x[i]);
    return r;
}

#endif  // NLB_X86

#if NLB_NEON

static double dot_neon(const double* x, const double* y, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

static void axpy_neon(double a, const double* x, double* y, size_t n) {
    float64x2_t va = vdupq_n_f64(a);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

static double sum_neon(const double* x, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

static double sum_abs_neon(const double* x, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += std::fabs(x[i]);
    return r;
}

#endif  // NLB_NEON

namespace {

struct Dispatch {
    double (*dot)(const double*, const double*, size_t) = dot_scalar;
    void (*axpy)(double, const double*, double*, size_t) = axpy_scalar;
    double (*sum)(const double*, size_t) = sum_scalar;
    double (*sum_abs)(const double*, size_t) = sum_abs_scalar;
    const char* isa = "scalar";

    Dispatch() {
#if NLB_X86
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            dot = dot_avx2;
            axpy = axpy_avx2;
            sum = sum_avx2;
            sum_abs = sum_abs_avx2;
            isa = "avx2";
        }
#elif NLB_NEON
        dot = dot_neon;
        axpy = axpy_neon;
        sum = sum_neon;
        sum_abs = sum_abs_neon;
        isa = "neon";
#endif
    }
};

const Dispatch& dispatch() {
    static const Dispatch d;
    return d;
}

}  // namespace

double dot(const double* x, const double* y, size_t n) { return dispatch().dot(x, y, n); }
void axpy(double a, const double* x, double* y, size_t n) { dispatch().axpy(a, x, y, n); }
double sum(const double* x, size_t n) { return dispatch().sum(x, n); }
double sum_abs(const double* x, size_t n) { return dispatch().sum_abs(x, n); }
const char* active_isa() { return dispatch().isa; }

}  // namespace nlb::kern
