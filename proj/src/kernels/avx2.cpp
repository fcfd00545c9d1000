// AVX2 twins of the scalar kernels.  Per element these replay the scalar
// cores' operation sequence exactly (floor, mul, add, fma, blend-select), so
// results are bit-identical to src/kernels/scalar.cpp; the equivalence tests
// assert that.  Tails shorter than a vector fall through to the scalar cores.

#include "kernels_core.hpp"
#include "rchlab/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>

namespace rchlab::kernels {
namespace {

using detail::arnold_eval_core;
using detail::kCosCoef;
using detail::kSinCoef;
using detail::pwl_eval_core;
using detail::sin2pi_core;

inline __m256d sin2pi_v(__m256d x) {
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d quarter = _mm256_set1_pd(0.25);

  __m256d t = _mm256_sub_pd(x, _mm256_floor_pd(x));
  __m256d k = _mm256_floor_pd(_mm256_add_pd(_mm256_mul_pd(four, t), half));
  __m256d r = _mm256_sub_pd(t, _mm256_mul_pd(quarter, k));
  __m256d z = _mm256_mul_pd(r, r);

  __m256d s = _mm256_set1_pd(kSinCoef[8]);
  for (int i = 7; i >= 0; --i)
    s = _mm256_fmadd_pd(s, z, _mm256_set1_pd(kSinCoef[i]));
  s = _mm256_mul_pd(s, r);

  __m256d c = _mm256_set1_pd(kCosCoef[9]);
  for (int i = 8; i >= 0; --i)
    c = _mm256_fmadd_pd(c, z, _mm256_set1_pd(kCosCoef[i]));

  __m128i ki = _mm256_cvtpd_epi32(k);
  __m128i odd = _mm_cmpeq_epi32(_mm_and_si128(ki, _mm_set1_epi32(1)),
                                _mm_set1_epi32(1));
  __m128i hi = _mm_cmpeq_epi32(_mm_and_si128(ki, _mm_set1_epi32(2)),
                               _mm_set1_epi32(2));
  __m256d oddm = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(odd));
  __m256d him = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(hi));

  __m256d v = _mm256_blendv_pd(s, c, oddm);
  return _mm256_xor_pd(v, _mm256_and_pd(him, _mm256_set1_pd(-0.0)));
}

void sin2pi_n(const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, sin2pi_v(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = sin2pi_core(x[i]);
}

void arnold_eval_n(const double* x, double amp, double beta, double* y,
                   std::size_t n) {
  const __m256d a = _mm256_set1_pd(amp);
  const __m256d b = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d s = sin2pi_v(xv);
    _mm256_storeu_pd(y + i, _mm256_add_pd(xv, _mm256_fmadd_pd(a, s, b)));
  }
  for (; i < n; ++i) y[i] = arnold_eval_core(x[i], amp, beta);
}

inline __m256d pwl_eval_v(__m256d x, const PwlTable& tb, __m128i base) {
  __m256d fl = _mm256_floor_pd(x);
  __m256d t = _mm256_sub_pd(x, fl);
  __m256d idx = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t j = 1; j < tb.nseg; ++j) {
    __m256d m = _mm256_cmp_pd(t, _mm256_set1_pd(tb.breaks[j]), _CMP_GE_OQ);
    idx = _mm256_add_pd(idx, _mm256_and_pd(m, one));
  }
  __m128i off = _mm_add_epi32(_mm256_cvtpd_epi32(idx), base);
  __m256d sl = _mm256_i32gather_pd(tb.slopes, off, 8);
  __m256d ic = _mm256_i32gather_pd(tb.intercepts, off, 8);
  return _mm256_add_pd(_mm256_fmadd_pd(sl, t, ic), fl);
}

void pwl_eval_n(const double* x, const PwlTable& tb, double* y,
                std::size_t n) {
  const __m128i zero = _mm_setzero_si128();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, pwl_eval_v(_mm256_loadu_pd(x + i), tb, zero));
  for (; i < n; ++i) y[i] = pwl_eval_core(x[i], tb, 0);
}

void add_scalar_n(const double* x, double c, double* y, std::size_t n) {
  const __m256d cv = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(x + i), cv));
  for (; i < n; ++i) y[i] = x[i] + c;
}

void arnold_step_n(double* x, const double* amp, const double* beta,
                   std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d s = sin2pi_v(xv);
    __m256d a = _mm256_loadu_pd(amp + i);
    __m256d b = _mm256_loadu_pd(beta + i);
    _mm256_storeu_pd(x + i, _mm256_add_pd(xv, _mm256_fmadd_pd(a, s, b)));
  }
  for (; i < n; ++i) x[i] = arnold_eval_core(x[i], amp[i], beta[i]);
}

void add_n(double* x, const double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(
        x + i, _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(c + i)));
  for (; i < n; ++i) x[i] += c[i];
}

void pwl_step_n(double* x, const PwlTable& tb, const std::int32_t* base,
                std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m128i b = _mm_loadu_si128(reinterpret_cast<const __m128i*>(base + i));
    _mm256_storeu_pd(x + i, pwl_eval_v(_mm256_loadu_pd(x + i), tb, b));
  }
  for (; i < n; ++i)
    x[i] = pwl_eval_core(x[i], tb, static_cast<std::size_t>(base[i]));
}

void sub_n(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(
        y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] -= x[i];
}

void minmax_n(const double* x, std::size_t n, double* lo, double* hi) {
  double a = x[0], b = x[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d lov = _mm256_loadu_pd(x);
    __m256d hiv = lov;
    for (i = 4; i + 4 <= n; i += 4) {
      __m256d v = _mm256_loadu_pd(x + i);
      lov = _mm256_min_pd(lov, v);
      hiv = _mm256_max_pd(hiv, v);
    }
    alignas(32) double tmp[4];
    _mm256_storeu_pd(tmp, lov);
    a = std::min(std::min(tmp[0], tmp[1]), std::min(tmp[2], tmp[3]));
    _mm256_storeu_pd(tmp, hiv);
    b = std::max(std::max(tmp[0], tmp[1]), std::max(tmp[2], tmp[3]));
  }
  for (; i < n; ++i) {
    a = std::min(a, x[i]);
    b = std::max(b, x[i]);
  }
  *lo = a;
  *hi = b;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {
      "avx2",       sin2pi_n, arnold_eval_n, pwl_eval_n, add_scalar_n,
      arnold_step_n, add_n,   pwl_step_n,    sub_n,      minmax_n,
  };
  return ops;
}

}  // namespace rchlab::kernels

#endif  // __AVX2__ && __FMA__
