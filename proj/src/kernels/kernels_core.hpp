#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "rchlab/kernels.hpp"

// Scalar cores shared by the scalar backend, the AVX2 tail handling and the
// Lift evaluators.  Every floating-point formulation here is deliberate: the
// AVX2 twins replay the same operation sequence (floor, mul, add, fma), so a
// change in one place must be mirrored in src/kernels/avx2.cpp.

namespace rchlab::kernels::detail {

// Taylor coefficients of sin(2*pi*r) = r * P(r^2) and cos(2*pi*r) = Q(r^2)
// on |r| <= 1/8; absolute truncation+rounding error below 4e-17.
inline constexpr double kSinCoef[9] = {
    6.283185307179586,      -41.34170224039976,   81.60524927607506,
    -76.70585975306139,     42.058693944897655,   -15.09464257682299,
    3.819952584848282,      -0.7181223017785006,  0.10422916220813984,
};

inline constexpr double kCosCoef[10] = {
    1.0,                    -19.739208802178716,  64.9393940226683,
    -85.45681720669373,     60.24464137187666,    -26.4262567833744,
    7.903536371318469,      -1.714390711088672,   0.28200596845579123,
    -0.03638284114254567,
};

inline double sin2pi_core(double x) {
  double t = x - std::floor(x);            // [0, 1)
  double k = std::floor(4.0 * t + 0.5);    // nearest quarter, 0..4
  double r = t - 0.25 * k;                 // exact (Sterbenz), |r| <= 1/8
  double z = r * r;

  double s = kSinCoef[8];
  for (int i = 7; i >= 0; --i) s = std::fma(s, z, kSinCoef[i]);
  s *= r;

  double c = kCosCoef[9];
  for (int i = 8; i >= 0; --i) c = std::fma(c, z, kCosCoef[i]);

  int q = static_cast<int>(k) & 3;
  double v = (q & 1) ? c : s;
  return (q & 2) ? -v : v;
}

inline double arnold_eval_core(double x, double amp, double beta) {
  return x + std::fma(amp, sin2pi_core(x), beta);
}

inline double pwl_eval_core(double x, const PwlTable& tb, std::size_t base) {
  double fl = std::floor(x);
  double t = x - fl;
  std::size_t idx = 0;
  for (std::size_t j = 1; j < tb.nseg; ++j) idx += (t >= tb.breaks[j]) ? 1u : 0u;
  double y = std::fma(tb.slopes[base + idx], t, tb.intercepts[base + idx]);
  return y + fl;
}

}  // namespace rchlab::kernels::detail
