#pragma once

#include <cstddef>
#include <cstdint>

// Elementwise numeric kernels used by the orbit drivers and grid scans.
// Every kernel exists in a scalar reference form and (when compiled in and
// supported by the CPU) an AVX2 form that reproduces the scalar results bit
// for bit.  Downstream code relies on that: estimates, CSV output and the
// determinism guarantees are identical no matter which backend runs.

namespace rchlab::kernels {

// sin(2*pi*x) for arbitrary real x.  The reduction works on the fractional
// part, so lifted arguments with a large integer part lose no accuracy, and
// quarter-integer inputs yield exact values in {-1, 0, 1}.
double sin2pi(double x);

// One Arnold-family lift evaluation: x + fma(amp, sin2pi(x), beta).
double arnold_eval(double x, double amp, double beta);

// Piecewise-linear lift table on [0,1): nseg segments, breaks has nseg+1
// ascending entries with breaks[0] = 0 and breaks[nseg] = 1, and segment i
// evaluates fma(slopes[i], t, intercepts[i]).  Arrays may be packed for
// several maps back to back; `base` selects the segment block.
struct PwlTable {
  const double* breaks;
  const double* slopes;
  const double* intercepts;
  std::size_t nseg;
};

double pwl_eval(double x, const PwlTable& table, std::size_t base = 0);

struct Ops {
  const char* name;

  void (*sin2pi_n)(const double* x, double* y, std::size_t n);

  // Uniform-parameter evaluation over an array (grid scans, staged
  // composition evaluation).  y may alias x.
  void (*arnold_eval_n)(const double* x, double amp, double beta, double* y,
                        std::size_t n);
  void (*pwl_eval_n)(const double* x, const PwlTable& table, double* y,
                     std::size_t n);
  void (*add_scalar_n)(const double* x, double c, double* y, std::size_t n);

  // Per-lane-parameter steps for batched orbits (one lane per omega sample).
  void (*arnold_step_n)(double* x, const double* amp, const double* beta,
                        std::size_t n);
  void (*add_n)(double* x, const double* c, std::size_t n);
  // Packed piecewise-linear step: all symbols share `table.breaks`; lane i
  // reads segments at block offset base[i] (= symbol * nseg).
  void (*pwl_step_n)(double* x, const PwlTable& table,
                     const std::int32_t* base, std::size_t n);

  void (*sub_n)(double* y, const double* x, std::size_t n);  // y -= x
  void (*minmax_n)(const double* x, std::size_t n, double* lo, double* hi);
};

enum class Backend { Auto, Scalar, Avx2 };

const Ops& scalar_ops();
bool avx2_supported();

// Currently selected backend; defaults to the RCH_LAB_SIMD environment
// variable (auto|scalar|avx2), then to auto-detection.
const Ops& ops();
void select_backend(Backend b);  // throws std::runtime_error if unavailable

}  // namespace rchlab::kernels
