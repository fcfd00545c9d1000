#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rchlab/generator.hpp"

namespace rchlab {

// A stated precondition fails on actual data (e.g. the claimed joint fixed
// point is not fixed on some sample).
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RotationEstimate {
  double rho = 0.0;         // (F^(n)(x) - x) / n
  std::int64_t n = 0;
  double cauchy_gap = 0.0;  // |rho - half-orbit estimate|
  double m_bar = 0.0;       // Birkhoff average of per-fibre deviation minima
  double M_bar = 0.0;       // ... and maxima; m_bar <= rho <= M_bar
};

// Orbit-average rotation number with convergence diagnostics.
// n must be even and >= 2 (the Cauchy gap compares against the half orbit).
RotationEstimate estimate_rho(const Generator& g, const BasePoint& omega,
                              CirclePoint x, std::int64_t n);

// One estimate per omega; bit-identical to calling estimate_rho per sample,
// but batched across SIMD lanes and threads.
std::vector<RotationEstimate> estimate_rho_batch(
    const Generator& g, std::span<const BasePoint> omegas, CirclePoint x,
    std::int64_t n);

struct MeanRotationEstimate {
  double mean = 0.0;
  double std_error = 0.0;   // sample sd / sqrt(samples); 0 when exact
  std::int64_t samples = 0;
  bool exact = false;       // finite bases: exact weighted average
};

// Mean rotation number over the base measure.
//  - Bernoulli: Monte Carlo over `samples` seeded streams of length n;
//    deterministic in (seed, n, samples), thread count and SIMD backend.
//  - FinitePermutation / Singleton: exact weighted average over the points;
//    each point's rotation number is deterministic_rho of its composed
//    period map divided by the period (n is the fallback orbit length).
MeanRotationEstimate estimate_mean_rho(const Generator& g,
                                       const BaseSystem& base, std::int64_t n,
                                       std::int64_t samples,
                                       std::uint64_t seed,
                                       CirclePoint x = CirclePoint(0.0));

// Mean rotation number through a joint fixed-point selection a0:
// E[F_omega(a0(omega)) - a0(omega)].  Every sample must satisfy
// f_omega(a0(omega)) = a0(sigma omega) within tol, else precondition_error.
MeanRotationEstimate mean_rho_via_fixed_point(
    const Generator& g, const BaseSystem& base,
    const std::function<double(const BasePoint&)>& a0, std::int64_t samples,
    std::uint64_t seed, double tol = 1e-9);

// Rotation number of one circle homeomorphism given by a lift (not
// necessarily standard).  Exact closed forms where available; an exact
// integer k whenever the deviation attains k (tangencies included);
// otherwise the n-step orbit average.
double deterministic_rho(const Lift& F, std::int64_t n = std::int64_t{1} << 20,
                         int grid = 4096);

}  // namespace rchlab
