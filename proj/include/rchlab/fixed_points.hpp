#pragma once

#include <cstdint>
#include <vector>

#include "rchlab/generator.hpp"
#include "rchlab/rotation.hpp"

namespace rchlab {

struct FixedPointReport {
  enum class Method { ClosedForm, SignChange };
  bool has_fixed_point = false;
  std::vector<double> points;  // circle representatives, ascending
  std::vector<int> levels;     // F(points[i]) = points[i] + levels[i]
  Method method = Method::ClosedForm;
  int grid = 0;
};

// Fixed points of the circle map under a standard lift F: solutions of
// dev_F(x) = k for integer k (k in {0,1} suffices for standard lifts).
// Rotation/Arnold/piecewise-linear families solve in closed form; other
// lifts are grid-scanned with bisection on sign changes plus golden-section
// refinement of near-zero minima so tangential fixed points are found too.
FixedPointReport find_fixed_points(const Lift& F, int grid = 1024,
                                   double tol = 1e-12);

// Roots of dev_F = k for one specific integer level; F need not be standard.
// The generic machinery behind find_fixed_points, also used to detect the
// integer rotation number of composed period maps.
std::vector<double> integer_deviation_roots(const Lift& F, int k, int grid,
                                            double tol);

struct ProbabilityEstimate {
  double p = 0.0;
  double std_error = 0.0;  // binomial; 0 when exact
  std::int64_t samples = 0;
  bool exact = false;
};

// P(f_omega has a fixed point).  Bernoulli: Monte Carlo over seeded samples
// (exact when the generator is symbol-determined: weighted count over the
// alphabet).  Finite bases: exact weighted average over points.
ProbabilityEstimate fixed_point_probability(const Generator& g,
                                            const BaseSystem& base,
                                            std::int64_t samples,
                                            std::uint64_t seed,
                                            int grid = 1024);

struct IntegerRhoWitness {
  MeanRotationEstimate mean_rho;
  ProbabilityEstimate probability;
  bool integer_mean_detected = false;  // |mean - round| <= 3*se + 1e-9
  int nearest_integer = 0;
  bool consistent = true;  // integer mean detected => probability > 0
};

// Empirical check of "integer mean rotation number forces fibre fixed points
// with positive probability": estimates both sides and reports whether the
// implication holds on this data.  A report, not a proof.
IntegerRhoWitness integer_rho_witness(const Generator& g,
                                      const BaseSystem& base, std::int64_t n,
                                      std::int64_t samples,
                                      std::uint64_t seed);

}  // namespace rchlab
