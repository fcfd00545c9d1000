#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "rchlab/base_dynamics.hpp"
#include "rchlab/circle.hpp"

namespace rchlab {

struct DeviationBounds {
  double m = 0.0;  // inf of F(x) - x
  double M = 0.0;  // sup of F(x) - x
  int grid = 0;    // 0: exact (closed form / vertex scan)
  bool refined = false;
};

// Bounds for the deviation of a single lift.  Rotation and Arnold use the
// closed form beta -+ |alpha|/2pi; piecewise-linear lifts are extremal at
// their breakpoints (exact).  Everything else is scanned on a grid with
// golden-section refinement around the extremal cells; those bounds can
// undershoot by at most sup|dev'| / grid.
DeviationBounds deviation_bounds(const Lift& F, int grid = 4096);

// Assigns to every base point omega the standard lift F_omega of its fibre
// map f_omega.  Cheap to copy (shared immutable state).
class Generator {
 public:
  // f_omega = table[omega_0]; lifts are standardized on construction.
  static Generator symbol_indexed(std::vector<Lift> table);
  // Arnold fibre with parameter rules evaluated at omega.
  static Generator parametric_arnold(
      std::function<double(const BasePoint&)> alpha,
      std::function<double(const BasePoint&)> beta);
  // Arbitrary rule.  Produced lifts are standardized; with validate_lifts
  // they are also sampled for monotonicity/degree-one (costly per call).
  static Generator custom(std::function<Lift(const BasePoint&)> rule,
                          bool validate_lifts = true);

  Lift lift_at(const BasePoint& omega) const;

  // True when F_omega depends on omega only through omega_0.
  bool symbol_determined() const;
  int table_size() const;
  const Lift& lift_for_symbol(int s) const;
  const DeviationBounds& bounds_for_symbol(int s) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit Generator(std::shared_ptr<const Impl> impl);
};

struct OrbitRecord {
  double x0 = 0.0;
  std::int64_t n = 0;
  std::int64_t stride = 1;      // lifted[i] is the value after i*stride steps
  std::vector<double> lifted;   // lifted[0] = x0
  double final_lifted = 0.0;    // value after n steps, exact endpoint
  double circle(std::size_t i) const { return project(lifted[i]); }
};

// Forward orbit x, F_omega(x), F^(2)_omega(x), ... of the lifted cocycle.
// Stores at most max_kept values (stride-thinned to powers of two).
OrbitRecord iterate(const Generator& g, const BasePoint& omega, CirclePoint x,
                    std::int64_t n, std::int64_t max_kept = std::int64_t{1} << 16);

}  // namespace rchlab
