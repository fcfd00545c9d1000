#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace rchlab {

// Input data that fails a structural requirement (non-monotone tables,
// out-of-range parameters, inconsistent winding, ...).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// R -> [0,1), x mod 1.  Throws std::domain_error on non-finite input.
double project(double x);

// A point of the circle R/Z held by its representative in [0,1).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(double representative);
  static CirclePoint from_real(double x) { return CirclePoint(project(x)); }
  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

// Lift of an orientation-preserving circle homeomorphism: continuous,
// strictly increasing, F(x+1) = F(x) + 1.  Value type; compositions own
// their parts.
class Lift {
 public:
  enum class Family { RigidRotation, Arnold, PiecewiseLinear, Composition };

  struct PwlData {
    std::vector<double> breaks;      // nseg+1, breaks.front() = 0, breaks.back() = 1
    std::vector<double> slopes;      // nseg, all > 0
    std::vector<double> intercepts;  // nseg, lift(t) = slopes[i]*t + intercepts[i]
  };

  // x + beta.
  static Lift rotation(double beta);
  // x + (alpha/2pi) sin(2pi x) + beta; |alpha| <= 1 keeps the map injective.
  static Lift arnold(double alpha, double beta);
  static Lift identity() { return rotation(0.0); }
  // Validated piecewise-linear table (see piecewise_linear_lift for the
  // friendlier vertex-based constructor).
  static Lift piecewise(PwlData data);
  // Applies parts front to back, then adds the integer shift.
  static Lift composition(std::vector<Lift> parts, long shift = 0);

  double operator()(double x) const;
  double deviation(double x) const { return (*this)(x)-x; }

  Family family() const;
  double at_zero() const { return (*this)(0.0); }
  bool is_standard() const;  // F(0) in [0,1)

  double rotation_beta() const;  // RigidRotation
  double arnold_amp() const;     // Arnold: alpha/(2pi)
  double arnold_beta() const;
  const PwlData& pwl() const;               // PiecewiseLinear
  std::span<const Lift> parts() const;      // Composition
  long composition_shift() const;

  // Samples the lift and checks strict monotonicity and F(x+1) = F(x)+1;
  // meant for lifts produced by untrusted rules.
  void check_valid(int grid = 256, double tol = 1e-9) const;

  friend Lift standardize(const Lift& F);

 private:
  struct Rotation {
    double beta;
  };
  struct Arnold {
    double amp, beta;
  };
  struct Composed {
    std::vector<Lift> parts;
    long shift;
  };
  using Impl = std::variant<Rotation, Arnold, PwlData, Composed>;
  explicit Lift(Impl impl) : impl_(std::move(impl)) {}
  Impl impl_;
};

// steps.front() is applied first; compose({}) is the identity.
Lift compose(std::vector<Lift> steps);

// F - floor(F(0)): the unique lift of the same circle map with F(0) in [0,1).
Lift standardize(const Lift& F);

// Builds a lift from vertices (x_i, y_i) of the circle map's graph:
// 0 = x_0 < ... < x_K = 1, y_i in [0,1), y_K = y_0, linear in between.
// Each non-increasing step in y is unwound by adding 1 (the graph wrapped);
// total winding must come out to exactly one turn.
Lift piecewise_linear_lift(std::span<const std::pair<double, double>> vertices);

// y[i] = F(x[i]) through the vector kernels; compositions are evaluated
// stage by stage over the whole array.  y may alias x.
void lift_eval_n(const Lift& F, const double* x, double* y, std::size_t n);

// The 1-periodic function x -> F(x) - x.
class Deviation {
 public:
  explicit Deviation(Lift source) : source_(std::move(source)) {}
  double operator()(double x) const { return source_.deviation(x); }
  const Lift& source() const { return source_; }

 private:
  Lift source_;
};

}  // namespace rchlab
