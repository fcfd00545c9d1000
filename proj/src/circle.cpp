#include "rchlab/circle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rchlab/kernels.hpp"

namespace rchlab {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x))
    throw std::domain_error(std::string(what) + " must be finite");
}

kernels::PwlTable table_view(const Lift::PwlData& d) {
  return {d.breaks.data(), d.slopes.data(), d.intercepts.data(),
          d.slopes.size()};
}

}  // namespace

double project(double x) {
  require_finite(x, "circle point");
  double t = x - std::floor(x);
  return t < 1.0 ? t : 0.0;  // x just below an integer can round up to 1.0
}

CirclePoint::CirclePoint(double representative) : value_(representative) {
  require_finite(representative, "circle point");
  if (representative < 0.0 || representative >= 1.0)
    throw std::domain_error("circle point representative must lie in [0,1)");
}

Lift Lift::rotation(double beta) {
  require_finite(beta, "rotation offset");
  return Lift(Impl(Rotation{beta}));
}

Lift Lift::arnold(double alpha, double beta) {
  require_finite(alpha, "arnold alpha");
  require_finite(beta, "arnold beta");
  if (std::fabs(alpha) > 1.0)
    throw validation_error("arnold parameter |alpha| must be <= 1");
  return Lift(Impl(Arnold{alpha / (2.0 * std::numbers::pi), beta}));
}

Lift Lift::piecewise(PwlData data) {
  std::size_t nseg = data.slopes.size();
  if (nseg == 0 || data.breaks.size() != nseg + 1 ||
      data.intercepts.size() != nseg)
    throw validation_error("piecewise table sizes are inconsistent");
  if (data.breaks.front() != 0.0 || data.breaks.back() != 1.0)
    throw validation_error("piecewise breakpoints must span [0,1]");
  for (std::size_t i = 0; i < nseg; ++i) {
    require_finite(data.slopes[i], "piecewise slope");
    require_finite(data.intercepts[i], "piecewise intercept");
    if (!(data.breaks[i] < data.breaks[i + 1]))
      throw validation_error("piecewise breakpoints must increase strictly");
    if (!(data.slopes[i] > 0.0))
      throw validation_error("piecewise slopes must be positive");
  }
  auto value = [&](std::size_t i, double x) {
    return std::fma(data.slopes[i], x, data.intercepts[i]);
  };
  for (std::size_t i = 0; i + 1 < nseg; ++i) {
    double b = data.breaks[i + 1];
    if (std::fabs(value(i, b) - value(i + 1, b)) > 1e-9)
      throw validation_error("piecewise table is discontinuous");
  }
  if (std::fabs(value(nseg - 1, 1.0) - value(0, 0.0) - 1.0) > 1e-9)
    throw validation_error("piecewise table must gain exactly 1 over a period");
  return Lift(Impl(std::move(data)));
}

Lift Lift::composition(std::vector<Lift> parts, long shift) {
  return Lift(Impl(Composed{std::move(parts), shift}));
}

double Lift::operator()(double x) const {
  require_finite(x, "lift argument");
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Rotation>) {
          return x + f.beta;
        } else if constexpr (std::is_same_v<T, Arnold>) {
          return kernels::arnold_eval(x, f.amp, f.beta);
        } else if constexpr (std::is_same_v<T, PwlData>) {
          return kernels::pwl_eval(x, table_view(f));
        } else {
          double y = x;
          for (const Lift& part : f.parts) y = part(y);
          return y + static_cast<double>(f.shift);
        }
      },
      impl_);
}

Lift::Family Lift::family() const {
  switch (impl_.index()) {
    case 0: return Family::RigidRotation;
    case 1: return Family::Arnold;
    case 2: return Family::PiecewiseLinear;
    default: return Family::Composition;
  }
}

bool Lift::is_standard() const {
  double v = at_zero();
  return v >= 0.0 && v < 1.0;
}

double Lift::rotation_beta() const { return std::get<Rotation>(impl_).beta; }
double Lift::arnold_amp() const { return std::get<Arnold>(impl_).amp; }
double Lift::arnold_beta() const { return std::get<Arnold>(impl_).beta; }
const Lift::PwlData& Lift::pwl() const { return std::get<PwlData>(impl_); }

std::span<const Lift> Lift::parts() const {
  const auto& c = std::get<Composed>(impl_);
  return {c.parts.data(), c.parts.size()};
}

long Lift::composition_shift() const {
  return std::get<Composed>(impl_).shift;
}

void Lift::check_valid(int grid, double tol) const {
  if (grid < 2) throw std::invalid_argument("validation grid must be >= 2");
  double prev = (*this)(0.0);
  require_finite(prev, "lift value");
  for (int i = 1; i <= grid; ++i) {
    double x = static_cast<double>(i) / grid;
    double y = (*this)(x);
    require_finite(y, "lift value");
    if (y < prev - tol)
      throw validation_error("lift is not increasing");
    prev = y;
  }
  for (double x : {0.0, 0.37, -1.25, 2.5}) {
    if (std::fabs((*this)(x + 1.0) - (*this)(x)-1.0) > tol)
      throw validation_error("lift does not satisfy F(x+1) = F(x) + 1");
  }
}

Lift compose(std::vector<Lift> steps) {
  return Lift::composition(std::move(steps), 0);
}

Lift standardize(const Lift& F) {
  double k = std::floor(F.at_zero());
  if (k == 0.0) return F;
  if (!std::isfinite(k)) throw std::domain_error("lift value at 0 not finite");
  switch (F.family()) {
    case Lift::Family::RigidRotation:
      return Lift::rotation(F.rotation_beta() - k);
    case Lift::Family::Arnold:
      return Lift(Lift::Impl(Lift::Arnold{F.arnold_amp(), F.arnold_beta() - k}));
    case Lift::Family::PiecewiseLinear: {
      Lift::PwlData d = F.pwl();
      for (double& c : d.intercepts) c -= k;
      return Lift::piecewise(std::move(d));
    }
    case Lift::Family::Composition:
    default: {
      std::span<const Lift> ps = F.parts();
      return Lift::composition(std::vector<Lift>(ps.begin(), ps.end()),
                               F.composition_shift() - static_cast<long>(k));
    }
  }
}

Lift piecewise_linear_lift(
    std::span<const std::pair<double, double>> vertices) {
  if (vertices.size() < 2)
    throw validation_error("need at least two vertices");
  for (const auto& [x, y] : vertices) {
    require_finite(x, "vertex x");
    require_finite(y, "vertex y");
    if (y < 0.0 || y >= 1.0)
      throw validation_error("vertex values must lie in [0,1)");
  }
  if (vertices.front().first != 0.0 || vertices.back().first != 1.0)
    throw validation_error("vertices must start at x=0 and end at x=1");
  if (std::fabs(vertices.back().second - vertices.front().second) > 1e-12)
    throw validation_error("vertex values at x=0 and x=1 must agree mod 1");

  std::size_t nseg = vertices.size() - 1;
  Lift::PwlData d;
  d.breaks.resize(nseg + 1);
  d.slopes.resize(nseg);
  d.intercepts.resize(nseg);
  double lifted = vertices.front().second;
  double total = 0.0;
  for (std::size_t i = 0; i < nseg; ++i) {
    double x0 = vertices[i].first, x1 = vertices[i + 1].first;
    if (!(x0 < x1))
      throw validation_error("vertex x coordinates must increase strictly");
    double rise = vertices[i + 1].second - vertices[i].second;
    if (rise <= 0.0) rise += 1.0;  // the graph wrapped past 1
    d.breaks[i] = x0;
    d.slopes[i] = rise / (x1 - x0);
    d.intercepts[i] = std::fma(-d.slopes[i], x0, lifted);
    lifted += rise;
    total += rise;
  }
  d.breaks[nseg] = 1.0;
  if (std::fabs(total - 1.0) > 1e-12)
    throw validation_error(
        "vertices wind " + std::to_string(total) +
        " turns per period; an increasing degree-one map needs exactly 1");
  return Lift::piecewise(std::move(d));
}

void lift_eval_n(const Lift& F, const double* x, double* y, std::size_t n) {
  if (n == 0) return;
  const kernels::Ops& k = kernels::ops();
  switch (F.family()) {
    case Lift::Family::RigidRotation:
      k.add_scalar_n(x, F.rotation_beta(), y, n);
      return;
    case Lift::Family::Arnold:
      k.arnold_eval_n(x, F.arnold_amp(), F.arnold_beta(), y, n);
      return;
    case Lift::Family::PiecewiseLinear:
      k.pwl_eval_n(x, table_view(F.pwl()), y, n);
      return;
    case Lift::Family::Composition:
    default: {
      if (y != x) std::copy(x, x + n, y);
      for (const Lift& part : F.parts()) lift_eval_n(part, y, y, n);
      long shift = F.composition_shift();
      if (shift != 0)
        k.add_scalar_n(y, static_cast<double>(shift), y, n);
      return;
    }
  }
}

}  // namespace rchlab
