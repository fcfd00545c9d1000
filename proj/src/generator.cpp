#include "rchlab/generator.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "rchlab/kernels.hpp"

namespace rchlab {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

// Golden-section search for the minimum of fn on [a, b]; fn need not be
// unimodal there, in which case the result is still no worse than the best
// probe, which is all the bounds need.
double golden_min(const std::function<double(double)>& fn, double a, double b,
                  double tol) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = fn(c), fd = fn(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = fn(d);
    }
  }
  return fc <= fd ? fc : fd;
}

DeviationBounds grid_bounds(const Lift& F, int grid) {
  std::vector<double> xs(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i)
    xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / grid;
  std::vector<double> dev(xs.size());
  lift_eval_n(F, xs.data(), dev.data(), xs.size());
  kernels::ops().sub_n(dev.data(), xs.data(), dev.size());

  std::size_t imin = 0, imax = 0;
  for (std::size_t i = 1; i < dev.size(); ++i) {
    if (dev[i] < dev[imin]) imin = i;
    if (dev[i] > dev[imax]) imax = i;
  }
  auto devf = [&F](double x) { return F.deviation(x); };
  double h = 1.0 / grid;
  double lo = static_cast<double>(imin) / grid;
  double hi = static_cast<double>(imax) / grid;
  DeviationBounds b;
  b.m = std::min(dev[imin], golden_min(devf, lo - h, lo + h, 1e-10));
  b.M = -std::min(-dev[imax],
                  golden_min([&devf](double x) { return -devf(x); }, hi - h,
                             hi + h, 1e-10));
  b.grid = grid;
  b.refined = true;
  return b;
}

}  // namespace

DeviationBounds deviation_bounds(const Lift& F, int grid) {
  if (grid < 64) throw std::invalid_argument("deviation grid must be >= 64");
  switch (F.family()) {
    case Lift::Family::RigidRotation: {
      double beta = F.rotation_beta();
      return {beta, beta, 0, false};
    }
    case Lift::Family::Arnold: {
      double a = std::fabs(F.arnold_amp());
      double beta = F.arnold_beta();
      return {beta - a, beta + a, 0, false};
    }
    case Lift::Family::PiecewiseLinear: {
      // dev is piecewise linear, so extremal at the breakpoints
      const Lift::PwlData& d = F.pwl();
      DeviationBounds b;
      b.m = b.M = F.deviation(0.0);
      for (std::size_t i = 1; i < d.breaks.size(); ++i) {
        double v = F.deviation(d.breaks[i - 1]);
        double w = std::fma(d.slopes[i - 1], d.breaks[i], d.intercepts[i - 1]) -
                   d.breaks[i];  // left limit at the segment's right end
        b.m = std::min(b.m, std::min(v, w));
        b.M = std::max(b.M, std::max(v, w));
      }
      return b;
    }
    case Lift::Family::Composition:
    default:
      return grid_bounds(F, grid);
  }
}

struct Generator::Impl {
  enum class Kind { SymbolIndexed, ParametricArnold, Custom };
  Kind kind = Kind::SymbolIndexed;
  std::vector<Lift> table;
  std::function<double(const BasePoint&)> alpha_rule, beta_rule;
  std::function<Lift(const BasePoint&)> rule;
  bool validate = false;

  mutable std::vector<std::optional<DeviationBounds>> bounds;
  mutable std::mutex bounds_mutex;
};

Generator::Generator(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

Generator Generator::symbol_indexed(std::vector<Lift> table) {
  if (table.empty()) throw validation_error("symbol table must be non-empty");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::SymbolIndexed;
  impl->table.reserve(table.size());
  for (Lift& f : table) {
    Lift g = standardize(f);
    g.check_valid();
    impl->table.push_back(std::move(g));
  }
  impl->bounds.resize(impl->table.size());
  return Generator(std::move(impl));
}

Generator Generator::parametric_arnold(
    std::function<double(const BasePoint&)> alpha,
    std::function<double(const BasePoint&)> beta) {
  if (!alpha || !beta)
    throw validation_error("parameter rules must be callable");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::ParametricArnold;
  impl->alpha_rule = std::move(alpha);
  impl->beta_rule = std::move(beta);
  return Generator(std::move(impl));
}

Generator Generator::custom(std::function<Lift(const BasePoint&)> rule,
                            bool validate_lifts) {
  if (!rule) throw validation_error("fibre rule must be callable");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::Custom;
  impl->rule = std::move(rule);
  impl->validate = validate_lifts;
  return Generator(std::move(impl));
}

Lift Generator::lift_at(const BasePoint& omega) const {
  switch (impl_->kind) {
    case Impl::Kind::SymbolIndexed: {
      int s = omega.symbol(0);
      if (s < 0 || s >= static_cast<int>(impl_->table.size()))
        throw validation_error("symbol outside the fibre table");
      return impl_->table[static_cast<std::size_t>(s)];
    }
    case Impl::Kind::ParametricArnold:
      return standardize(
          Lift::arnold(impl_->alpha_rule(omega), impl_->beta_rule(omega)));
    case Impl::Kind::Custom:
    default: {
      Lift f = standardize(impl_->rule(omega));
      if (impl_->validate) f.check_valid();
      return f;
    }
  }
}

bool Generator::symbol_determined() const {
  return impl_->kind == Impl::Kind::SymbolIndexed;
}

int Generator::table_size() const {
  if (!symbol_determined())
    throw std::logic_error("generator is not symbol-determined");
  return static_cast<int>(impl_->table.size());
}

const Lift& Generator::lift_for_symbol(int s) const {
  if (!symbol_determined())
    throw std::logic_error("generator is not symbol-determined");
  if (s < 0 || s >= static_cast<int>(impl_->table.size()))
    throw std::invalid_argument("symbol outside the fibre table");
  return impl_->table[static_cast<std::size_t>(s)];
}

const DeviationBounds& Generator::bounds_for_symbol(int s) const {
  const Lift& f = lift_for_symbol(s);  // also validates s
  std::lock_guard<std::mutex> lock(impl_->bounds_mutex);
  auto& slot = impl_->bounds[static_cast<std::size_t>(s)];
  if (!slot) slot = deviation_bounds(f);
  return *slot;
}

OrbitRecord iterate(const Generator& g, const BasePoint& omega, CirclePoint x,
                    std::int64_t n, std::int64_t max_kept) {
  if (n < 0) throw std::invalid_argument("orbit length must be >= 0");
  if (max_kept < 2) throw std::invalid_argument("must keep at least endpoints");

  OrbitRecord rec;
  rec.x0 = x.value();
  rec.n = n;
  while (n / rec.stride + 1 > max_kept) rec.stride *= 2;
  rec.lifted.reserve(static_cast<std::size_t>(n / rec.stride + 1));

  bool fast = g.symbol_determined();
  double y = rec.x0;
  rec.lifted.push_back(y);
  for (std::int64_t i = 0; i < n; ++i) {
    if (fast) {
      y = g.lift_for_symbol(omega.symbol(i))(y);
    } else {
      y = g.lift_at(omega.shifted(i))(y);
    }
    if ((i + 1) % rec.stride == 0) rec.lifted.push_back(y);
  }
  rec.final_lifted = y;
  return rec;
}

}  // namespace rchlab
