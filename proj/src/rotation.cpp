#include "rchlab/rotation.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <string>

#include "rchlab/fixed_points.hpp"
#include "rchlab/kernels.hpp"
#include "rchlab/threading.hpp"

namespace rchlab {

namespace {

void require_even(std::int64_t n) {
  if (n < 2 || (n & 1) != 0)
    throw std::invalid_argument(
        "orbit length must be even and >= 2 (the Cauchy gap needs the half orbit)");
}

// Shared by the single-orbit and batched paths so their outputs agree bit
// for bit.
RotationEstimate finalize(double x0, double xhalf, double xn, std::int64_t n,
                          double msum, double Msum) {
  RotationEstimate e;
  e.n = n;
  e.rho = (xn - x0) / static_cast<double>(n);
  double rho_half = (xhalf - x0) / static_cast<double>(n / 2);
  e.cauchy_gap = std::fabs(e.rho - rho_half);
  e.m_bar = msum / static_cast<double>(n);
  e.M_bar = Msum / static_cast<double>(n);
  return e;
}

// Per-symbol stepping tables for symbol-determined generators.  Rotations
// fold into the Arnold kernel as amp = 0 (fma(0, s, beta) == beta exactly),
// piecewise tables pack behind shared breakpoints; anything else steps
// through the scalar Lift evaluators lane by lane.
struct StepPlan {
  enum class Kind { Rotation, Arnold, Pwl, Generic };
  Kind kind = Kind::Generic;
  int nsym = 0;
  std::vector<double> amp, beta;                      // Arnold / Rotation(beta)
  std::vector<double> breaks, slopes, intercepts;     // packed piecewise
  std::size_t nseg = 0;
  std::vector<double> mtab, Mtab;                     // per-symbol dev bounds
  bool symbol_determined = false;
};

StepPlan build_plan(const Generator& g) {
  StepPlan plan;
  if (!g.symbol_determined()) return plan;
  plan.symbol_determined = true;
  plan.kind = StepPlan::Kind::Generic;
  plan.nsym = g.table_size();
  plan.mtab.resize(static_cast<std::size_t>(plan.nsym));
  plan.Mtab.resize(static_cast<std::size_t>(plan.nsym));
  for (int s = 0; s < plan.nsym; ++s) {
    const DeviationBounds& b = g.bounds_for_symbol(s);
    plan.mtab[static_cast<std::size_t>(s)] = b.m;
    plan.Mtab[static_cast<std::size_t>(s)] = b.M;
  }

  bool all_rotation = true, all_rot_or_arnold = true, all_pwl = true;
  for (int s = 0; s < plan.nsym; ++s) {
    switch (g.lift_for_symbol(s).family()) {
      case Lift::Family::RigidRotation:
        break;
      case Lift::Family::Arnold:
        all_rotation = false;
        break;
      case Lift::Family::PiecewiseLinear:
        all_rotation = all_rot_or_arnold = false;
        break;
      default:
        all_rotation = all_rot_or_arnold = all_pwl = false;
        break;
    }
    if (g.lift_for_symbol(s).family() != Lift::Family::PiecewiseLinear)
      all_pwl = false;
  }

  if (all_rotation || all_rot_or_arnold) {
    plan.kind = all_rotation ? StepPlan::Kind::Rotation : StepPlan::Kind::Arnold;
    for (int s = 0; s < plan.nsym; ++s) {
      const Lift& f = g.lift_for_symbol(s);
      if (f.family() == Lift::Family::RigidRotation) {
        plan.amp.push_back(0.0);
        plan.beta.push_back(f.rotation_beta());
      } else {
        plan.amp.push_back(f.arnold_amp());
        plan.beta.push_back(f.arnold_beta());
      }
    }
    return plan;
  }

  if (all_pwl) {
    const Lift::PwlData& first = g.lift_for_symbol(0).pwl();
    bool shared = true;
    for (int s = 1; s < plan.nsym && shared; ++s)
      shared = g.lift_for_symbol(s).pwl().breaks == first.breaks;
    if (shared) {
      plan.kind = StepPlan::Kind::Pwl;
      plan.breaks = first.breaks;
      plan.nseg = first.slopes.size();
      for (int s = 0; s < plan.nsym; ++s) {
        const Lift::PwlData& d = g.lift_for_symbol(s).pwl();
        plan.slopes.insert(plan.slopes.end(), d.slopes.begin(), d.slopes.end());
        plan.intercepts.insert(plan.intercepts.end(), d.intercepts.begin(),
                               d.intercepts.end());
      }
    }
  }
  return plan;
}

void run_lanes(const Generator& g, const StepPlan& plan,
               std::span<const BasePoint> lanes, double x0, std::int64_t n,
               RotationEstimate* out) {
  const std::size_t L = lanes.size();
  if (L == 0) return;
  const kernels::Ops& ops = kernels::ops();

  std::vector<double> xs(L, x0), xhalf(L), msum(L, 0.0), Msum(L, 0.0);
  std::vector<double> a(L), b(L);
  std::vector<std::int32_t> syms(L), pbase(L);
  kernels::PwlTable packed{plan.breaks.data(), plan.slopes.data(),
                           plan.intercepts.data(), plan.nseg};

  const std::int64_t half = n / 2;
  for (std::int64_t i = 0; i < n; ++i) {
    if (plan.symbol_determined) {
      for (std::size_t l = 0; l < L; ++l)
        syms[l] = lanes[l].symbol(i);
      for (std::size_t l = 0; l < L; ++l) {
        auto s = static_cast<std::size_t>(syms[l]);
        msum[l] += plan.mtab[s];
        Msum[l] += plan.Mtab[s];
      }
    }
    switch (plan.kind) {
      case StepPlan::Kind::Rotation:
        for (std::size_t l = 0; l < L; ++l)
          b[l] = plan.beta[static_cast<std::size_t>(syms[l])];
        ops.add_n(xs.data(), b.data(), L);
        break;
      case StepPlan::Kind::Arnold:
        for (std::size_t l = 0; l < L; ++l) {
          auto s = static_cast<std::size_t>(syms[l]);
          a[l] = plan.amp[s];
          b[l] = plan.beta[s];
        }
        ops.arnold_step_n(xs.data(), a.data(), b.data(), L);
        break;
      case StepPlan::Kind::Pwl:
        for (std::size_t l = 0; l < L; ++l)
          pbase[l] = syms[l] * static_cast<std::int32_t>(plan.nseg);
        ops.pwl_step_n(xs.data(), packed, pbase.data(), L);
        break;
      case StepPlan::Kind::Generic:
      default:
        for (std::size_t l = 0; l < L; ++l) {
          if (plan.symbol_determined) {
            xs[l] = g.lift_for_symbol(syms[l])(xs[l]);
          } else {
            Lift f = g.lift_at(lanes[l].shifted(i));
            DeviationBounds db = deviation_bounds(f);
            msum[l] += db.m;
            Msum[l] += db.M;
            xs[l] = f(xs[l]);
          }
        }
        break;
    }
    if (i + 1 == half) xhalf = xs;
  }
  for (std::size_t l = 0; l < L; ++l)
    out[l] = finalize(x0, xhalf[l], xs[l], n, msum[l], Msum[l]);
}

}  // namespace

RotationEstimate estimate_rho(const Generator& g, const BasePoint& omega,
                              CirclePoint x, std::int64_t n) {
  require_even(n);
  double x0 = x.value();
  double y = x0, yhalf = x0, msum = 0.0, Msum = 0.0;
  const std::int64_t half = n / 2;
  if (g.symbol_determined()) {
    int nsym = g.table_size();
    std::vector<double> mtab(static_cast<std::size_t>(nsym)),
        Mtab(static_cast<std::size_t>(nsym));
    for (int s = 0; s < nsym; ++s) {
      const DeviationBounds& b = g.bounds_for_symbol(s);
      mtab[static_cast<std::size_t>(s)] = b.m;
      Mtab[static_cast<std::size_t>(s)] = b.M;
    }
    for (std::int64_t i = 0; i < n; ++i) {
      auto s = static_cast<std::size_t>(omega.symbol(i));
      msum += mtab[s];
      Msum += Mtab[s];
      y = g.lift_for_symbol(static_cast<int>(s))(y);
      if (i + 1 == half) yhalf = y;
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      Lift f = g.lift_at(omega.shifted(i));
      DeviationBounds db = deviation_bounds(f);
      msum += db.m;
      Msum += db.M;
      y = f(y);
      if (i + 1 == half) yhalf = y;
    }
  }
  return finalize(x0, yhalf, y, n, msum, Msum);
}

std::vector<RotationEstimate> estimate_rho_batch(
    const Generator& g, std::span<const BasePoint> omegas, CirclePoint x,
    std::int64_t n) {
  require_even(n);
  std::vector<RotationEstimate> out(omegas.size());
  if (omegas.empty()) return out;
  StepPlan plan = build_plan(g);
  parallel_for(static_cast<std::int64_t>(omegas.size()),
               [&](std::int64_t lo, std::int64_t hi) {
                 run_lanes(g, plan,
                           omegas.subspan(static_cast<std::size_t>(lo),
                                          static_cast<std::size_t>(hi - lo)),
                           x.value(), n, out.data() + lo);
               });
  return out;
}

namespace {

MeanRotationEstimate summarize(std::span<const double> values) {
  MeanRotationEstimate r;
  r.samples = static_cast<std::int64_t>(values.size());
  r.mean = pairwise_sum(values) / static_cast<double>(values.size());
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      double d = values[i] - r.mean;
      sq[i] = d * d;
    }
    double var = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
    r.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return r;
}

// Composed lift of one full return of a finite base point.
Lift period_map(const Generator& g, const BaseSystem& base, int point) {
  int period = 1;
  const std::vector<int>& perm = base.permutation();
  for (int v = perm[static_cast<std::size_t>(point)]; v != point;
       v = perm[static_cast<std::size_t>(v)])
    ++period;
  BasePoint pt = base.point(point);
  std::vector<Lift> parts;
  parts.reserve(static_cast<std::size_t>(period));
  for (int k = 0; k < period; ++k)
    parts.push_back(g.lift_at(pt.shifted(k)));
  return compose(std::move(parts));
}

int period_of(const BaseSystem& base, int point) {
  int period = 1;
  const std::vector<int>& perm = base.permutation();
  for (int v = perm[static_cast<std::size_t>(point)]; v != point;
       v = perm[static_cast<std::size_t>(v)])
    ++period;
  return period;
}

}  // namespace

MeanRotationEstimate estimate_mean_rho(const Generator& g,
                                       const BaseSystem& base, std::int64_t n,
                                       std::int64_t samples,
                                       std::uint64_t seed, CirclePoint x) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  if (base.kind() == BaseSystem::Kind::Bernoulli) {
    std::vector<BasePoint> omegas;
    omegas.reserve(static_cast<std::size_t>(samples));
    for (std::int64_t j = 0; j < samples; ++j)
      omegas.push_back(base.sample(derive_seed(seed, static_cast<std::uint64_t>(j))));
    std::vector<RotationEstimate> ests = estimate_rho_batch(g, omegas, x, n);
    std::vector<double> rhos(ests.size());
    for (std::size_t j = 0; j < ests.size(); ++j) rhos[j] = ests[j].rho;
    return summarize(rhos);
  }

  MeanRotationEstimate r;
  r.exact = true;
  r.samples = base.point_count();
  double mean = 0.0;
  for (int i = 0; i < base.point_count(); ++i) {
    int period = period_of(base, i);
    double rho_i =
        deterministic_rho(period_map(g, base, i), n) / static_cast<double>(period);
    mean += base.weights()[static_cast<std::size_t>(i)] * rho_i;
  }
  r.mean = mean;
  return r;
}

MeanRotationEstimate mean_rho_via_fixed_point(
    const Generator& g, const BaseSystem& base,
    const std::function<double(const BasePoint&)>& a0, std::int64_t samples,
    std::uint64_t seed, double tol) {
  if (!a0) throw std::invalid_argument("need a point selection");
  if (samples < 1) throw std::invalid_argument("need at least one sample");

  auto deviation_at = [&](const BasePoint& omega) {
    double A = a0(omega);
    if (!(A >= 0.0 && A < 1.0))
      throw precondition_error("point selection must take values in [0,1)");
    double target = a0(omega.shifted(1));
    double y = g.lift_at(omega)(A);
    double r = std::fabs(project(y) - target);
    double dist = std::min(r, 1.0 - r);
    if (!(dist <= tol))
      throw precondition_error(
          "selection is not equivariantly fixed: |f(a0(omega)) - a0(sigma omega)| = " +
          std::to_string(dist));
    return y - A;
  };

  if (base.kind() == BaseSystem::Kind::Bernoulli) {
    std::vector<double> devs(static_cast<std::size_t>(samples));
    for (std::int64_t j = 0; j < samples; ++j)
      devs[static_cast<std::size_t>(j)] =
          deviation_at(base.sample(derive_seed(seed, static_cast<std::uint64_t>(j))));
    return summarize(devs);
  }

  MeanRotationEstimate r;
  r.exact = true;
  r.samples = base.point_count();
  for (int i = 0; i < base.point_count(); ++i)
    r.mean += base.weights()[static_cast<std::size_t>(i)] *
              deviation_at(base.point(i));
  return r;
}

double deterministic_rho(const Lift& F, std::int64_t n, int grid) {
  switch (F.family()) {
    case Lift::Family::RigidRotation:
      return F.rotation_beta();
    case Lift::Family::Arnold: {
      double amp = std::fabs(F.arnold_amp());
      double beta = F.arnold_beta();
      double lo = std::ceil(beta - amp), hi = std::floor(beta + amp);
      if (lo > hi) break;  // no integer level attained
      if (lo != hi)
        throw validation_error("deviation attains two integers; not a lift");
      return lo;
    }
    case Lift::Family::PiecewiseLinear: {
      DeviationBounds b = deviation_bounds(F);
      double lo = std::ceil(b.m), hi = std::floor(b.M);
      if (lo > hi) break;
      if (lo != hi)
        throw validation_error("deviation attains two integers; not a lift");
      return lo;
    }
    case Lift::Family::Composition:
    default: {
      DeviationBounds b = deviation_bounds(F, grid);
      double lo = std::ceil(b.m - 1e-9), hi = std::floor(b.M + 1e-9);
      for (double k = lo; k <= hi; k += 1.0) {
        if (!integer_deviation_roots(F, static_cast<int>(k), grid, 1e-12)
                 .empty())
          return k;
      }
      break;
    }
  }
  // no integer level: fall back to the orbit average
  if (n < 1) throw std::invalid_argument("orbit length must be >= 1");
  double y = 0.0;
  for (std::int64_t i = 0; i < n; ++i) y = F(y);
  return y / static_cast<double>(n);
}

}  // namespace rchlab
