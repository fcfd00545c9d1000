#include "rchlab/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rchlab/rotation.hpp"

namespace rchlab {

namespace {

double circle_dist(double a, double b) {
  double r = std::fabs(a - b);
  return std::min(r, 1.0 - r);
}

void validate_cycle(const RandomCycle& c) {
  if (c.q < 1) throw std::invalid_argument("cycle needs q >= 1 points");
  if (static_cast<int>(c.points.size()) != c.q)
    throw std::invalid_argument("cycle has the wrong number of points");
  if (c.p < 0 || c.p >= c.q)
    throw std::invalid_argument("cycle shift must lie in [0, q)");
  if (static_cast<int>(c.tau.size()) != c.q)
    throw std::invalid_argument("cycle permutation has the wrong size");
  for (int j = 0; j < c.q; ++j) {
    if (!c.points[static_cast<std::size_t>(j)])
      throw std::invalid_argument("cycle point is empty");
    if (c.tau[static_cast<std::size_t>(j)] != (j + c.p) % c.q)
      throw std::invalid_argument("cycle permutation is not the shift by p");
  }
  if (!(c.truncation >= 0.0))
    throw std::invalid_argument("truncation must be >= 0");
}

std::vector<BasePoint> draw(const BaseSystem& base, std::int64_t samples,
                            std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  std::vector<BasePoint> out;
  if (base.kind() == BaseSystem::Kind::Bernoulli) {
    out.reserve(static_cast<std::size_t>(samples));
    for (std::int64_t j = 0; j < samples; ++j)
      out.push_back(base.sample(derive_seed(seed, static_cast<std::uint64_t>(j))));
  } else {
    out.reserve(static_cast<std::size_t>(base.point_count()));
    for (int i = 0; i < base.point_count(); ++i) out.push_back(base.point(i));
  }
  return out;
}

bool ordered_values(const std::vector<double>& a) {
  if (a.front() < 0.0 || a.back() >= 1.0) return false;
  for (std::size_t j = 1; j < a.size(); ++j)
    if (!(a[j] > a[j - 1])) return false;
  return true;
}

void eval_points(const RandomCycle& c, const BasePoint& omega,
                 std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(c.q));
  for (int j = 0; j < c.q; ++j)
    out[static_cast<std::size_t>(j)] =
        c.points[static_cast<std::size_t>(j)](omega);
}

}  // namespace

RandomCycle RandomCycle::shift_cycle(
    std::vector<std::function<double(const BasePoint&)>> pts, int p,
    double truncation) {
  RandomCycle c;
  c.q = static_cast<int>(pts.size());
  if (c.q < 1) throw std::invalid_argument("cycle needs q >= 1 points");
  c.p = ((p % c.q) + c.q) % c.q;
  c.truncation = truncation;
  c.points = std::move(pts);
  c.tau.resize(static_cast<std::size_t>(c.q));
  for (int j = 0; j < c.q; ++j)
    c.tau[static_cast<std::size_t>(j)] = (j + c.p) % c.q;
  validate_cycle(c);
  return c;
}

RandomCycle RandomCycle::constant(const std::vector<double>& pts, int p) {
  std::vector<std::function<double(const BasePoint&)>> fns;
  fns.reserve(pts.size());
  for (double v : pts)
    fns.push_back([v](const BasePoint&) { return v; });
  return shift_cycle(std::move(fns), p, 0.0);
}

CycleCheck verify_cycle(const Generator& g, const BaseSystem& base,
                        const RandomCycle& c, std::int64_t samples,
                        std::uint64_t seed, double tol) {
  validate_cycle(c);
  if (!(tol > c.truncation))
    throw std::invalid_argument("tol must exceed the cycle truncation error");
  std::vector<BasePoint> omegas = draw(base, samples, seed);

  CycleCheck chk;
  chk.ordered = chk.covariant = true;
  chk.samples = static_cast<std::int64_t>(omegas.size());
  std::vector<double> a, b;
  for (const BasePoint& omega : omegas) {
    BasePoint next = omega.shifted(1);
    eval_points(c, omega, a);
    eval_points(c, next, b);
    if (!ordered_values(a) || !ordered_values(b)) chk.ordered = false;
    Lift f = g.lift_at(omega);
    for (int j = 0; j < c.q; ++j) {
      double r = circle_dist(project(f(a[static_cast<std::size_t>(j)])),
                             b[static_cast<std::size_t>(c.tau[static_cast<std::size_t>(j)])]);
      chk.max_residual = std::max(chk.max_residual, r);
    }
  }
  chk.covariant = chk.max_residual <= tol;
  return chk;
}

int infer_shift(const Generator& g, const BaseSystem& base,
                const RandomCycle& c, std::int64_t samples,
                std::uint64_t seed, double tol) {
  validate_cycle(c);
  if (!(tol > c.truncation))
    throw std::invalid_argument("tol must exceed the cycle truncation error");
  std::vector<BasePoint> omegas = draw(base, samples, seed);

  int shift = -1;
  std::vector<double> a, b;
  for (const BasePoint& omega : omegas) {
    eval_points(c, omega, a);
    eval_points(c, omega.shifted(1), b);
    Lift f = g.lift_at(omega);
    for (int j = 0; j < c.q; ++j) {
      double y = project(f(a[static_cast<std::size_t>(j)]));
      int best = 0;
      double bestd = circle_dist(y, b[0]);
      for (int m = 1; m < c.q; ++m) {
        double d = circle_dist(y, b[static_cast<std::size_t>(m)]);
        if (d < bestd) {
          bestd = d;
          best = m;
        }
      }
      if (bestd > tol)
        throw cycle_error("image of a cycle point misses every cycle point");
      int k = ((best - j) % c.q + c.q) % c.q;
      if (shift < 0)
        shift = k;
      else if (shift != k)
        throw cycle_error("images are not a uniform index shift");
    }
  }
  return shift;
}

int cycle_period(const RandomCycle& c) {
  validate_cycle(c);
  return c.q / std::gcd(c.p, c.q);
}

std::vector<RandomCycle> decompose_cycle(const RandomCycle& c) {
  validate_cycle(c);
  int d = std::gcd(c.p, c.q);
  std::vector<RandomCycle> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::vector<std::function<double(const BasePoint&)>> pts;
    pts.reserve(static_cast<std::size_t>(c.q / d));
    for (int j = 0; j < c.q / d; ++j)
      pts.push_back(c.points[static_cast<std::size_t>(i + j * d)]);
    out.push_back(RandomCycle::shift_cycle(std::move(pts), c.p / d, c.truncation));
  }
  return out;
}

double chi_identity_residual(const Generator& g, const BaseSystem& base,
                             const RandomCycle& c, std::int64_t samples,
                             std::uint64_t seed) {
  validate_cycle(c);
  std::vector<BasePoint> omegas = draw(base, samples, seed);
  double worst = 0.0;
  std::vector<double> a, b;
  for (const BasePoint& omega : omegas) {
    eval_points(c, omega, a);
    eval_points(c, omega.shifted(1), b);
    Lift f = g.lift_at(omega);
    for (int j = 0; j < c.q; ++j) {
      double chi = (j + c.p >= c.q) ? 1.0 : 0.0;
      double r = std::fabs(f(a[static_cast<std::size_t>(j)]) -
                           b[static_cast<std::size_t>(c.tau[static_cast<std::size_t>(j)])] -
                           chi);
      worst = std::max(worst, r);
    }
  }
  return worst;
}

int count_lattice_hits(int p, int q) {
  if (q < 1 || p < 0 || p >= q)
    throw std::invalid_argument("need 0 <= p < q");
  int hits = 0;
  for (int i = 1; i <= q; ++i)
    if (static_cast<int>((static_cast<std::int64_t>(i) * p) % q) < p) ++hits;
  return hits;
}

RationalRotationReport rational_rotation_check(
    const Generator& g, const BaseSystem& base, const RandomCycle& c,
    std::int64_t n, std::int64_t samples, std::uint64_t seed,
    int orbit_multiples) {
  validate_cycle(c);
  if (orbit_multiples < 1)
    throw std::invalid_argument("need at least one orbit multiple");
  std::vector<BasePoint> omegas = draw(base, samples, seed);

  RationalRotationReport rep;
  rep.target = static_cast<double>(c.p) / static_cast<double>(c.q);
  rep.samples = static_cast<std::int64_t>(omegas.size());

  auto step = [&](const BasePoint& omega, std::int64_t i, double y) {
    if (g.symbol_determined())
      return g.lift_for_symbol(omega.symbol(i))(y);
    return g.lift_at(omega.shifted(i))(y);
  };

  for (const BasePoint& omega : omegas) {
    double a0 = c.points[0](omega);
    RotationEstimate est = estimate_rho(g, omega, CirclePoint(project(a0)), n);
    rep.max_rho_error =
        std::max(rep.max_rho_error, std::fabs(est.rho - rep.target));

    double y = a0;
    std::int64_t t = 0;
    for (int m = 1; m <= orbit_multiples; ++m) {
      for (int s = 0; s < c.q; ++s, ++t) y = step(omega, t, y);
      double expect = c.points[0](omega.shifted(t)) +
                      static_cast<double>(m) * static_cast<double>(c.p);
      rep.max_orbit_residual =
          std::max(rep.max_orbit_residual, std::fabs(y - expect));
    }
  }
  return rep;
}

}  // namespace rchlab
