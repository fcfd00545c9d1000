#include "rchlab/zoo.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rchlab/fixed_points.hpp"
#include "rchlab/rotation.hpp"

namespace rchlab::zoo {

namespace {

constexpr double kPi = 3.141592653589793;

Lift g0_lift() {
  std::vector<std::pair<double, double>> v = {
      {0.0, 0.5}, {0.25, 0.625}, {0.5, 0.0}, {0.75, 0.125}, {1.0, 0.5}};
  return piecewise_linear_lift(v);
}

Lift g1_lift() {  // g0 rotated by 1/8
  std::vector<std::pair<double, double>> v = {
      {0.0, 0.625}, {0.25, 0.75}, {0.5, 0.125}, {0.75, 0.25}, {1.0, 0.625}};
  return piecewise_linear_lift(v);
}

BaseSystem coin(const Params& par) {
  return BaseSystem::bernoulli({par.p0, par.p1});
}

double integer_gap(const DeviationBounds& b) {
  if (std::ceil(b.m) <= b.M) return 0.0;
  return std::min(b.m - std::floor(b.m), std::ceil(b.M) - b.M);
}

double residual_tol(const RandomCycle& c) {
  return std::max(1e-12, 16.0 * c.truncation);
}

Lift period_map_at(const System& s, int i) {
  const std::vector<int>& perm = s.base.permutation();
  int period = 1;
  for (int v = perm[static_cast<std::size_t>(i)]; v != i;
       v = perm[static_cast<std::size_t>(v)])
    ++period;
  BasePoint pt = s.base.point(i);
  std::vector<Lift> parts;
  parts.reserve(static_cast<std::size_t>(period));
  for (int k = 0; k < period; ++k)
    parts.push_back(s.generator.lift_at(pt.shifted(k)));
  return compose(std::move(parts));
}

}  // namespace

double Params::default_b() { return std::sqrt(2.0) / 10.0; }

double binary_cycle_point(int j, const BasePoint& omega, int depth) {
  if (j < 0 || j > 1)
    throw std::invalid_argument("the binary cycle has two points");
  if (depth < 1 || depth > 51)
    throw std::invalid_argument("depth must lie in [1, 51]");
  double t = 0.0;
  for (int i = depth; i >= 1; --i)
    t = (t + static_cast<double>(omega.symbol(-i))) * 0.5;
  return 0.5 * static_cast<double>(j) + 0.25 * t;
}

System make_system(SystemId id, const Params& par) {
  switch (id) {
    case SystemId::RigidRotationCycle: {
      if (par.q < 1) throw std::invalid_argument("q must be >= 1");
      int q = par.q;
      int p = ((par.p % q) + q) % q;
      double beta = static_cast<double>(p) / static_cast<double>(q);
      System s{id,
               "rigid-rotation-cycle",
               "rotation by p/q over a one-point base; the lattice {j/q} is a "
               "(p,q)-cycle",
               Generator::symbol_indexed({Lift::rotation(beta)}),
               BaseSystem::singleton(),
               {},
               {},
               {}};
      std::vector<double> pts(static_cast<std::size_t>(q));
      for (int j = 0; j < q; ++j)
        pts[static_cast<std::size_t>(j)] =
            static_cast<double>(j) / static_cast<double>(q);
      s.cycle = RandomCycle::constant(pts, p);
      s.claims = {
          {"mean_rho", beta, "rotation number is exactly p/q"},
          {"cycle_shift", static_cast<double>(p), "images shift indices by p"},
          {"cycle_period", static_cast<double>(q / std::gcd(p, q)),
           "tau has order q/gcd(p,q)"},
          {"cycle_residual", 0.0, "the lattice is invariant"},
          {"chi_residual", 0.0, "lift-level cycle identity"},
      };
      return s;
    }

    case SystemId::BinaryCycle: {
      System s{id,
               "binary-cycle",
               "two piecewise-linear maps drawn by coin flips; the binary "
               "expansion of the past builds a random (1,2)-cycle",
               Generator::symbol_indexed({g0_lift(), g1_lift()}),
               coin(par),
               {},
               {},
               {}};
      int depth = par.depth;
      double trunc = std::ldexp(1.0, -(depth + 2));
      std::vector<std::function<double(const BasePoint&)>> pts;
      for (int j = 0; j < 2; ++j)
        pts.push_back([j, depth](const BasePoint& omega) {
          return binary_cycle_point(j, omega, depth);
        });
      s.cycle = RandomCycle::shift_cycle(std::move(pts), 1, trunc);
      s.claims = {
          {"mean_rho", 0.5, "the (1,2)-cycle forces rho = 1/2"},
          {"cycle_shift", 1.0, "images swap the two points"},
          {"cycle_residual", 0.0, "covariance of the expansion points"},
          {"chi_residual", 0.0, "lift-level cycle identity"},
          {"fixed_point_probability", 0.0, "deviations stay in [3/8, 5/8]"},
          {"symbol0_dev_min", 0.375, "inf of g0's deviation"},
          {"symbol0_dev_max", 0.5, "sup of g0's deviation"},
          {"symbol1_dev_min", 0.5, "inf of g1's deviation"},
          {"symbol1_dev_max", 0.625, "sup of g1's deviation"},
      };
      return s;
    }

    case SystemId::CommonFixedPoint: {
      System s{id,
               "common-fixed-point",
               "Arnold maps with beta = 1/10 and 9/10 sharing the fixed "
               "point 1/4 at lift levels 0 and 1; rho equals the weight of "
               "the level-1 map",
               Generator::symbol_indexed({Lift::arnold(-kPi / 5.0, 0.1),
                                          Lift::arnold(kPi / 5.0, 0.9)}),
               coin(par),
               {},
               {},
               {}};
      s.joint_fixed_point = 0.25;
      s.claims = {
          {"mean_rho", par.p1, "rho = P(level-1 map)"},
          {"fixed_point_probability", 1.0, "every fibre map has fixed points"},
          {"joint_fixed_point_residual", 0.0, "1/4 is fixed by both maps"},
      };
      return s;
    }

    case SystemId::TwoPointIntegerRho: {
      System s{id,
               "two-point-integer-rho",
               "two-point base swapping a rotation and an Arnold map; the "
               "period maps are tangent to the identity, rho = 0",
               Generator::symbol_indexed({Lift::rotation(0.1),
                                          Lift::arnold(-kPi / 5.0, 0.0)}),
               BaseSystem::finite_permutation({1, 0}, {0.5, 0.5}),
               {},
               {},
               {}};
      std::vector<std::function<double(const BasePoint&)>> pts;
      pts.push_back([](const BasePoint& omega) {
        return omega.symbol(0) == 0 ? 0.15 : 0.25;
      });
      s.cycle = RandomCycle::shift_cycle(std::move(pts), 0, 0.0);
      s.claims = {
          {"mean_rho", 0.0, "tangential fixed points of the period maps"},
          {"fixed_point_probability", 0.5, "only the Arnold fibre has one"},
          {"cycle_residual", 0.0, "the pair {0.15, 0.25} is equivariant"},
          {"period_map_fixed_point_0", 0.15, "two-step map at point 0"},
          {"period_map_fixed_point_1", 0.25, "two-step map at point 1"},
          {"period_map_dev_min", 0.0, "period deviation is tangent to 0"},
          {"period_map_dev_max", 0.2, "period deviation peaks at 1/5"},
      };
      return s;
    }

    case SystemId::IrrationalPair: {
      if (!(par.b > 0.0 && par.b < std::min(par.a, 1.0 - par.a)))
        throw std::invalid_argument("need b in (0, min{a, 1-a})");
      double lo = par.a - par.b, hi = par.a + par.b;
      System s{id,
               "irrational-pair",
               "coin flips between rotations by a-b and a+b; with a fair "
               "coin rho is a, and no fibre map ever has a fixed point",
               Generator::symbol_indexed(
                   {Lift::rotation(lo), Lift::rotation(hi)}),
               coin(par),
               {},
               {},
               {}};
      double gap = std::min(std::min(lo, 1.0 - lo), std::min(hi, 1.0 - hi));
      s.claims = {
          {"mean_rho", par.p0 * lo + par.p1 * hi, "rho averages the angles"},
          {"fixed_point_probability", 0.0, "deviations avoid the integers"},
          {"min_integer_gap", gap, "margin between deviations and integers"},
      };
      return s;
    }
  }
  throw std::invalid_argument("unknown system id");
}

const char* system_name(SystemId id) {
  switch (id) {
    case SystemId::RigidRotationCycle: return "rigid-rotation-cycle";
    case SystemId::BinaryCycle: return "binary-cycle";
    case SystemId::CommonFixedPoint: return "common-fixed-point";
    case SystemId::TwoPointIntegerRho: return "two-point-integer-rho";
    case SystemId::IrrationalPair: return "irrational-pair";
  }
  throw std::invalid_argument("unknown system id");
}

std::optional<SystemId> system_by_name(std::string_view name) {
  for (SystemId id :
       {SystemId::RigidRotationCycle, SystemId::BinaryCycle,
        SystemId::CommonFixedPoint, SystemId::TwoPointIntegerRho,
        SystemId::IrrationalPair})
    if (name == system_name(id)) return id;
  return std::nullopt;
}

std::vector<std::string> system_names() {
  return {"rigid-rotation-cycle", "binary-cycle", "common-fixed-point",
          "two-point-integer-rho", "irrational-pair"};
}

std::vector<ClaimResult> check_claims(const System& s, std::int64_t n,
                                      std::int64_t samples,
                                      std::uint64_t seed) {
  std::vector<ClaimResult> out;
  out.reserve(s.claims.size());
  for (const Claim& c : s.claims) {
    ClaimResult r;
    r.name = c.name;
    r.target = c.target;
    bool pass_set = false;

    if (c.name == "mean_rho") {
      MeanRotationEstimate m = estimate_mean_rho(s.generator, s.base, n,
                                                 samples, seed);
      r.measured = m.mean;
      r.tolerance =
          m.exact ? 1e-12 : 4.0 * m.std_error + 2.0 / static_cast<double>(n);
    } else if (c.name == "fixed_point_probability") {
      ProbabilityEstimate p =
          fixed_point_probability(s.generator, s.base, samples, seed);
      r.measured = p.p;
      r.tolerance = p.exact ? 0.0 : 4.0 * p.std_error +
                                        1.0 / static_cast<double>(samples);
    } else if (c.name == "cycle_shift") {
      r.measured = infer_shift(s.generator, s.base, *s.cycle, samples, seed,
                               residual_tol(*s.cycle));
      r.tolerance = 0.0;
    } else if (c.name == "cycle_period") {
      r.measured = cycle_period(*s.cycle);
      r.tolerance = 0.0;
    } else if (c.name == "cycle_residual") {
      CycleCheck chk = verify_cycle(s.generator, s.base, *s.cycle, samples,
                                    seed, residual_tol(*s.cycle));
      r.measured = chk.max_residual;
      r.tolerance = residual_tol(*s.cycle);
      r.pass = chk.pass();
      pass_set = true;
    } else if (c.name == "chi_residual") {
      r.measured = chi_identity_residual(s.generator, s.base, *s.cycle,
                                         samples, seed);
      r.tolerance = residual_tol(*s.cycle);
    } else if (c.name == "joint_fixed_point_residual") {
      double x = *s.joint_fixed_point;
      double worst = 0.0;
      for (int sym = 0; sym < s.generator.table_size(); ++sym) {
        double d = std::fabs(project(s.generator.lift_for_symbol(sym)(x)) - x);
        worst = std::max(worst, std::min(d, 1.0 - d));
      }
      r.measured = worst;
      r.tolerance = 1e-12;
    } else if (c.name == "period_map_fixed_point_0" ||
               c.name == "period_map_fixed_point_1") {
      int i = c.name.back() - '0';
      FixedPointReport rep = find_fixed_points(period_map_at(s, i), 4096);
      r.measured = std::numeric_limits<double>::quiet_NaN();
      for (double p : rep.points)
        if (std::isnan(r.measured) ||
            std::fabs(p - c.target) < std::fabs(r.measured - c.target))
          r.measured = p;
      r.tolerance = 1e-6;
    } else if (c.name == "period_map_dev_min" ||
               c.name == "period_map_dev_max") {
      DeviationBounds b = deviation_bounds(period_map_at(s, 0));
      r.measured = c.name == "period_map_dev_min" ? b.m : b.M;
      r.tolerance = 1e-9;
    } else if (c.name.rfind("symbol", 0) == 0) {
      int sym = c.name[6] - '0';
      const DeviationBounds& b = s.generator.bounds_for_symbol(sym);
      r.measured = c.name.find("min") != std::string::npos ? b.m : b.M;
      r.tolerance = 1e-15;
    } else if (c.name == "min_integer_gap") {
      double gap = std::numeric_limits<double>::infinity();
      for (int sym = 0; sym < s.generator.table_size(); ++sym)
        gap = std::min(gap, integer_gap(s.generator.bounds_for_symbol(sym)));
      r.measured = gap;
      r.tolerance = 1e-12;
    } else {
      throw std::logic_error("no measurement for claim: " + c.name);
    }

    if (!pass_set) r.pass = std::fabs(r.measured - r.target) <= r.tolerance;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rchlab::zoo
