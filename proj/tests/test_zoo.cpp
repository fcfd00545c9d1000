#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "rchlab/fixed_points.hpp"
#include "rchlab/rotation.hpp"
#include "rchlab/zoo.hpp"

using namespace rchlab;

namespace {

// Independent formulation of the binary-cycle base map g0: the lift runs
// through (0,1/2) -> (1/4,5/8) -> (1/2,1) -> (3/4,9/8) -> (1,3/2), slopes
// alternating 1/2 and 3/2 on quarter segments.
double g0_lift_oracle(double x) {
  double fl = std::floor(x);
  double t = x - fl;
  double y;
  if (t < 0.25)
    y = 0.5 + 0.5 * t;
  else if (t < 0.5)
    y = 0.625 + 1.5 * (t - 0.25);
  else if (t < 0.75)
    y = 1.0 + 0.5 * (t - 0.5);
  else
    y = 1.125 + 1.5 * (t - 0.75);
  return y + fl;
}

}  // namespace

TEST_SUITE("zoo") {

TEST_CASE("system names round-trip") {
  std::vector<std::string> names = zoo::system_names();
  CHECK(names.size() == 5);
  for (const std::string& n : names) {
    auto id = zoo::system_by_name(n);
    REQUIRE(id.has_value());
    CHECK(zoo::system_name(*id) == n);
    zoo::System s = zoo::make_system(*id);
    CHECK(s.name == n);
    CHECK_FALSE(s.claims.empty());
  }
  CHECK_FALSE(zoo::system_by_name("no-such-system").has_value());
}

TEST_CASE("the binary-cycle fibre maps match an independent oracle") {
  zoo::System s = zoo::make_system(zoo::SystemId::BinaryCycle);
  const Lift& g0 = s.generator.lift_for_symbol(0);
  const Lift& g1 = s.generator.lift_for_symbol(1);
  for (int i = 0; i <= 4000; ++i) {
    double x = -2.0 + 4.0 * static_cast<double>(i) / 4000.0;
    CHECK(std::fabs(g0(x) - g0_lift_oracle(x)) <= 1e-15);
    // g1 is g0 shifted by 1/8
    CHECK(std::fabs(g1(x) - (g0_lift_oracle(x) + 0.125)) <= 1e-15);
  }
  CHECK(g0(0.0) == 0.5);
  CHECK(g0(0.5) == 1.0);
  CHECK(g1(0.5) == 1.125);
}

TEST_CASE("binary cycle points evaluate their dyadic expansion exactly") {
  zoo::System s = zoo::make_system(zoo::SystemId::BinaryCycle);
  BasePoint zeros = BasePoint::with_periodic_symbols(s.base, {0});
  CHECK(zoo::binary_cycle_point(0, zeros, 48) == 0.0);
  CHECK(zoo::binary_cycle_point(1, zeros, 48) == 0.5);

  BasePoint ones = BasePoint::with_periodic_symbols(s.base, {1});
  CHECK(zoo::binary_cycle_point(0, ones, 48) == 0.25 - std::ldexp(1.0, -50));
  CHECK(zoo::binary_cycle_point(1, ones, 48) == 0.75 - std::ldexp(1.0, -50));

  // only omega_{-1} set: a_0 = 2^{-3}
  std::vector<int> pattern(64, 0);
  pattern[63] = 1;
  BasePoint one_back = BasePoint::with_periodic_symbols(s.base, pattern);
  CHECK(zoo::binary_cycle_point(0, one_back, 48) == 0.125);
  CHECK(zoo::binary_cycle_point(1, one_back, 48) == 0.625);

  CHECK_THROWS_AS(zoo::binary_cycle_point(0, zeros, 0), std::invalid_argument);
  CHECK_THROWS_AS(zoo::binary_cycle_point(0, zeros, 52), std::invalid_argument);
  CHECK_THROWS_AS(zoo::binary_cycle_point(2, zeros, 48), std::invalid_argument);
}

TEST_CASE("binary cycle points live in their quarter intervals") {
  zoo::System s = zoo::make_system(zoo::SystemId::BinaryCycle);
  for (int j = 0; j < 100; ++j) {
    BasePoint w = s.base.sample(derive_seed(321, static_cast<std::uint64_t>(j)));
    double a0 = zoo::binary_cycle_point(0, w, 48);
    double a1 = zoo::binary_cycle_point(1, w, 48);
    CHECK(a0 >= 0.0);
    CHECK(a0 <= 0.25);
    CHECK(a1 >= 0.5);
    CHECK(a1 <= 0.75);
    CHECK(a1 - a0 == 0.5);
  }
}

TEST_CASE("binary cycle points are covariant under the fibre maps") {
  zoo::System s = zoo::make_system(zoo::SystemId::BinaryCycle);
  for (int j = 0; j < 100; ++j) {
    BasePoint w = s.base.sample(derive_seed(99, static_cast<std::uint64_t>(j)));
    BasePoint sw = w.shifted(1);
    Lift f = s.generator.lift_at(w);
    double a0 = zoo::binary_cycle_point(0, w, 48);
    double a1 = zoo::binary_cycle_point(1, w, 48);
    CHECK(std::fabs(project(f(a0)) - zoo::binary_cycle_point(1, sw, 48)) <= 1e-9);
    CHECK(std::fabs(project(f(a1)) - zoo::binary_cycle_point(0, sw, 48)) <= 1e-9);
  }
}

TEST_CASE("the opposed arnold pair shares the fixed point 1/4 exactly") {
  zoo::System s = zoo::make_system(zoo::SystemId::CommonFixedPoint);
  REQUIRE(s.joint_fixed_point.has_value());
  CHECK(*s.joint_fixed_point == 0.25);
  const Lift& f0 = s.generator.lift_for_symbol(0);
  const Lift& f1 = s.generator.lift_for_symbol(1);
  CHECK(f0(0.25) == 0.25);  // deviation 0
  CHECK(f1(0.25) == 1.25);  // deviation 1
  CHECK(f0.arnold_amp() == -0.1);
  CHECK(f1.arnold_amp() == 0.1);
}

TEST_CASE("the two-point period maps fix the marked points") {
  zoo::System s = zoo::make_system(zoo::SystemId::TwoPointIntegerRho);
  const Lift& rot = s.generator.lift_for_symbol(0);
  const Lift& arn = s.generator.lift_for_symbol(1);
  CHECK(rot(0.15) == 0.25);
  CHECK(arn(0.25) == 0.15);
  // phase 0 period map fixes 0.15, phase 1 fixes 0.25, both exactly here
  CHECK(arn(rot(0.15)) == 0.15);
  CHECK(rot(arn(0.25)) == 0.25);
}

TEST_CASE("irrational pair parameters are validated") {
  zoo::Params par;
  par.b = 0.0;
  CHECK_THROWS_AS(zoo::make_system(zoo::SystemId::IrrationalPair, par),
                  std::invalid_argument);
  par.b = 0.31;  // >= min(a, 1-a) with a = 0.3
  CHECK_THROWS_AS(zoo::make_system(zoo::SystemId::IrrationalPair, par),
                  std::invalid_argument);
  par.a = 0.9;
  par.b = 0.15;  // >= 1 - a
  CHECK_THROWS_AS(zoo::make_system(zoo::SystemId::IrrationalPair, par),
                  std::invalid_argument);

  zoo::System s = zoo::make_system(zoo::SystemId::IrrationalPair);
  CHECK(s.generator.lift_for_symbol(0).rotation_beta() == 0.3 - std::sqrt(2.0) / 10.0);
  CHECK(s.generator.lift_for_symbol(1).rotation_beta() == 0.3 + std::sqrt(2.0) / 10.0);
}

TEST_CASE("rigid rotation cycle rejects nonpositive q") {
  zoo::Params par;
  par.q = 0;
  CHECK_THROWS_AS(zoo::make_system(zoo::SystemId::RigidRotationCycle, par),
                  std::invalid_argument);
}

TEST_CASE("every zoo system passes all of its claims") {
  for (const std::string& name : zoo::system_names()) {
    zoo::System s = zoo::make_system(*zoo::system_by_name(name));
    std::vector<zoo::ClaimResult> results = zoo::check_claims(s, 20000, 100, 3);
    REQUIRE(results.size() == s.claims.size());
    for (const zoo::ClaimResult& r : results) {
      CAPTURE(name);
      CAPTURE(r.name);
      CAPTURE(r.target);
      CAPTURE(r.measured);
      CAPTURE(r.tolerance);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("claim targets carry the exact frozen constants") {
  zoo::System bin = zoo::make_system(zoo::SystemId::BinaryCycle);
  double symbol0_min = -1, symbol0_max = -1, symbol1_min = -1, symbol1_max = -1;
  for (const zoo::Claim& c : bin.claims) {
    if (c.name == "symbol0_dev_min") symbol0_min = c.target;
    if (c.name == "symbol0_dev_max") symbol0_max = c.target;
    if (c.name == "symbol1_dev_min") symbol1_min = c.target;
    if (c.name == "symbol1_dev_max") symbol1_max = c.target;
  }
  CHECK(symbol0_min == 0.375);
  CHECK(symbol0_max == 0.5);
  CHECK(symbol1_min == 0.5);
  CHECK(symbol1_max == 0.625);

  zoo::System ip = zoo::make_system(zoo::SystemId::IrrationalPair);
  for (const zoo::Claim& c : ip.claims) {
    if (c.name == "mean_rho") CHECK(c.target == 0.3);
    if (c.name == "min_integer_gap")
      CHECK(c.target == 0.3 - std::sqrt(2.0) / 10.0);
  }
}

}  // TEST_SUITE
