#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rchlab/cycles.hpp"
#include "rchlab/generator.hpp"

namespace rchlab::zoo {

enum class SystemId {
  RigidRotationCycle,   // rotation by p/q over a one-point base
  BinaryCycle,          // two interval-exchange-like maps, random (1,2)-cycle
  CommonFixedPoint,     // two Arnold maps sharing the fixed point 1/4
  TwoPointIntegerRho,   // two-point base, period map tangent to the diagonal
  IrrationalPair,       // two rotations, no fixed points anywhere
};

struct Params {
  int p = 1;           // rigid rotation cycle: target rho = p/q
  int q = 2;
  double p0 = 0.5;     // Bernoulli symbol weights
  double p1 = 0.5;
  double a = 0.3;      // irrational pair rotation angles
  double b = default_b();
  int depth = 48;      // binary cycle expansion depth (<= 51: exact dyadics)

  static double default_b();  // sqrt(2)/10
};

// A claim the system makes about itself; check_claims measures it.
struct Claim {
  std::string name;
  double target = 0.0;
  std::string note;
};

struct System {
  SystemId id;
  std::string name;
  std::string description;
  Generator generator;
  BaseSystem base;
  std::optional<RandomCycle> cycle;
  std::optional<double> joint_fixed_point;
  std::vector<Claim> claims;
};

System make_system(SystemId id, const Params& par = {});
std::optional<SystemId> system_by_name(std::string_view name);
const char* system_name(SystemId id);
std::vector<std::string> system_names();

struct ClaimResult {
  std::string name;
  double target = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Measures every claim of the system.  Tolerances are pinned here: exact
// quantities (finite bases, symbol counts, vertex-exact bounds) compare
// exactly or to 1e-12; Monte Carlo means allow 4 standard errors plus the
// 2/n finite-orbit bias bound.
std::vector<ClaimResult> check_claims(const System& s, std::int64_t n,
                                      std::int64_t samples,
                                      std::uint64_t seed);

// a_j(omega) = j/2 + sum_{n=1..depth} omega_{-n} 2^{-(n+2)}, evaluated
// exactly (all dyadics for depth <= 51); truncation error 2^{-(depth+2)}.
double binary_cycle_point(int j, const BasePoint& omega, int depth);

}  // namespace rchlab::zoo
