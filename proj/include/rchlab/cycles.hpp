#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rchlab/generator.hpp"

namespace rchlab {

struct cycle_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// q measurable circle points a_0(omega) < ... < a_{q-1}(omega) meant to
// satisfy f_omega(a_j(omega)) = a_{tau(j)}(sigma omega) with
// tau(j) = (j + p) mod q.
struct RandomCycle {
  int q = 0;
  int p = 0;                // index shift per step, normalized into [0, q)
  double truncation = 0.0;  // worst-case evaluation error of the points
  std::vector<std::function<double(const BasePoint&)>> points;
  std::vector<int> tau;

  static RandomCycle shift_cycle(
      std::vector<std::function<double(const BasePoint&)>> pts, int p,
      double truncation = 0.0);
  static RandomCycle constant(const std::vector<double>& pts, int p);
};

struct CycleCheck {
  bool ordered = false;    // strictly increasing in [0,1) at every sample
  bool covariant = false;  // worst circle residual stayed within tol
  double max_residual = 0.0;
  std::int64_t samples = 0;
  bool pass() const { return ordered && covariant; }
};

// Checks the cycle property on sampled omegas.  Finite bases are enumerated
// exhaustively (samples then only bounds Bernoulli draws).  tol must exceed
// c.truncation or the check could not distinguish failure from round-off.
CycleCheck verify_cycle(const Generator& g, const BaseSystem& base,
                        const RandomCycle& c, std::int64_t samples,
                        std::uint64_t seed, double tol = 1e-9);

// Recovers the index shift p from the dynamics alone, ignoring c.p; throws
// cycle_error if an image lands on no cycle point or the shift varies.
int infer_shift(const Generator& g, const BaseSystem& base,
                const RandomCycle& c, std::int64_t samples, std::uint64_t seed,
                double tol = 1e-9);

// Smallest P with tau^P = id, i.e. q / gcd(p, q).
int cycle_period(const RandomCycle& c);

// Splits into gcd(p,q) interleaved (p/gcd, q/gcd)-cycles; sub-cycle i takes
// the points with index congruent to i mod gcd.
std::vector<RandomCycle> decompose_cycle(const RandomCycle& c);

// Worst lift-level defect of F_omega(a_j) = a_{tau(j)}(sigma omega) + chi_j,
// chi_j = 1 when j + p wraps past q.  Assumes standard lifts and ordered
// points; this is the sharp form of the cycle property, whose telescoped sum
// over q steps gives the lift gain p.
double chi_identity_residual(const Generator& g, const BaseSystem& base,
                             const RandomCycle& c, std::int64_t samples,
                             std::uint64_t seed);

// #{1 <= i <= q : i*p mod q < p}, the number of index wraps of tau over a
// full period; always equals p for 0 <= p < q.
int count_lattice_hits(int p, int q);

struct RationalRotationReport {
  double target = 0.0;              // p / q
  double max_rho_error = 0.0;       // worst |estimate - target| over samples
  double max_orbit_residual = 0.0;  // worst lift defect at multiples of q
  std::int64_t samples = 0;
};

// A (p,q)-cycle forces rho = p/q: estimates rho from each sampled omega
// (orbit length n, started on the cycle) and follows the cycle orbit for
// orbit_multiples full periods, checking the lift advances by exactly p per
// q steps up to round-off.
RationalRotationReport rational_rotation_check(
    const Generator& g, const BaseSystem& base, const RandomCycle& c,
    std::int64_t n, std::int64_t samples, std::uint64_t seed,
    int orbit_multiples = 50);

}  // namespace rchlab
