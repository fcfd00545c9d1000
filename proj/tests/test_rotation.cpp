#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rchlab/kernels.hpp"
#include "rchlab/rotation.hpp"
#include "rchlab/threading.hpp"
#include "rchlab/zoo.hpp"

using namespace rchlab;

namespace {

bool same_estimate(const RotationEstimate& a, const RotationEstimate& b) {
  return a.rho == b.rho && a.n == b.n && a.cauchy_gap == b.cauchy_gap &&
         a.m_bar == b.m_bar && a.M_bar == b.M_bar;
}

std::vector<BasePoint> seeded(const BaseSystem& base, int count,
                              std::uint64_t master) {
  std::vector<BasePoint> out;
  for (int j = 0; j < count; ++j)
    out.push_back(base.sample(derive_seed(master, static_cast<std::uint64_t>(j))));
  return out;
}

}  // namespace

TEST_SUITE("rotation") {

TEST_CASE("odd or short orbits are rejected") {
  zoo::System s = zoo::make_system(zoo::SystemId::BinaryCycle);
  BasePoint w = s.base.sample(1);
  CHECK_THROWS_AS(estimate_rho(s.generator, w, CirclePoint(0.0), 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_rho(s.generator, w, CirclePoint(0.0), 0),
                  std::invalid_argument);
}

TEST_CASE("rigid rotation estimates recover beta") {
  Generator g = Generator::symbol_indexed({Lift::rotation(0.375)});
  BaseSystem base = BaseSystem::singleton();
  RotationEstimate e = estimate_rho(g, base.point(0), CirclePoint(0.0), 1000);
  CHECK(e.rho == 0.375);  // dyadic beta accumulates exactly
  CHECK(e.cauchy_gap == 0.0);
  CHECK(e.m_bar == 0.375);
  CHECK(e.M_bar == 0.375);
}

TEST_CASE("the cauchy gap is the half-orbit comparison, bitwise") {
  zoo::System s = zoo::make_system(zoo::SystemId::BinaryCycle);
  BasePoint w = s.base.sample(9);
  RotationEstimate full = estimate_rho(s.generator, w, CirclePoint(0.125), 4000);
  RotationEstimate half = estimate_rho(s.generator, w, CirclePoint(0.125), 2000);
  CHECK(full.cauchy_gap == std::fabs(full.rho - half.rho));
}

TEST_CASE("birkhoff sandwich bounds the estimate on every sample") {
  for (zoo::SystemId id : {zoo::SystemId::BinaryCycle,
                           zoo::SystemId::CommonFixedPoint,
                           zoo::SystemId::IrrationalPair}) {
    zoo::System s = zoo::make_system(id);
    for (const BasePoint& w : seeded(s.base, 20, 77)) {
      RotationEstimate e = estimate_rho(s.generator, w, CirclePoint(0.0), 2000);
      CHECK(e.m_bar <= e.rho);
      CHECK(e.rho <= e.M_bar);
    }
  }
}

TEST_CASE("estimates differ by at most 2/n across starting points") {
  zoo::System s = zoo::make_system(zoo::SystemId::BinaryCycle);
  BasePoint w = s.base.sample(31);
  const std::int64_t n = 2000;
  RotationEstimate at0 = estimate_rho(s.generator, w, CirclePoint(0.0), n);
  for (double x : {0.1, 0.37, 0.5, 0.99}) {
    RotationEstimate e = estimate_rho(s.generator, w, CirclePoint(x), n);
    CHECK(std::fabs(e.rho - at0.rho) <= 2.0 / static_cast<double>(n) + 1e-12);
  }
}

TEST_CASE("the irrational pair has constant deviations, so the sandwich is tight") {
  zoo::System s = zoo::make_system(zoo::SystemId::IrrationalPair);
  BasePoint w = s.base.sample(4);
  RotationEstimate e = estimate_rho(s.generator, w, CirclePoint(0.0), 2000);
  CHECK(e.m_bar == e.rho);
  CHECK(e.M_bar == e.rho);
}

TEST_CASE("batched estimation is bitwise identical to the single path") {
  for (zoo::SystemId id : {zoo::SystemId::BinaryCycle,
                           zoo::SystemId::CommonFixedPoint,
                           zoo::SystemId::TwoPointIntegerRho,
                           zoo::SystemId::IrrationalPair}) {
    zoo::System s = zoo::make_system(id);
    std::vector<BasePoint> omegas;
    if (s.base.kind() == BaseSystem::Kind::Bernoulli) {
      omegas = seeded(s.base, 13, 2024);
    } else {
      for (int i = 0; i < s.base.point_count(); ++i)
        omegas.push_back(s.base.point(i));
    }
    std::vector<RotationEstimate> batch =
        estimate_rho_batch(s.generator, omegas, CirclePoint(0.25), 600);
    REQUIRE(batch.size() == omegas.size());
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      RotationEstimate single =
          estimate_rho(s.generator, omegas[j], CirclePoint(0.25), 600);
      CHECK(same_estimate(batch[j], single));
    }
  }
}

TEST_CASE("results are invariant under thread count and simd backend") {
  zoo::System s = zoo::make_system(zoo::SystemId::BinaryCycle);
  std::vector<BasePoint> omegas = seeded(s.base, 23, 5);

  set_thread_count(1);
  std::vector<RotationEstimate> t1 =
      estimate_rho_batch(s.generator, omegas, CirclePoint(0.0), 800);
  set_thread_count(3);
  std::vector<RotationEstimate> t3 =
      estimate_rho_batch(s.generator, omegas, CirclePoint(0.0), 800);
  set_thread_count(0);
  for (std::size_t j = 0; j < omegas.size(); ++j)
    CHECK(same_estimate(t1[j], t3[j]));

  kernels::select_backend(kernels::Backend::Scalar);
  std::vector<RotationEstimate> sc =
      estimate_rho_batch(s.generator, omegas, CirclePoint(0.0), 800);
  kernels::select_backend(kernels::Backend::Auto);
  for (std::size_t j = 0; j < omegas.size(); ++j)
    CHECK(same_estimate(t1[j], sc[j]));
}

TEST_CASE("mean rho: monte carlo for bernoulli, exact for finite bases") {
  zoo::System bin = zoo::make_system(zoo::SystemId::BinaryCycle);
  MeanRotationEstimate m =
      estimate_mean_rho(bin.generator, bin.base, 4000, 100, 42);
  CHECK_FALSE(m.exact);
  CHECK(m.samples == 100);
  CHECK(m.std_error > 0.0);
  CHECK(std::fabs(m.mean - 0.5) <= 4.0 * m.std_error + 2.0 / 4000.0);
  // reproducible
  MeanRotationEstimate m2 =
      estimate_mean_rho(bin.generator, bin.base, 4000, 100, 42);
  CHECK(m.mean == m2.mean);
  CHECK(m.std_error == m2.std_error);

  zoo::System two = zoo::make_system(zoo::SystemId::TwoPointIntegerRho);
  MeanRotationEstimate t = estimate_mean_rho(two.generator, two.base, 4000, 100, 42);
  CHECK(t.exact);
  CHECK(t.mean == 0.0);
  CHECK(t.std_error == 0.0);

  zoo::Params par;
  par.p = 1;
  par.q = 4;
  zoo::System rot = zoo::make_system(zoo::SystemId::RigidRotationCycle, par);
  MeanRotationEstimate r = estimate_mean_rho(rot.generator, rot.base, 4000, 100, 42);
  CHECK(r.exact);
  CHECK(r.mean == 0.25);
}

TEST_CASE("mean rho through a fixed-point selection") {
  zoo::System two = zoo::make_system(zoo::SystemId::TwoPointIntegerRho);
  REQUIRE(two.cycle.has_value());
  auto a0 = two.cycle->points[0];
  MeanRotationEstimate m =
      mean_rho_via_fixed_point(two.generator, two.base, a0, 100, 42);
  CHECK(m.exact);
  CHECK(m.mean == 0.0);  // weighted halves of +0.1 and -0.1 cancel exactly

  // a selection that is not covariant must be refused
  CHECK_THROWS_AS(mean_rho_via_fixed_point(
                      two.generator, two.base,
                      [](const BasePoint&) { return 0.33; }, 100, 42),
                  precondition_error);

  // 0.25 is fixed by every fibre of the opposed arnold pair; the deviation
  // there is 0 or 1 by symbol, so the mean is the weight of symbol 1
  zoo::System cfp = zoo::make_system(zoo::SystemId::CommonFixedPoint);
  MeanRotationEstimate mc = mean_rho_via_fixed_point(
      cfp.generator, cfp.base, [](const BasePoint&) { return 0.25; }, 400, 42);
  CHECK_FALSE(mc.exact);
  CHECK(mc.std_error > 0.0);
  CHECK(std::fabs(mc.mean - 0.5) <= 4.0 * mc.std_error + 1e-12);
}

TEST_CASE("deterministic rho: closed forms and integer detection") {
  CHECK(deterministic_rho(Lift::rotation(0.3)) == 0.3);
  CHECK(deterministic_rho(Lift::rotation(2.3)) == 2.3);  // lift-level value
  // deviation range [0, 0.2] touches 0: rho is exactly 0
  CHECK(deterministic_rho(Lift::arnold(M_PI / 5, 0.1)) == 0.0);
  // deviation range [0.8, 1.0] touches 1: rho is exactly 1
  CHECK(deterministic_rho(Lift::arnold(-M_PI / 5, 0.9)) == 1.0);
  // no integer in range: orbit fallback, must respect the deviation bounds
  double rho = deterministic_rho(Lift::arnold(M_PI / 5, 0.5), 1 << 18);
  CHECK(rho > 0.4);
  CHECK(rho < 0.6);

  // composed period map of the two-point system: tangent to the diagonal
  Lift period = compose({Lift::rotation(0.1), Lift::arnold(-M_PI / 5, 0.0)});
  CHECK(deterministic_rho(period) == 0.0);
}

TEST_CASE("pairwise sums do not depend on chunking") {
  std::vector<double> xs(1777);
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] = std::sin(static_cast<double>(i)) / (1.0 + static_cast<double>(i));
  double direct = pairwise_sum(xs);
  set_thread_count(4);
  double threaded = pairwise_sum(xs);
  set_thread_count(0);
  CHECK(direct == threaded);
  double naive = 0.0;
  for (double x : xs) naive += x;
  CHECK(std::fabs(direct - naive) <= 1e-12);
}

}  // TEST_SUITE
