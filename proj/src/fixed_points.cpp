#include "rchlab/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rchlab {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Argmin by golden-section; assumes a single minimum inside [a, b].
template <class Fn>
double golden_argmin(Fn&& f, double a, double b) {
  const double inv = 0.6180339887498949;
  double x1 = b - inv * (b - a), x2 = a + inv * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (f1 <= f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - inv * (b - a);
      f1 = f(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + inv * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Roots closer than this on the circle are reported once.
constexpr double kMergeTol = 1e-9;

// A golden-section hit counts as a root only if the deviation actually
// reaches the integer this closely.
constexpr double kTangencyTol = 1e-10;

void sort_merge(std::vector<std::pair<double, int>>& found) {
  std::sort(found.begin(), found.end());
  std::vector<std::pair<double, int>> merged;
  for (const auto& pr : found)
    if (merged.empty() || pr.first - merged.back().first > kMergeTol)
      merged.push_back(pr);
  if (merged.size() > 1 &&
      (1.0 - merged.back().first) + merged.front().first <= kMergeTol)
    merged.pop_back();
  found = std::move(merged);
}

}  // namespace

std::vector<double> integer_deviation_roots(const Lift& F, int k, int grid,
                                            double tol) {
  if (grid < 64) throw std::invalid_argument("grid must be >= 64");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const auto N = static_cast<std::size_t>(grid);
  std::vector<double> xs(N + 1), h(N + 1);
  for (std::size_t i = 0; i <= N; ++i)
    xs[i] = static_cast<double>(i) / static_cast<double>(grid);
  lift_eval_n(F, xs.data(), h.data(), N + 1);
  const double kd = static_cast<double>(k);
  for (std::size_t i = 0; i <= N; ++i) h[i] = h[i] - xs[i] - kd;

  bool all_zero = true;
  for (std::size_t i = 0; i <= N; ++i)
    if (h[i] != 0.0) {
      all_zero = false;
      break;
    }
  if (all_zero) return {0.0};  // the whole circle is fixed

  auto dev = [&](double x) { return F(x) - x - kd; };
  std::vector<std::pair<double, int>> found;
  auto add = [&](double x) { found.emplace_back(project(x), k); };

  for (std::size_t i = 0; i < N; ++i) {
    double a = h[i], b = h[i + 1];
    if (a == 0.0) {
      add(xs[i]);
      continue;
    }
    if ((a < 0.0) == (b < 0.0) || b == 0.0) continue;
    double lo = xs[i], hi = xs[i + 1];
    bool lo_neg = a < 0.0;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      double mid = 0.5 * (lo + hi), fm = dev(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0.0) == lo_neg)
        lo = mid;
      else
        hi = mid;
    }
    add(0.5 * (lo + hi));
  }

  // Tangencies never change sign; chase local minima of |h| instead.
  auto sq = [&](double x) {
    double d = dev(x);
    return d * d;
  };
  auto try_tangent = [&](double am, double left_h, double right_h, double lo,
                         double hi, bool center_neg) {
    if (am == 0.0 || am > 1e-3) return;
    if (am > std::fabs(left_h) || am > std::fabs(right_h)) return;
    if ((left_h < 0.0) != center_neg || (right_h < 0.0) != center_neg) return;
    double x = golden_argmin(sq, lo, hi);
    if (std::fabs(dev(x)) <= kTangencyTol) add(x);
  };
  for (std::size_t i = 1; i < N; ++i)
    try_tangent(std::fabs(h[i]), h[i - 1], h[i + 1], xs[i - 1], xs[i + 1],
                h[i] < 0.0);
  try_tangent(std::fabs(h[0]), h[N - 1], h[1], xs[N - 1] - 1.0, xs[1],
              h[0] < 0.0);

  sort_merge(found);
  std::vector<double> roots;
  roots.reserve(found.size());
  for (const auto& pr : found) roots.push_back(pr.first);
  return roots;
}

FixedPointReport find_fixed_points(const Lift& F, int grid, double tol) {
  if (!F.is_standard())
    throw std::invalid_argument("need a standard lift (F(0) in [0,1))");
  if (grid < 64) throw std::invalid_argument("grid must be >= 64");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  FixedPointReport rep;
  std::vector<std::pair<double, int>> found;

  auto rotation_rule = [&](double beta) {
    if (beta == 0.0) found.emplace_back(0.0, 0);  // identity: all points fixed
  };

  switch (F.family()) {
    case Lift::Family::RigidRotation:
      rotation_rule(F.rotation_beta());
      break;
    case Lift::Family::Arnold: {
      double amp = F.arnold_amp(), beta = F.arnold_beta();
      if (amp == 0.0) {
        rotation_rule(beta);
        break;
      }
      for (int k = 0; k <= 1; ++k) {
        double c = (static_cast<double>(k) - beta) / amp;
        if (std::fabs(c) > 1.0) {
          if (std::fabs(c) <= 1.0 + 1e-12)
            c = std::copysign(1.0, c);
          else
            continue;
        }
        double t = std::asin(c) / kTwoPi;
        found.emplace_back(project(t), k);
        found.emplace_back(project(0.5 - t), k);
      }
      break;
    }
    case Lift::Family::PiecewiseLinear: {
      const Lift::PwlData& d = F.pwl();
      for (int k = 0; k <= 1; ++k) {
        double kd = static_cast<double>(k);
        for (std::size_t i = 0; i < d.slopes.size(); ++i) {
          double b0 = d.breaks[i], b1 = d.breaks[i + 1];
          double s = d.slopes[i], ic = d.intercepts[i];
          double vL = std::fma(s, b0, ic) - b0 - kd;
          double vR = std::fma(s, b1, ic) - b1 - kd;  // left limit at b1
          if (s == 1.0) {
            if (std::fabs(vL) <= 1e-12) found.emplace_back(project(b0), k);
            continue;
          }
          if ((vL <= 0.0 && vR >= 0.0) || (vL >= 0.0 && vR <= 0.0)) {
            double x = (kd - ic) / (s - 1.0);
            x = std::min(std::max(x, b0), b1);
            found.emplace_back(project(x), k);
          }
        }
      }
      break;
    }
    case Lift::Family::Composition:
    default: {
      rep.method = FixedPointReport::Method::SignChange;
      rep.grid = grid;
      for (int k = 0; k <= 1; ++k)
        for (double r : integer_deviation_roots(F, k, grid, tol))
          found.emplace_back(r, k);
      break;
    }
  }

  sort_merge(found);
  rep.has_fixed_point = !found.empty();
  rep.points.reserve(found.size());
  rep.levels.reserve(found.size());
  for (const auto& pr : found) {
    rep.points.push_back(pr.first);
    rep.levels.push_back(pr.second);
  }
  return rep;
}

ProbabilityEstimate fixed_point_probability(const Generator& g,
                                            const BaseSystem& base,
                                            std::int64_t samples,
                                            std::uint64_t seed, int grid) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  ProbabilityEstimate r;

  if (base.kind() != BaseSystem::Kind::Bernoulli) {
    r.exact = true;
    r.samples = base.point_count();
    int hits = 0;
    double p = 0.0;
    for (int i = 0; i < base.point_count(); ++i) {
      if (find_fixed_points(g.lift_at(base.point(i)), grid).has_fixed_point) {
        ++hits;
        p += base.weights()[static_cast<std::size_t>(i)];
      }
    }
    r.p = hits == 0 ? 0.0 : (hits == base.point_count() ? 1.0 : p);
    return r;
  }

  if (g.symbol_determined()) {
    // One fibre map per symbol, so the probability is the exact weighted
    // count over the alphabet.
    if (g.table_size() != base.alphabet_size())
      throw std::invalid_argument(
          "generator table and base alphabet sizes differ");
    r.exact = true;
    r.samples = g.table_size();
    int hits = 0;
    double p = 0.0;
    for (int s = 0; s < g.table_size(); ++s) {
      if (find_fixed_points(g.lift_for_symbol(s), grid).has_fixed_point) {
        ++hits;
        p += base.weights()[static_cast<std::size_t>(s)];
      }
    }
    r.p = hits == 0 ? 0.0 : (hits == g.table_size() ? 1.0 : p);
    return r;
  }

  r.samples = samples;
  std::int64_t hits = 0;
  for (std::int64_t j = 0; j < samples; ++j) {
    BasePoint omega = base.sample(derive_seed(seed, static_cast<std::uint64_t>(j)));
    if (find_fixed_points(g.lift_at(omega), grid).has_fixed_point) ++hits;
  }
  r.p = static_cast<double>(hits) / static_cast<double>(samples);
  r.std_error =
      std::sqrt(r.p * (1.0 - r.p) / static_cast<double>(samples));
  return r;
}

IntegerRhoWitness integer_rho_witness(const Generator& g,
                                      const BaseSystem& base, std::int64_t n,
                                      std::int64_t samples,
                                      std::uint64_t seed) {
  IntegerRhoWitness w;
  w.mean_rho = estimate_mean_rho(g, base, n, samples, seed);
  w.probability = fixed_point_probability(g, base, samples, seed);
  double nearest = std::round(w.mean_rho.mean);
  w.nearest_integer = static_cast<int>(nearest);
  w.integer_mean_detected = std::fabs(w.mean_rho.mean - nearest) <=
                            3.0 * w.mean_rho.std_error + 1e-9;
  w.consistent = !w.integer_mean_detected || w.probability.p > 0.0;
  return w;
}

}  // namespace rchlab
