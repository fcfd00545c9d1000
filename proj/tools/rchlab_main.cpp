// rchlab: estimation, cycle verification, fixed-point detection, and
// example reproduction for random circle homeomorphisms.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or config
// error, 3 I/O failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rchlab/cycles.hpp"
#include "rchlab/fixed_points.hpp"
#include "rchlab/rotation.hpp"
#include "rchlab/zoo.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rchlab;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

std::string join_doubles(const std::vector<double>& vs, char sep) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += sep;
    s += num(vs[i]);
  }
  return s;
}

enum class Format { Human, Csv, Json };

struct Options {
  std::string zoo;
  std::vector<double> rotation;  // beta
  std::vector<double> arnold;    // alpha beta
  zoo::Params params;
  std::int64_t n = 100000;
  std::int64_t samples = 200;
  std::uint64_t seed = 1;
  double x0 = 0.0;
  double tol = 1e-9;
  int grid = 1024;
  Format format = Format::Human;
  std::string out;
  // verify-cycle extras
  std::string cycle_kind;
  std::vector<double> cycle_points;
  int cycle_p = 1;
  double perturb = 0.0;
};

void add_system_options(CLI::App* cmd, Options& o) {
  std::string ids;
  for (const std::string& s : zoo::system_names()) {
    if (!ids.empty()) ids += ", ";
    ids += s;
  }
  cmd->add_option("--zoo", o.zoo, "zoo system id (" + ids + ")");
  cmd->add_option("--rotation", o.rotation,
                  "rigid rotation by BETA over a one-point base")
      ->expected(1);
  cmd->add_option("--arnold", o.arnold,
                  "Arnold map with parameters ALPHA BETA over a one-point base")
      ->expected(2);
  cmd->add_option("--p0", o.params.p0, "weight of symbol 0 (default 0.5)");
  cmd->add_option("--p1", o.params.p1, "weight of symbol 1 (default 0.5)");
  cmd->add_option("--p", o.params.p, "rigid-rotation-cycle shift p (default 1)");
  cmd->add_option("--q", o.params.q, "rigid-rotation-cycle length q (default 2)");
  cmd->add_option("--a", o.params.a, "irrational-pair center angle (default 0.3)");
  cmd->add_option("--b", o.params.b,
                  "irrational-pair half spread (default sqrt(2)/10)");
  cmd->add_option("--depth", o.params.depth,
                  "binary expansion depth (default 48)");
}

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "orbit length (default 100000)");
  cmd->add_option("--samples", o.samples,
                  "Monte Carlo sample count (default 200); finite bases are "
                  "enumerated instead");
  cmd->add_option("--seed", o.seed,
                  "master seed; required with --format csv/json");
  cmd->add_option("--x0", o.x0, "orbit start point in [0,1) (default 0)");
  cmd->add_option("--grid", o.grid, "scan resolution (default 1024)");
  cmd->add_option("--tol", o.tol, "residual tolerance (default 1e-9)");
  cmd->add_option("--format", o.format, "output format (default human)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"human", Format::Human},
                                        {"csv", Format::Csv},
                                        {"json", Format::Json}},
          CLI::ignore_case));
  cmd->add_option("--out", o.out,
                  "write the primary output to this file instead of stdout "
                  "(reproduce: the figure CSV)");
}

void finish_options(CLI::App* cmd, Options& o) {
  bool has0 = cmd->count("--p0") > 0, has1 = cmd->count("--p1") > 0;
  if (has0 && has1) {
    if (std::fabs(o.params.p0 + o.params.p1 - 1.0) > 1e-12)
      throw usage_error("--p0 and --p1 must sum to 1");
  } else if (has0) {
    o.params.p1 = 1.0 - o.params.p0;
  } else if (has1) {
    o.params.p0 = 1.0 - o.params.p1;
  }
  if (o.format != Format::Human && cmd->count("--seed") == 0)
    throw usage_error("--seed is required with --format csv/json");
  if (o.samples < 1) throw usage_error("--samples must be >= 1");
  if (o.n < 2 || o.n % 2 != 0)
    throw usage_error("--n must be even and >= 2 (the Cauchy gap compares "
                      "against the half-length estimate)");
}

zoo::System resolve_system(const Options& o) {
  int sources = !o.zoo.empty();
  sources += !o.rotation.empty();
  sources += !o.arnold.empty();
  if (sources != 1)
    throw usage_error("pick exactly one of --zoo, --rotation, --arnold");
  if (!o.zoo.empty()) {
    std::optional<zoo::SystemId> id = zoo::system_by_name(o.zoo);
    if (!id) throw usage_error("unknown zoo system: " + o.zoo);
    return zoo::make_system(*id, o.params);
  }
  Lift f = o.rotation.empty() ? Lift::arnold(o.arnold[0], o.arnold[1])
                              : Lift::rotation(o.rotation[0]);
  std::string name = o.rotation.empty()
                         ? "arnold(" + num(o.arnold[0]) + ", " + num(o.arnold[1]) + ")"
                         : "rotation(" + num(o.rotation[0]) + ")";
  return zoo::System{zoo::SystemId::RigidRotationCycle,
                     name,
                     "ad hoc one-map system",
                     Generator::symbol_indexed({f}),
                     BaseSystem::singleton(),
                     {},
                     {},
                     {}};
}

// Sampled omegas and per-row metadata shared by the subcommands: Bernoulli
// bases draw `samples` seeded streams, finite bases enumerate their points.
struct Ensemble {
  std::vector<BasePoint> omegas;
  std::vector<std::uint64_t> seeds;
  std::vector<double> weights;
};

Ensemble draw_ensemble(const BaseSystem& base, std::int64_t samples,
                       std::uint64_t seed) {
  Ensemble e;
  if (base.kind() == BaseSystem::Kind::Bernoulli) {
    for (std::int64_t j = 0; j < samples; ++j) {
      std::uint64_t sj = derive_seed(seed, static_cast<std::uint64_t>(j));
      e.seeds.push_back(sj);
      e.omegas.push_back(base.sample(sj));
      e.weights.push_back(1.0 / static_cast<double>(samples));
    }
  } else {
    for (int i = 0; i < base.point_count(); ++i) {
      e.seeds.push_back(static_cast<std::uint64_t>(i));
      e.omegas.push_back(base.point(i));
      e.weights.push_back(base.weights()[static_cast<std::size_t>(i)]);
    }
  }
  return e;
}

std::ostream& open_sink(const Options& o, std::ofstream& file) {
  if (o.out.empty()) return std::cout;
  file.open(o.out);
  if (!file) throw io_error("cannot open " + o.out + " for writing");
  return file;
}

void flush_sink(const Options& o, std::ofstream& file) {
  if (!o.out.empty()) {
    file.flush();
    if (!file) throw io_error("write to " + o.out + " failed");
  }
}

// ---------------------------------------------------------------- estimate

int cmd_estimate_rho(const Options& o) {
  zoo::System s = resolve_system(o);
  Ensemble e = draw_ensemble(s.base, o.samples, o.seed);
  CirclePoint x0(o.x0);

  std::vector<RotationEstimate> rows;
  if (s.base.kind() == BaseSystem::Kind::Bernoulli) {
    rows = estimate_rho_batch(s.generator, e.omegas, x0, o.n);
  } else {
    for (const BasePoint& w : e.omegas)
      rows.push_back(estimate_rho(s.generator, w, x0, o.n));
  }
  MeanRotationEstimate mean =
      estimate_mean_rho(s.generator, s.base, o.n, o.samples, o.seed, x0);

  std::ofstream file;
  std::ostream& out = open_sink(o, file);
  if (o.format == Format::Csv) {
    out << "sample,seed,omega_digest,rho,n,cauchy_gap,m_bar,M_bar,weight\n";
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const RotationEstimate& r = rows[j];
      out << j << ',' << e.seeds[j] << ',' << e.omegas[j].digest() << ','
          << num(r.rho) << ',' << r.n << ',' << num(r.cauchy_gap) << ','
          << num(r.m_bar) << ',' << num(r.M_bar) << ',' << num(e.weights[j])
          << '\n';
    }
    out << "# mean," << num(mean.mean) << "\n# std_error,"
        << num(mean.std_error) << "\n# samples," << mean.samples
        << "\n# exact," << (mean.exact ? 1 : 0) << '\n';
  } else if (o.format == Format::Json) {
    ordered_json doc;
    doc["command"] = "estimate-rho";
    doc["system"] = s.name;
    doc["n"] = o.n;
    doc["seed"] = o.seed;
    doc["mean"] = mean.mean;
    doc["std_error"] = mean.std_error;
    doc["samples"] = mean.samples;
    doc["exact"] = mean.exact;
    doc["rows"] = ordered_json::array();
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const RotationEstimate& r = rows[j];
      doc["rows"].push_back({{"sample", j},
                             {"seed", e.seeds[j]},
                             {"omega_digest", e.omegas[j].digest()},
                             {"rho", r.rho},
                             {"n", r.n},
                             {"cauchy_gap", r.cauchy_gap},
                             {"m_bar", r.m_bar},
                             {"M_bar", r.M_bar},
                             {"weight", e.weights[j]}});
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "rotation number estimate: " << s.name << '\n';
    out << "  orbit length n = " << o.n << ", samples = " << rows.size()
        << ", seed = " << o.seed << '\n';
    out << "  mean rho = " << num(mean.mean)
        << (mean.exact ? " (exact)" : " +- " + num(mean.std_error)) << '\n';
    double worst_gap = 0.0, mlo = std::numeric_limits<double>::infinity(),
           Mhi = -std::numeric_limits<double>::infinity();
    for (const RotationEstimate& r : rows) {
      worst_gap = std::max(worst_gap, r.cauchy_gap);
      mlo = std::min(mlo, r.m_bar);
      Mhi = std::max(Mhi, r.M_bar);
    }
    out << "  worst Cauchy gap = " << num(worst_gap) << '\n';
    out << "  Birkhoff sandwich: [" << num(mlo) << ", " << num(Mhi) << "]\n";
  }
  flush_sink(o, file);
  return 0;
}

// ------------------------------------------------------------ verify-cycle

RandomCycle resolve_cycle(const Options& o, const zoo::System& s) {
  RandomCycle c = [&] {
    if (o.cycle_kind.empty()) {
      if (!s.cycle)
        throw usage_error("system " + s.name +
                          " declares no cycle; give --cycle-kind");
      return *s.cycle;
    }
    if (o.cycle_kind == "binary-expansion") {
      int depth = o.params.depth;
      std::vector<std::function<double(const BasePoint&)>> pts;
      for (int j = 0; j < 2; ++j)
        pts.push_back([j, depth](const BasePoint& w) {
          return zoo::binary_cycle_point(j, w, depth);
        });
      return RandomCycle::shift_cycle(std::move(pts), o.cycle_p,
                                      std::ldexp(1.0, -(depth + 2)));
    }
    if (o.cycle_kind == "explicit-constant") {
      if (o.cycle_points.empty())
        throw usage_error("--cycle-kind explicit-constant needs --cycle-points");
      return RandomCycle::constant(o.cycle_points, o.cycle_p);
    }
    throw usage_error("unknown --cycle-kind: " + o.cycle_kind);
  }();
  if (o.perturb != 0.0) {
    auto orig = c.points[0];
    double eps = o.perturb;
    c.points[0] = [orig, eps](const BasePoint& w) { return orig(w) + eps; };
  }
  return c;
}

int cmd_verify_cycle(const Options& o) {
  zoo::System s = resolve_system(o);
  RandomCycle c = resolve_cycle(o, s);
  Ensemble e = draw_ensemble(s.base, o.samples, o.seed);

  CycleCheck chk = verify_cycle(s.generator, s.base, c, o.samples, o.seed, o.tol);
  int inferred = -1;
  std::string infer_failure;
  try {
    inferred = infer_shift(s.generator, s.base, c, o.samples, o.seed, o.tol);
  } catch (const cycle_error& ex) {
    infer_failure = ex.what();
  }
  RationalRotationReport rho = rational_rotation_check(
      s.generator, s.base, c, o.n, o.samples, o.seed, 50);
  double rho_tol = 2.0 / static_cast<double>(o.n) + 1e-6;

  bool pass = chk.pass() && infer_failure.empty() && inferred == c.p &&
              rho.max_rho_error <= rho_tol && rho.max_orbit_residual <= o.tol;

  // per-sample residuals for the row output
  std::vector<double> residuals(e.omegas.size(), 0.0);
  std::vector<bool> ordered(e.omegas.size(), true);
  for (std::size_t j = 0; j < e.omegas.size(); ++j) {
    const BasePoint& w = e.omegas[j];
    BasePoint next = w.shifted(1);
    Lift f = s.generator.lift_at(w);
    std::vector<double> a(static_cast<std::size_t>(c.q)),
        b(static_cast<std::size_t>(c.q));
    for (int i = 0; i < c.q; ++i) {
      a[static_cast<std::size_t>(i)] = c.points[static_cast<std::size_t>(i)](w);
      b[static_cast<std::size_t>(i)] =
          c.points[static_cast<std::size_t>(i)](next);
    }
    for (int i = 1; i < c.q; ++i)
      if (!(a[static_cast<std::size_t>(i)] > a[static_cast<std::size_t>(i - 1)]))
        ordered[j] = false;
    if (a.front() < 0.0 || a.back() >= 1.0) ordered[j] = false;
    for (int i = 0; i < c.q; ++i) {
      double img = project(f(a[static_cast<std::size_t>(i)]));
      double tgt = b[static_cast<std::size_t>(c.tau[static_cast<std::size_t>(i)])];
      double d = std::fabs(img - tgt);
      residuals[j] = std::max(residuals[j], std::min(d, 1.0 - d));
    }
  }

  std::ofstream file;
  std::ostream& out = open_sink(o, file);
  if (o.format == Format::Csv) {
    out << "sample,seed,omega_digest,ordered,residual\n";
    for (std::size_t j = 0; j < e.omegas.size(); ++j)
      out << j << ',' << e.seeds[j] << ',' << e.omegas[j].digest() << ','
          << (ordered[j] ? 1 : 0) << ',' << num(residuals[j]) << '\n';
    out << "# ordered," << (chk.ordered ? 1 : 0) << '\n'
        << "# covariant," << (chk.covariant ? 1 : 0) << '\n'
        << "# max_residual," << num(chk.max_residual) << '\n'
        << "# inferred_p," << (infer_failure.empty() ? std::to_string(inferred) : "none")
        << '\n'
        << "# declared_p," << c.p << '\n'
        << "# q," << c.q << '\n'
        << "# period," << cycle_period(c) << '\n'
        << "# rho_target," << num(rho.target) << '\n'
        << "# max_rho_error," << num(rho.max_rho_error) << '\n'
        << "# max_orbit_residual," << num(rho.max_orbit_residual) << '\n'
        << "# pass," << (pass ? 1 : 0) << '\n';
  } else if (o.format == Format::Json) {
    ordered_json doc;
    doc["command"] = "verify-cycle";
    doc["system"] = s.name;
    doc["seed"] = o.seed;
    doc["ordered"] = chk.ordered;
    doc["covariant"] = chk.covariant;
    doc["max_residual"] = chk.max_residual;
    doc["inferred_p"] =
        infer_failure.empty() ? ordered_json(inferred) : ordered_json(nullptr);
    doc["declared_p"] = c.p;
    doc["q"] = c.q;
    doc["period"] = cycle_period(c);
    doc["rho_target"] = rho.target;
    doc["max_rho_error"] = rho.max_rho_error;
    doc["max_orbit_residual"] = rho.max_orbit_residual;
    doc["pass"] = pass;
    doc["rows"] = ordered_json::array();
    for (std::size_t j = 0; j < e.omegas.size(); ++j)
      doc["rows"].push_back({{"sample", j},
                             {"seed", e.seeds[j]},
                             {"omega_digest", e.omegas[j].digest()},
                             {"ordered", static_cast<bool>(ordered[j])},
                             {"residual", residuals[j]}});
    out << doc.dump(2) << '\n';
  } else {
    out << "cycle check: " << s.name << " (q = " << c.q << ", declared p = "
        << c.p << ")\n";
    out << "  samples: " << chk.samples << ", seed = " << o.seed << '\n';
    out << "  ordered: " << (chk.ordered ? "yes" : "NO") << '\n';
    out << "  covariant: " << (chk.covariant ? "yes" : "NO")
        << " (max residual " << num(chk.max_residual) << ", tol " << num(o.tol)
        << ")\n";
    if (infer_failure.empty())
      out << "  inferred shift: p = " << inferred << ", period "
          << cycle_period(c) << '\n';
    else
      out << "  inferred shift: FAILED (" << infer_failure << ")\n";
    out << "  rho check: target " << num(rho.target) << ", max error "
        << num(rho.max_rho_error) << " (tol " << num(rho_tol) << ")\n";
    out << "  orbit identity over 50 periods: max residual "
        << num(rho.max_orbit_residual) << '\n';
    out << (pass ? "PASS" : "FAIL") << '\n';
  }
  flush_sink(o, file);
  return pass ? 0 : 1;
}

// ------------------------------------------------------------ fixed-points

int cmd_fixed_points(const Options& o) {
  zoo::System s = resolve_system(o);
  Ensemble e = draw_ensemble(s.base, o.samples, o.seed);

  IntegerRhoWitness w =
      integer_rho_witness(s.generator, s.base, o.n, o.samples, o.seed);

  std::vector<FixedPointReport> reports;
  reports.reserve(e.omegas.size());
  for (const BasePoint& omega : e.omegas)
    reports.push_back(find_fixed_points(s.generator.lift_at(omega), o.grid));

  std::ofstream file;
  std::ostream& out = open_sink(o, file);
  if (o.format == Format::Csv) {
    out << "seed,omega_digest,has_fp,roots\n";
    for (std::size_t j = 0; j < reports.size(); ++j) {
      out << e.seeds[j] << ',' << e.omegas[j].digest() << ','
          << (reports[j].has_fixed_point ? 1 : 0) << ','
          << join_doubles(reports[j].points, ';') << '\n';
    }
    out << "# probability," << num(w.probability.p) << '\n'
        << "# probability_std_error," << num(w.probability.std_error) << '\n'
        << "# probability_exact," << (w.probability.exact ? 1 : 0) << '\n'
        << "# mean_rho," << num(w.mean_rho.mean) << '\n'
        << "# mean_rho_std_error," << num(w.mean_rho.std_error) << '\n'
        << "# mean_rho_exact," << (w.mean_rho.exact ? 1 : 0) << '\n'
        << "# integer_mean_detected," << (w.integer_mean_detected ? 1 : 0)
        << '\n'
        << "# nearest_integer," << w.nearest_integer << '\n'
        << "# consistent," << (w.consistent ? 1 : 0) << '\n';
  } else if (o.format == Format::Json) {
    ordered_json doc;
    doc["command"] = "fixed-points";
    doc["system"] = s.name;
    doc["seed"] = o.seed;
    doc["probability"] = {{"p", w.probability.p},
                          {"std_error", w.probability.std_error},
                          {"samples", w.probability.samples},
                          {"exact", w.probability.exact}};
    doc["mean_rho"] = {{"mean", w.mean_rho.mean},
                       {"std_error", w.mean_rho.std_error},
                       {"samples", w.mean_rho.samples},
                       {"exact", w.mean_rho.exact}};
    doc["integer_mean_detected"] = w.integer_mean_detected;
    doc["nearest_integer"] = w.nearest_integer;
    doc["consistent"] = w.consistent;
    doc["rows"] = ordered_json::array();
    for (std::size_t j = 0; j < reports.size(); ++j)
      doc["rows"].push_back({{"seed", e.seeds[j]},
                             {"omega_digest", e.omegas[j].digest()},
                             {"has_fp", reports[j].has_fixed_point},
                             {"roots", reports[j].points},
                             {"levels", reports[j].levels}});
    out << doc.dump(2) << '\n';
  } else {
    out << "fixed points: " << s.name << '\n';
    out << "  probability = " << num(w.probability.p)
        << (w.probability.exact ? " (exact)"
                                : " +- " + num(w.probability.std_error))
        << '\n';
    out << "  mean rho = " << num(w.mean_rho.mean)
        << (w.mean_rho.exact ? " (exact)" : " +- " + num(w.mean_rho.std_error))
        << '\n';
    out << "  integer mean detected: " << (w.integer_mean_detected ? "yes" : "no");
    if (w.integer_mean_detected) out << " (nearest " << w.nearest_integer << ")";
    out << '\n';
    out << "  integer rho <-> fixed points consistent: "
        << (w.consistent ? "yes" : "NO") << '\n';
    std::size_t shown = std::min<std::size_t>(reports.size(), 8);
    for (std::size_t j = 0; j < shown; ++j)
      out << "  omega " << e.omegas[j].digest() << " -> "
          << (reports[j].has_fixed_point
                  ? "fixed points at " + join_doubles(reports[j].points, ' ')
                  : std::string("none"))
          << '\n';
    if (shown < reports.size())
      out << "  ... (" << reports.size() - shown << " more)\n";
  }
  flush_sink(o, file);
  return w.consistent ? 0 : 1;
}

// --------------------------------------------------------------- reproduce

int cmd_reproduce(const Options& o) {
  if (o.zoo.empty()) throw usage_error("reproduce needs --zoo");
  zoo::System s = resolve_system(o);

  std::string fig_path = o.out.empty() ? s.name + "-figure.csv" : o.out;
  {
    std::ofstream fig(fig_path);
    if (!fig) throw io_error("cannot open " + fig_path + " for writing");
    const int kRows = 1024;
    fig << "x";
    for (int sym = 0; sym < s.generator.table_size(); ++sym)
      fig << ",f" << sym;
    fig << '\n';
    for (int i = 0; i < kRows; ++i) {
      double x = static_cast<double>(i) / kRows;
      fig << num(x);
      for (int sym = 0; sym < s.generator.table_size(); ++sym)
        fig << ',' << num(project(s.generator.lift_for_symbol(sym)(x)));
      fig << '\n';
    }
    fig.flush();
    if (!fig) throw io_error("write to " + fig_path + " failed");
  }

  std::vector<zoo::ClaimResult> claims =
      zoo::check_claims(s, o.n, o.samples, o.seed);
  bool pass = true;
  for (const zoo::ClaimResult& r : claims) pass = pass && r.pass;

  if (o.format == Format::Csv) {
    std::cout << "claim,target,measured,tolerance,pass\n";
    for (const zoo::ClaimResult& r : claims)
      std::cout << r.name << ',' << num(r.target) << ',' << num(r.measured)
                << ',' << num(r.tolerance) << ',' << (r.pass ? 1 : 0) << '\n';
    std::cout << "# figure," << fig_path << '\n'
              << "# pass," << (pass ? 1 : 0) << '\n';
  } else if (o.format == Format::Json) {
    ordered_json doc;
    doc["command"] = "reproduce";
    doc["system"] = s.name;
    doc["seed"] = o.seed;
    doc["figure_csv"] = fig_path;
    doc["claims"] = ordered_json::array();
    for (const zoo::ClaimResult& r : claims)
      doc["claims"].push_back({{"claim", r.name},
                               {"target", r.target},
                               {"measured", r.measured},
                               {"tolerance", r.tolerance},
                               {"pass", r.pass}});
    doc["pass"] = pass;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "reproduce: " << s.name << '\n';
    std::cout << "  " << s.description << '\n';
    std::cout << "  figure data: " << fig_path << '\n';
    for (const zoo::ClaimResult& r : claims) {
      char line[256];
      std::snprintf(line, sizeof line, "  %-28s target %-22.17g measured %-22.17g %s",
                    r.name.c_str(), r.target, r.measured,
                    r.pass ? "pass" : "FAIL");
      std::cout << line << '\n';
    }
    std::cout << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for random circle homeomorphisms"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "config file; keys live under a [subcommand] section and "
                 "explicit flags win");

  Options opt;
  CLI::App* est = app.add_subcommand(
      "estimate-rho", "estimate the rotation number over sampled omegas");
  CLI::App* ver = app.add_subcommand(
      "verify-cycle", "check a random (p,q)-cycle and its forced rho = p/q");
  CLI::App* fix = app.add_subcommand(
      "fixed-points", "detect fibre fixed points and cross-check mean rho");
  CLI::App* rep = app.add_subcommand(
      "reproduce", "emit figure data and check a zoo system's claims");

  for (CLI::App* cmd : {est, ver, fix, rep}) {
    cmd->fallthrough();
    add_system_options(cmd, opt);
    add_run_options(cmd, opt);
  }
  ver->add_option("--cycle-kind", opt.cycle_kind,
                  "cycle family: binary-expansion or explicit-constant");
  ver->add_option("--cycle-points", opt.cycle_points,
                  "constant cycle points for explicit-constant, "
                  "comma separated")
      ->delimiter(',');
  ver->add_option("--cycle-p", opt.cycle_p, "declared shift p (default 1)");
  ver->add_option("--perturb", opt.perturb,
                  "offset added to cycle point 0 (demonstrates failure)");

  try {
    app.parse(argc, argv);
    CLI::App* cmd = app.get_subcommands().front();
    finish_options(cmd, opt);
    if (cmd == est) return cmd_estimate_rho(opt);
    if (cmd == ver) return cmd_verify_cycle(opt);
    if (cmd == fix) return cmd_fixed_points(opt);
    return cmd_reproduce(opt);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cycle_error& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const precondition_error& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
