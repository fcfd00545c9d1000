#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string cli_path() {
  const char* env = std::getenv("RCHLAB_CLI");
  return env ? env : "";
}

std::string temp_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/rchlab-cli-XXXXXX";
    const char* d = mkdtemp(tmpl);
    return std::string(d ? d : "/tmp");
  }();
  return dir;
}

RunResult run_raw(const std::string& cmdline) {
  static int counter = 0;
  std::string outfile = temp_dir() + "/out" + std::to_string(counter++);
  std::string cmd = cmdline + " >" + outfile + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(outfile);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

RunResult run(const std::string& args) {
  return run_raw(cli_path() + " " + args);
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string first_line(const std::string& s) {
  return s.substr(0, s.find('\n'));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("the harness points at the binary") {
  REQUIRE_MESSAGE(!cli_path().empty(),
                  "RCHLAB_CLI must hold the path to the rchlab binary");
}

TEST_CASE("estimate-rho examples") {
  RunResult exact = run("estimate-rho --rotation 0.25");
  CHECK(exact.code == 0);
  CHECK(contains(exact.out, "mean rho = 0.25 (exact)"));

  RunResult two = run("estimate-rho --zoo two-point-integer-rho --n 2000");
  CHECK(two.code == 0);
  CHECK(contains(two.out, "mean rho = 0 (exact)"));

  RunResult cfp = run(
      "estimate-rho --zoo common-fixed-point --p1 0.7 --n 20000 --samples 50 "
      "--seed 7");
  CHECK(cfp.code == 0);
  auto pos = cfp.out.find("mean rho = ");
  REQUIRE(pos != std::string::npos);
  double mean = std::strtod(cfp.out.c_str() + pos + 11, nullptr);
  CHECK(std::fabs(mean - 0.7) < 0.01);
}

TEST_CASE("estimate-rho csv schema") {
  RunResult r = run(
      "estimate-rho --zoo binary-cycle --n 2000 --samples 5 --seed 3 "
      "--format csv");
  CHECK(r.code == 0);
  CHECK(first_line(r.out) ==
        "sample,seed,omega_digest,rho,n,cauchy_gap,m_bar,M_bar,weight");
  CHECK(contains(r.out, "# mean,"));
  CHECK(contains(r.out, "# std_error,"));
}

TEST_CASE("verify-cycle examples") {
  RunResult bin = run("verify-cycle --zoo binary-cycle --n 20000 --samples 20");
  CHECK(bin.code == 0);
  CHECK(contains(bin.out, "inferred shift: p = 1"));
  CHECK(contains(bin.out, "PASS"));

  RunResult rot = run(
      "verify-cycle --zoo rigid-rotation-cycle --p 1 --q 3 --n 6000");
  CHECK(rot.code == 0);

  RunResult bad = run(
      "verify-cycle --zoo binary-cycle --n 2000 --samples 20 --perturb 1e-4");
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "FAIL"));

  RunResult none = run("verify-cycle --zoo common-fixed-point --n 2000");
  CHECK(none.code == 2);  // that system declares no cycle
}

TEST_CASE("verify-cycle accepts explicit cycle flags") {
  RunResult r = run(
      "verify-cycle --rotation 0.25 --cycle-kind explicit-constant "
      "--cycle-points 0,0.25,0.5,0.75 --cycle-p 1 --n 2000");
  CHECK(r.code == 0);
  RunResult b = run(
      "verify-cycle --zoo binary-cycle --cycle-kind binary-expansion "
      "--cycle-p 1 --depth 40 --n 2000 --samples 10");
  CHECK(b.code == 0);
}

TEST_CASE("fixed-points examples and csv schema") {
  RunResult two = run("fixed-points --zoo two-point-integer-rho --n 2000");
  CHECK(two.code == 0);
  CHECK(contains(two.out, "probability = 0.5 (exact)"));

  RunResult ip = run(
      "fixed-points --zoo irrational-pair --a 0.3 --n 2000 --samples 20");
  CHECK(ip.code == 0);
  CHECK(contains(ip.out, "probability = 0 (exact)"));

  RunResult cfp = run("fixed-points --zoo common-fixed-point --n 2000 --samples 20");
  CHECK(cfp.code == 0);
  CHECK(contains(cfp.out, "probability = 1 (exact)"));
  CHECK(contains(cfp.out, "0.25"));

  RunResult csv = run(
      "fixed-points --zoo two-point-integer-rho --n 2000 --seed 5 --format csv");
  CHECK(csv.code == 0);
  CHECK(first_line(csv.out) == "seed,omega_digest,has_fp,roots");
  CHECK(contains(csv.out, "# consistent,1"));
}

TEST_CASE("reproduce writes the figure and checks the claims") {
  std::string fig = temp_dir() + "/fig.csv";
  RunResult r = run("reproduce --zoo binary-cycle --n 2000 --samples 20 --out " + fig);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "PASS"));
  std::ifstream in(fig);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,f0,f1");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 1024);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("bogus-subcommand").code == 2);
  CHECK(run("estimate-rho").code == 2);
  CHECK(run("estimate-rho --zoo no-such-system").code == 2);
  CHECK(run("estimate-rho --rotation 0.25 --zoo binary-cycle").code == 2);
  CHECK(run("estimate-rho --rotation 0.25 --format csv").code == 2);
  CHECK(run("estimate-rho --rotation 0.25 --n 999").code == 2);
  CHECK(run("estimate-rho --rotation 0.25 --n 0").code == 2);
  CHECK(run("estimate-rho --zoo binary-cycle --p0 0.4 --p1 0.4").code == 2);
  CHECK(run("estimate-rho --arnold 2.0 0.1").code == 2);  // |alpha| > 1
  CHECK(run("reproduce").code == 2);
  CHECK(run("verify-cycle --rotation 0.25 --cycle-kind weird").code == 2);
  CHECK(run("estimate-rho --rotation 0.25 --format yaml").code == 2);
}

TEST_CASE("io errors exit with 3") {
  CHECK(run("reproduce --zoo binary-cycle --n 2000 --samples 10 --out "
            "/nonexistent-dir/f.csv").code == 3);
  CHECK(run("estimate-rho --rotation 0.25 --out /nonexistent-dir/o.csv").code == 3);
}

TEST_CASE("help exits cleanly") {
  RunResult r = run("--help");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "estimate-rho"));
  CHECK(contains(r.out, "verify-cycle"));
  CHECK(contains(r.out, "fixed-points"));
  CHECK(contains(r.out, "reproduce"));
}

TEST_CASE("config files mirror flags and flags win") {
  std::string cfg = temp_dir() + "/rch.cfg";
  {
    std::ofstream f(cfg);
    f << "[estimate-rho]\nzoo = \"irrational-pair\"\nn = 2000\nsamples = 10\n"
      << "seed = 4\n";
  }
  RunResult r = run("estimate-rho --config " + cfg);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "irrational-pair"));
  CHECK(contains(r.out, "n = 2000"));
  RunResult over = run("estimate-rho --config " + cfg + " --n 4000");
  CHECK(over.code == 0);
  CHECK(contains(over.out, "n = 4000"));
}

TEST_CASE("identical seeds give identical csv bytes across thread counts") {
  std::string base =
      " estimate-rho --zoo binary-cycle --n 2000 --samples 16 --seed 12 "
      "--format csv";
  RunResult a = run_raw("RCH_LAB_THREADS=1 " + cli_path() + base);
  RunResult b = run_raw("RCH_LAB_THREADS=3 " + cli_path() + base);
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

}  // TEST_SUITE
