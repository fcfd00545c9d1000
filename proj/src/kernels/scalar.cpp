#include <algorithm>

#include "kernels_core.hpp"
#include "rchlab/kernels.hpp"

namespace rchlab::kernels {
namespace {

using detail::arnold_eval_core;
using detail::pwl_eval_core;
using detail::sin2pi_core;

void sin2pi_n(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = sin2pi_core(x[i]);
}

void arnold_eval_n(const double* x, double amp, double beta, double* y,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = arnold_eval_core(x[i], amp, beta);
}

void pwl_eval_n(const double* x, const PwlTable& tb, double* y,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = pwl_eval_core(x[i], tb, 0);
}

void add_scalar_n(const double* x, double c, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + c;
}

void arnold_step_n(double* x, const double* amp, const double* beta,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    x[i] = arnold_eval_core(x[i], amp[i], beta[i]);
}

void add_n(double* x, const double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] += c[i];
}

void pwl_step_n(double* x, const PwlTable& tb, const std::int32_t* base,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    x[i] = pwl_eval_core(x[i], tb, static_cast<std::size_t>(base[i]));
}

void sub_n(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] -= x[i];
}

void minmax_n(const double* x, std::size_t n, double* lo, double* hi) {
  double a = x[0], b = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    a = std::min(a, x[i]);
    b = std::max(b, x[i]);
  }
  *lo = a;
  *hi = b;
}

}  // namespace

double sin2pi(double x) { return sin2pi_core(x); }

double arnold_eval(double x, double amp, double beta) {
  return detail::arnold_eval_core(x, amp, beta);
}

double pwl_eval(double x, const PwlTable& table, std::size_t base) {
  return detail::pwl_eval_core(x, table, base);
}

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",     sin2pi_n, arnold_eval_n, pwl_eval_n, add_scalar_n,
      arnold_step_n, add_n,   pwl_step_n,    sub_n,      minmax_n,
  };
  return ops;
}

}  // namespace rchlab::kernels
