#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "opnorm/errors.hpp"

namespace opnorm {

struct QuadOptions {
  double tol = 1e-10;       // absolute tolerance for the whole interval
  long max_evals = 400000;  // function-evaluation budget
};

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double error_bound = 0.0;
  long evals = 0;

  double real() const { return value.real(); }
};

/// Adaptive composite Simpson. Panels are bisected until the local Simpson
/// discrepancy is below the proportionally allocated tolerance; the summed
/// discrepancies/15 give the reported error bound. Throws
/// QuadratureBudgetExceeded if the budget runs out before the tolerance is met.
inline QuadResult integrate(const std::function<std::complex<double>(double)>& f, double a,
                            double b, const QuadOptions& opt = {}) {
  QuadResult res;
  if (a == b) return res;

  struct Panel {
    double a, b;
    std::complex<double> fa, fm, fb, s;
    double tol;
    int depth;
  };

  auto simpson = [](double lo, double hi, std::complex<double> flo, std::complex<double> fmid,
                    std::complex<double> fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };

  long evals = 0;
  auto eval = [&](double x) {
    ++evals;
    if (evals > opt.max_evals)
      fail(errc::quadrature_budget_exceeded,
           "budget of " + std::to_string(opt.max_evals) + " evaluations exhausted");
    return f(x);
  };

  const double m0 = 0.5 * (a + b);
  const auto fa = eval(a), fm = eval(m0), fb = eval(b);
  std::vector<Panel> stack;
  stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), opt.tol, 0});

  std::complex<double> total{0.0, 0.0};
  double err = 0.0;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m), rm = 0.5 * (m + p.b);
    const auto flm = eval(lm), frm = eval(rm);
    const auto sl = simpson(p.a, m, p.fa, flm, p.fm);
    const auto sr = simpson(m, p.b, p.fm, frm, p.fb);
    const double disc = std::abs(sl + sr - p.s);
    if (disc <= 15.0 * p.tol || p.depth >= 52) {
      total += sl + sr + (sl + sr - p.s) / 15.0;  // Richardson correction
      err += disc / 15.0;
    } else {
      stack.push_back({p.a, m, p.fa, flm, p.fm, sl, 0.5 * p.tol, p.depth + 1});
      stack.push_back({m, p.b, p.fm, frm, p.fb, sr, 0.5 * p.tol, p.depth + 1});
    }
  }

  res.value = total;
  res.error_bound = err;
  res.evals = evals;
  return res;
}

inline QuadResult integrate_real(const std::function<double(double)>& f, double a, double b,
                                 const QuadOptions& opt = {}) {
  return integrate([&](double x) { return std::complex<double>(f(x), 0.0); }, a, b, opt);
}

}  // namespace opnorm
