#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace opnorm {

/// Dense univariate polynomial with double coefficients, c[0] + c[1] x + ...
/// Backs the closed-form derivative recurrences of the test-function oracles.
struct Poly {
  std::vector<double> c;

  Poly() = default;
  Poly(std::initializer_list<double> cs) : c(cs) { trim(); }
  explicit Poly(std::vector<double> cs) : c(std::move(cs)) { trim(); }

  std::size_t degree() const noexcept { return c.empty() ? 0 : c.size() - 1; }
  bool is_zero() const noexcept { return c.empty(); }

  void trim() {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
  }

  double operator()(double x) const {
    double r = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }
};

inline Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  r.trim();
  return r;
}

inline Poly operator*(double s, const Poly& a) {
  Poly r = a;
  for (double& x : r.c) x *= s;
  r.trim();
  return r;
}

inline Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

inline Poly derivative(const Poly& a) {
  if (a.c.size() <= 1) return {};
  Poly r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = static_cast<double>(i) * a.c[i];
  return r;
}

}  // namespace opnorm
