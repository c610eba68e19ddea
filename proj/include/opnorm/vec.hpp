#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "opnorm/errors.hpp"

namespace opnorm {

using Scalar = std::complex<double>;

/// Dense finite-dimensional vector over R or C. Real vectors are complex
/// vectors with vanishing imaginary parts; magnitudes are computed exactly
/// per coordinate via std::abs.
struct Vec {
  std::vector<Scalar> c;

  Vec() = default;
  explicit Vec(std::size_t n) : c(n, Scalar{0.0, 0.0}) {}
  Vec(std::initializer_list<Scalar> xs) : c(xs) {}

  std::size_t dim() const noexcept { return c.size(); }
  Scalar& operator[](std::size_t i) { return c[i]; }
  const Scalar& operator[](std::size_t i) const { return c[i]; }

  bool is_zero() const noexcept {
    for (const auto& z : c)
      if (z != Scalar{0.0, 0.0}) return false;
    return true;
  }
};

inline Vec real_vec(std::initializer_list<double> xs) {
  Vec v;
  v.c.reserve(xs.size());
  for (double x : xs) v.c.emplace_back(x, 0.0);
  return v;
}

inline Vec real_vec(const std::vector<double>& xs) {
  Vec v;
  v.c.reserve(xs.size());
  for (double x : xs) v.c.emplace_back(x, 0.0);
  return v;
}

inline void check_same_dim(const Vec& a, const Vec& b, const char* where) {
  if (a.dim() != b.dim()) fail(errc::space_mismatch, std::string(where) + ": dimension mismatch");
}

inline Vec operator+(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "Vec+");
  Vec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "Vec-");
  Vec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator*(Scalar s, const Vec& a) {
  Vec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = s * a[i];
  return r;
}

inline Vec operator*(double s, const Vec& a) { return Scalar{s, 0.0} * a; }

inline Vec operator-(const Vec& a) { return -1.0 * a; }

inline bool operator==(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

inline Scalar dot(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "dot");
  Scalar s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

inline double euclidean_norm(const Vec& a) {
  double s = 0.0;
  for (const auto& z : a.c) s += std::norm(z);
  return std::sqrt(s);
}

/// Small dense real square matrix; the desk-scale algebra carrier.
struct Mat {
  std::size_t n = 0;
  std::vector<double> a;  // row-major

  Mat() = default;
  explicit Mat(std::size_t size) : n(size), a(size * size, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  static Mat identity(std::size_t size) {
    Mat m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Mat operator+(const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(errc::space_mismatch, "Mat+: size mismatch");
  Mat r(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(errc::space_mismatch, "Mat-: size mismatch");
  Mat r(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

inline Mat operator*(double s, const Mat& x) {
  Mat r(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = s * x.a[i];
  return r;
}

inline Mat operator*(const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(errc::space_mismatch, "Mat*: size mismatch");
  Mat r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) {
      const double v = x(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < x.n; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

inline double frobenius_norm(const Mat& x) {
  double s = 0.0;
  for (double v : x.a) s += v * v;
  return std::sqrt(s);
}

namespace detail {

/// Largest eigenvalue of a symmetric matrix by cyclic Jacobi sweeps.
inline double jacobi_max_eigenvalue(Mat s) {
  const std::size_t n = s.n;
  if (n == 1) return s(0, 0);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  double lam = s(0, 0);
  for (std::size_t i = 1; i < n; ++i) lam = std::max(lam, s(i, i));
  return lam;
}

}  // namespace detail

/// Spectral (operator-2) norm; submultiplicative and gives ||I|| = 1.
inline double spectral_norm(const Mat& x) {
  Mat g(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < x.n; ++k) s += x(k, i) * x(k, j);
      g(i, j) = s;
    }
  const double lam = detail::jacobi_max_eigenvalue(g);
  return lam > 0.0 ? std::sqrt(lam) : 0.0;
}

}  // namespace opnorm
