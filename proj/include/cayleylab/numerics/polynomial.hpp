// Copyright 2026 The CayleyLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAYLEYLAB_NUMERICS_POLYNOMIAL_HPP
#define CAYLEYLAB_NUMERICS_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "cayleylab/errors.hpp"
#include "cayleylab/numerics/scalar.hpp"

namespace cayleylab {

enum class Basis { kMonomial, kChebyshev };

/// Real polynomial in the monomial basis (sum c_k x^k) or the Chebyshev basis
/// on [lo, hi] (sum c_k T_k(s), s = (2x - lo - hi) / (hi - lo)).
template <Scalar T>
class RealPolynomial {
 public:
  RealPolynomial() : coeffs_{T(0.0)} {}
  RealPolynomial(Basis basis, std::vector<T> coeffs, T lo = T(0.0), T hi = T(1.0))
      : basis_(basis), coeffs_(std::move(coeffs)), lo_(lo), hi_(hi) {
    require(!coeffs_.empty(), "polynomial needs at least one coefficient");
    require(basis_ == Basis::kMonomial || hi_ > lo_, "Chebyshev interval must be nondegenerate");
  }

  static RealPolynomial monomial(std::vector<T> coeffs) { return {Basis::kMonomial, std::move(coeffs)}; }
  static RealPolynomial chebyshev(std::vector<T> coeffs, T lo, T hi) {
    return {Basis::kChebyshev, std::move(coeffs), lo, hi};
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Basis basis() const { return basis_; }
  const T& lo() const { return lo_; }
  const T& hi() const { return hi_; }
  const std::vector<T>& coefficients() const { return coeffs_; }

  /// Interval variable s for x (Chebyshev basis).
  T to_unit(const T& x) const { return (scale2(x) - lo_ - hi_) / (hi_ - lo_); }

  /// Horner (monomial) or Clenshaw (Chebyshev); valid outside the interval too.
  T operator()(const T& x) const {
    const int d = degree();
    if (basis_ == Basis::kMonomial) {
      T acc = coeffs_[d];
      for (int k = d - 1; k >= 0; --k) acc = acc * x + coeffs_[k];
      return acc;
    }
    const T s = to_unit(x);
    const T two_s = s + s;
    T b1(0.0), b2(0.0);
    for (int k = d; k >= 1; --k) {
      const T b0 = two_s * b1 - b2 + coeffs_[k];
      b2 = b1;
      b1 = b0;
    }
    return s * b1 - b2 + coeffs_[0];
  }

  RealPolynomial to_monomial() const {
    if (basis_ == Basis::kMonomial) return *this;
    const int d = degree();
    // Coefficients in s first, then substitute s = alpha x + beta.
    std::vector<T> in_s(d + 1, T(0.0));
    std::vector<T> tkm1{T(1.0)}, tk{T(0.0), T(1.0)};
    in_s[0] += coeffs_[0];
    if (d >= 1) in_s[1] += coeffs_[1];
    for (int k = 2; k <= d; ++k) {
      std::vector<T> next(k + 1, T(0.0));
      for (int j = 0; j < static_cast<int>(tk.size()); ++j) next[j + 1] += scale2(tk[j]);
      for (int j = 0; j < static_cast<int>(tkm1.size()); ++j) next[j] -= tkm1[j];
      for (int j = 0; j <= k; ++j) in_s[j] += coeffs_[k] * next[j];
      tkm1 = std::move(tk);
      tk = std::move(next);
    }
    const T alpha = T(2.0) / (hi_ - lo_);
    const T beta = -(lo_ + hi_) / (hi_ - lo_);
    return monomial(compose_linear(in_s, alpha, beta));
  }

  RealPolynomial to_chebyshev(const T& lo, const T& hi) const {
    const RealPolynomial mono = to_monomial();
    // x = gamma s + eta
    const T gamma = (hi - lo) / T(2.0);
    const T eta = (hi + lo) / T(2.0);
    const std::vector<T> in_s = compose_linear(mono.coeffs_, gamma, eta);
    // Horner in the Chebyshev basis: acc <- acc * s + e_j.
    const int d = degree();
    std::vector<T> acc{in_s[d]};
    for (int j = d - 1; j >= 0; --j) {
      std::vector<T> next(acc.size() + 1, T(0.0));
      for (std::size_t k = 0; k < acc.size(); ++k) {
        if (k == 0) {
          next[1] += acc[0];
        } else {
          next[k + 1] += scale2(acc[k], -1);
          next[k - 1] += scale2(acc[k], -1);
        }
      }
      next[0] += in_s[j];
      acc = std::move(next);
    }
    return chebyshev(std::move(acc), lo, hi);
  }

  T coefficient_abs_sum() const {
    T s(0.0);
    for (const auto& c : coeffs_) s += num::abs(c);
    return s;
  }

  /// Values of the basis functions at x.
  std::vector<T> basis_row(const T& x) const { return basis_values(basis_, degree(), x, lo_, hi_); }

  static std::vector<T> basis_values(Basis basis, int d, const T& x, const T& lo, const T& hi) {
    std::vector<T> row(d + 1);
    const T s = basis == Basis::kMonomial ? x : (scale2(x) - lo - hi) / (hi - lo);
    row[0] = T(1.0);
    if (d >= 1) row[1] = s;
    for (int k = 2; k <= d; ++k) {
      row[k] = basis == Basis::kMonomial ? row[k - 1] * s : scale2(s) * row[k - 1] - row[k - 2];
    }
    return row;
  }

 private:
  static T scale2(const T& x, int k = 1) { return num::scale2(x, k); }

  // Coefficients of sum_j e_j (alpha y + beta)^j as a polynomial in y.
  static std::vector<T> compose_linear(const std::vector<T>& e, const T& alpha, const T& beta) {
    const int d = static_cast<int>(e.size()) - 1;
    std::vector<T> acc{e[d]};
    for (int j = d - 1; j >= 0; --j) {
      std::vector<T> next(acc.size() + 1, T(0.0));
      for (std::size_t k = 0; k < acc.size(); ++k) {
        next[k + 1] += acc[k] * alpha;
        next[k] += acc[k] * beta;
      }
      next[0] += e[j];
      acc = std::move(next);
    }
    return acc;
  }

  Basis basis_ = Basis::kMonomial;
  std::vector<T> coeffs_;
  T lo_{0.0};
  T hi_{1.0};
};

template <Scalar T>
struct Point {
  T x;
  T y;
};

/// n Chebyshev points of the first kind on [lo, hi], ascending.
template <Scalar T>
std::vector<T> chebyshev_nodes(int n, const T& lo, const T& hi) {
  require(n >= 1, "chebyshev_nodes: n must be positive");
  std::vector<T> out(n);
  const T pi = ScalarTraits<T>::pi();
  for (int k = 0; k < n; ++k) {
    const T c = num::cos(pi * T(static_cast<double>(2 * (n - 1 - k) + 1)) / T(static_cast<double>(2 * n)));
    out[k] = (lo + hi) / T(2.0) + (hi - lo) / T(2.0) * c;
  }
  return out;
}

/// Value at `target` of the interpolant through all points (barycentric form
/// l(t) * sum w_j y_j / (t - x_j), which is stable for extrapolation).
template <Scalar T>
T lagrange_extrapolate(const std::vector<Point<T>>& points, const T& target) {
  require(!points.empty(), "lagrange_extrapolate: no points");
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i].x == points[j].x) fail(ErrorKind::kDuplicateNode, "duplicate interpolation node");
  for (const auto& p : points)
    if (p.x == target) return p.y;
  T ell(1.0), sum(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    T w(1.0);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) w = w * (points[j].x - points[k].x);
    const T diff = target - points[j].x;
    ell = ell * diff;
    sum += points[j].y / (w * diff);
  }
  return ell * sum;
}

/// Householder least squares for a tall dense system stored row-major.
/// Returns the solution and an estimate of the 1-norm condition number of A.
template <Scalar T>
struct LeastSquaresSolution {
  std::vector<T> x;
  double condition = 1.0;
};

template <Scalar T>
LeastSquaresSolution<T> householder_least_squares(std::vector<T> a, std::size_t rows, std::size_t cols,
                                                  std::vector<T> b) {
  require(rows >= cols && a.size() == rows * cols && b.size() == rows, "least squares: shape mismatch");
  auto at = [&](std::size_t r, std::size_t c) -> T& { return a[r * cols + c]; };
  std::vector<T> v(rows);
  for (std::size_t k = 0; k < cols; ++k) {
    T norm2(0.0);
    for (std::size_t i = k; i < rows; ++i) norm2 += at(i, k) * at(i, k);
    T alpha = num::sqrt(norm2);
    if (num::hi(alpha) == 0.0) continue;
    if (num::hi(at(k, k)) > 0.0) alpha = -alpha;
    for (std::size_t i = k; i < rows; ++i) v[i] = at(i, k);
    v[k] -= alpha;
    T vn(0.0);
    for (std::size_t i = k; i < rows; ++i) vn += v[i] * v[i];
    if (num::hi(vn) == 0.0) continue;
    const T tau = T(2.0) / vn;
    for (std::size_t c = k; c < cols; ++c) {
      T dot(0.0);
      for (std::size_t i = k; i < rows; ++i) dot += v[i] * at(i, c);
      dot = dot * tau;
      for (std::size_t i = k; i < rows; ++i) at(i, c) -= dot * v[i];
    }
    T dot(0.0);
    for (std::size_t i = k; i < rows; ++i) dot += v[i] * b[i];
    dot = dot * tau;
    for (std::size_t i = k; i < rows; ++i) b[i] -= dot * v[i];
  }
  LeastSquaresSolution<T> out;
  out.x.assign(cols, T(0.0));
  for (std::size_t k = cols; k-- > 0;) {
    T s = b[k];
    for (std::size_t c = k + 1; c < cols; ++c) s -= at(k, c) * out.x[c];
    if (num::hi(at(k, k)) == 0.0) {
      out.condition = std::numeric_limits<double>::infinity();
      return out;
    }
    out.x[k] = s / at(k, k);
  }
  // cond_1(R) = |R|_1 |R^-1|_1 with R^-1 formed explicitly (cols is small).
  double rnorm = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r <= c; ++r) s += std::fabs(num::to_double(at(r, c)));
    rnorm = std::max(rnorm, s);
  }
  std::vector<double> inv(cols * cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t k = c + 1; k-- > 0;) {
      double s = k == c ? 1.0 : 0.0;
      for (std::size_t j = k + 1; j <= c; ++j) s -= num::to_double(at(k, j)) * inv[j * cols + c];
      inv[k * cols + c] = s / num::to_double(at(k, k));
    }
  }
  double inorm = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < cols; ++r) s += std::fabs(inv[r * cols + c]);
    inorm = std::max(inorm, s);
  }
  out.condition = rnorm * inorm;
  return out;
}

template <Scalar T>
struct FitResult {
  RealPolynomial<T> polynomial;
  std::vector<T> residuals;  // y_i - p(x_i)
  double max_residual = 0.0;
  double condition = 1.0;
};

/// Least-squares fit of degree d. The Chebyshev basis uses [lo, hi] when
/// given, else the hull of the x values.
template <Scalar T>
FitResult<T> poly_fit(const std::vector<Point<T>>& points, int d, Basis basis = Basis::kChebyshev,
                      std::optional<std::pair<T, T>> interval = std::nullopt) {
  require(d >= 0, "poly_fit: degree must be nonnegative");
  require(points.size() >= static_cast<std::size_t>(d + 1), "poly_fit: need at least d+1 points");
  T lo(0.0), hi(1.0);
  if (basis == Basis::kChebyshev) {
    if (interval) {
      lo = interval->first;
      hi = interval->second;
    } else {
      lo = hi = points[0].x;
      for (const auto& p : points) {
        lo = num::min(lo, p.x);
        hi = num::max(hi, p.x);
      }
      if (!(lo < hi)) hi = lo + T(1.0);
    }
  }
  const std::size_t rows = points.size(), cols = static_cast<std::size_t>(d + 1);
  std::vector<T> a(rows * cols), b(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = RealPolynomial<T>::basis_values(basis, d, points[i].x, lo, hi);
    std::copy(row.begin(), row.end(), a.begin() + i * cols);
    b[i] = points[i].y;
  }
  auto sol = householder_least_squares(std::move(a), rows, cols, std::move(b));
  const double eps = ScalarTraits<T>::epsilon();
  if (!(sol.condition * sol.condition <= 1.0 / eps)) {
    fail(ErrorKind::kIllConditioned, "normal equations condition estimate exceeds 1/epsilon");
  }
  FitResult<T> out{RealPolynomial<T>(basis, std::move(sol.x), lo, hi), {}, 0.0, sol.condition};
  out.residuals.reserve(rows);
  for (const auto& p : points) {
    const T r = p.y - out.polynomial(p.x);
    out.residuals.push_back(r);
    out.max_residual = std::max(out.max_residual, std::fabs(num::to_double(r)));
  }
  return out;
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_NUMERICS_POLYNOMIAL_HPP
