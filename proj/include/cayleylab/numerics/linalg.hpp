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

#ifndef CAYLEYLAB_NUMERICS_LINALG_HPP
#define CAYLEYLAB_NUMERICS_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cayleylab/errors.hpp"
#include "cayleylab/numerics/matrix.hpp"
#include "cayleylab/numerics/rng.hpp"

namespace cayleylab {

/// Standard complex Gaussian CN(0, 1): real and imaginary parts N(0, 1/2).
template <Scalar T>
Complex<T> complex_normal(SeededRng& rng) {
  constexpr double kScale = 0.70710678118654752440;
  const double re = rng.normal() * kScale;
  const double im = rng.normal() * kScale;
  return {T(re), T(im)};
}

/// Haar-random unitary: Ginibre matrix orthonormalized column by column
/// (modified Gram-Schmidt, two passes). The triangular factor then has a
/// positive real diagonal, which is the convention that makes Q exactly Haar.
template <Scalar T>
Matrix<T> haar_unitary(std::size_t dim, SeededRng& rng) {
  require(dim >= 1, "haar_unitary: dim must be positive");
  Matrix<T> a(dim, dim);
  for (auto& z : a.data()) z = complex_normal<T>(rng);
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex<T> dot;
        for (std::size_t i = 0; i < dim; ++i) dot += conj(a(i, k)) * a(i, j);
        for (std::size_t i = 0; i < dim; ++i) a(i, j) -= dot * a(i, k);
      }
    }
    T nrm(0.0);
    for (std::size_t i = 0; i < dim; ++i) nrm += norm(a(i, j));
    nrm = num::sqrt(nrm);
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = a(i, j) / nrm;
  }
  return a;
}

template <Scalar T>
struct SpectralDecomposition {
  std::vector<T> phases;  // ascending, in (-pi, pi]
  Matrix<T> vectors;      // column j is the eigenvector of phases[j]

  Matrix<T> reconstruct() const {
    const std::size_t n = phases.size();
    Matrix<T> out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex<T> lam = polar(T(1.0), phases[j]);
      for (std::size_t r = 0; r < n; ++r) {
        const Complex<T> lv = lam * vectors(r, j);
        for (std::size_t c = 0; c < n; ++c) out(r, c) += lv * conj(vectors(c, j));
      }
    }
    return out;
  }
};

/// Default acceptance tolerance: 1e-12 at native double, scaled with the unit
/// roundoff and dimension otherwise.
template <Scalar T>
double default_spectral_tolerance(std::size_t dim) {
  const double scale = std::max(1.0, static_cast<double>(dim) / 4.0);
  return 1e-12 * scale * (ScalarTraits<T>::epsilon() / ScalarTraits<double>::epsilon());
}

namespace detail {

// Rotation G with G * [x; y] = [r; 0], stored as (c real, s complex):
// G = [[c, s], [-conj(s), c]].
template <Scalar T>
void givens(const Complex<T>& x, const Complex<T>& y, T& c, Complex<T>& s) {
  const T ax = abs(x);
  const T ay = abs(y);
  if (num::hi(ay) == 0.0) {
    c = T(1.0);
    s = Complex<T>();
    return;
  }
  if (num::hi(ax) == 0.0) {
    c = T(0.0);
    s = conj(y) / ay;
    return;
  }
  const T r = num::sqrt(ax * ax + ay * ay);
  c = ax / r;
  s = (x / ax) * conj(y) / r;
}

// Complex Schur form by Hessenberg reduction and Wilkinson-shifted QR with
// deflation. On return h is (numerically) upper triangular and q unitary
// with q^dagger * a * q = h.
template <Scalar T>
void complex_schur(Matrix<T>& h, Matrix<T>& q, int max_iterations_per_eigenvalue = 60) {
  const std::size_t n = h.rows();
  q = Matrix<T>::identity(n);
  // Householder reduction to Hessenberg form.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    T alpha2(0.0);
    for (std::size_t i = k + 1; i < n; ++i) alpha2 += norm(h(i, k));
    const T alpha = num::sqrt(alpha2);
    if (num::hi(alpha) == 0.0) continue;
    const Complex<T> x0 = h(k + 1, k);
    const T ax0 = abs(x0);
    const Complex<T> phase = num::hi(ax0) == 0.0 ? Complex<T>(1.0) : x0 / ax0;
    std::vector<Complex<T>> v(n, Complex<T>());
    v[k + 1] = x0 + phase * alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    T vn(0.0);
    for (std::size_t i = k + 1; i < n; ++i) vn += norm(v[i]);
    if (num::hi(vn) == 0.0) continue;
    const T tau = T(2.0) / vn;
    // h <- (I - tau v v^H) h (I - tau v v^H); q <- q (I - tau v v^H)
    for (std::size_t c = 0; c < n; ++c) {
      Complex<T> dot;
      for (std::size_t i = k + 1; i < n; ++i) dot += conj(v[i]) * h(i, c);
      dot = tau * dot;
      for (std::size_t i = k + 1; i < n; ++i) h(i, c) -= v[i] * dot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      Complex<T> dot;
      for (std::size_t i = k + 1; i < n; ++i) dot += h(r, i) * v[i];
      dot = tau * dot;
      for (std::size_t i = k + 1; i < n; ++i) h(r, i) -= dot * conj(v[i]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      Complex<T> dot;
      for (std::size_t i = k + 1; i < n; ++i) dot += q(r, i) * v[i];
      dot = tau * dot;
      for (std::size_t i = k + 1; i < n; ++i) q(r, i) -= dot * conj(v[i]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex<T>();
  }

  const double eps = ScalarTraits<T>::epsilon();
  std::size_t hi_idx = n == 0 ? 0 : n - 1;
  int iterations = 0;
  int since_deflation = 0;
  std::vector<T> cs(n);
  std::vector<Complex<T>> ss(n);
  while (n > 0 && hi_idx > 0) {
    // Find the active unreduced block [lo, hi_idx].
    std::size_t lo = hi_idx;
    while (lo > 0) {
      const double sub = num::to_double(abs(h(lo, lo - 1)));
      const double diag = num::to_double(abs(h(lo, lo))) + num::to_double(abs(h(lo - 1, lo - 1)));
      if (sub <= eps * diag) {
        h(lo, lo - 1) = Complex<T>();
        break;
      }
      --lo;
    }
    if (lo == hi_idx) {
      --hi_idx;
      since_deflation = 0;
      continue;
    }
    if (++iterations > max_iterations_per_eigenvalue * static_cast<int>(n)) {
      fail(ErrorKind::kConvergenceFailure, "complex Schur iteration budget exhausted");
    }
    ++since_deflation;
    // Wilkinson shift from the trailing 2x2 block; exceptional shift now and then.
    Complex<T> mu;
    {
      const Complex<T> a = h(hi_idx - 1, hi_idx - 1), b = h(hi_idx - 1, hi_idx);
      const Complex<T> c = h(hi_idx, hi_idx - 1), d = h(hi_idx, hi_idx);
      const Complex<T> half_diff = (a - d) * T(0.5);
      const Complex<T> disc = half_diff * half_diff + b * c;
      // principal square root of disc
      const T r = abs(disc);
      Complex<T> root;
      if (num::hi(r) != 0.0) {
        const T re = num::sqrt((r + disc.re) * T(0.5));
        T im = num::sqrt(num::max(T(0.0), (r - disc.re) * T(0.5)));
        if (num::hi(disc.im) < 0.0) im = -im;
        root = {re, im};
      }
      const Complex<T> mid = (a + d) * T(0.5);
      const Complex<T> l1 = mid + root, l2 = mid - root;
      mu = num::hi(abs(l1 - d)) < num::hi(abs(l2 - d)) ? l1 : l2;
      if (since_deflation % 11 == 10) {
        mu = d + Complex<T>(T(0.75) * abs(h(hi_idx, hi_idx - 1)), T(0.5) * abs(h(hi_idx, hi_idx - 1)));
      }
    }
    for (std::size_t i = lo; i <= hi_idx; ++i) h(i, i) -= mu;
    for (std::size_t k = lo; k < hi_idx; ++k) {
      givens(h(k, k), h(k + 1, k), cs[k], ss[k]);
      const T c = cs[k];
      const Complex<T> s = ss[k];
      for (std::size_t col = k; col < n; ++col) {
        const Complex<T> x = h(k, col), y = h(k + 1, col);
        h(k, col) = c * x + s * y;
        h(k + 1, col) = c * y - conj(s) * x;
      }
    }
    for (std::size_t k = lo; k < hi_idx; ++k) {
      const T c = cs[k];
      const Complex<T> s = ss[k];
      // right-multiply by G^dagger on columns k, k+1
      const std::size_t rmax = std::min(hi_idx, k + 1);
      for (std::size_t row = 0; row <= rmax; ++row) {
        const Complex<T> x = h(row, k), y = h(row, k + 1);
        h(row, k) = c * x + conj(s) * y;
        h(row, k + 1) = c * y - s * x;
      }
      for (std::size_t row = 0; row < n; ++row) {
        const Complex<T> x = q(row, k), y = q(row, k + 1);
        q(row, k) = c * x + conj(s) * y;
        q(row, k + 1) = c * y - s * x;
      }
    }
    for (std::size_t i = lo; i <= hi_idx; ++i) h(i, i) += mu;
  }
}

}  // namespace detail

/// Eigendecomposition of a unitary matrix through its complex Schur form,
/// which is diagonal for normal input. Degenerate eigenspaces come out
/// orthonormal because the Schur vectors are.
template <Scalar T>
SpectralDecomposition<T> unitary_eigendecomposition(const Matrix<T>& u, double tol = -1.0) {
  require(u.square() && u.rows() >= 1, "unitary_eigendecomposition: square matrix required");
  const std::size_t n = u.rows();
  if (tol < 0.0) tol = default_spectral_tolerance<T>(n);
  if (unitarity_defect(u) > tol) {
    fail(ErrorKind::kNonNormalInput, "matrix is not unitary within tolerance");
  }
  Matrix<T> h = u, q;
  detail::complex_schur(h, q);
  std::vector<T> raw(n);
  for (std::size_t j = 0; j < n; ++j) raw[j] = arg(h(j, j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  SpectralDecomposition<T> out;
  out.phases.resize(n);
  out.vectors = Matrix<T>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.phases[j] = raw[order[j]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = q(r, order[j]);
  }
  if (max_abs_diff(out.reconstruct(), u) > tol || unitarity_defect(out.vectors) > tol) {
    fail(ErrorKind::kConvergenceFailure, "eigendecomposition reconstruction exceeds tolerance");
  }
  return out;
}

/// Solves A X = B by Gaussian elimination with partial pivoting.
template <Scalar T>
Matrix<T> solve(Matrix<T> a, Matrix<T> b) {
  require(a.square() && a.rows() == b.rows(), "solve: shape mismatch");
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      const double v = num::to_double(abs(a(i, k)));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) fail(ErrorKind::kIllConditioned, "singular matrix in solve");
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(k, c), b(piv, c));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex<T> f = a(i, k) / a(k, k);
      if (num::hi(norm(f)) == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
      for (std::size_t c = 0; c < b.cols(); ++c) b(i, c) -= f * b(k, c);
    }
  }
  Matrix<T> x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t k = n; k-- > 0;) {
      Complex<T> s = b(k, c);
      for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x(j, c);
      x(k, c) = s / a(k, k);
    }
  }
  return x;
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_NUMERICS_LINALG_HPP
