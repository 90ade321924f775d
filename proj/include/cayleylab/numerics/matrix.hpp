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

#ifndef CAYLEYLAB_NUMERICS_MATRIX_HPP
#define CAYLEYLAB_NUMERICS_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "cayleylab/errors.hpp"
#include "cayleylab/numerics/complex.hpp"

namespace cayleylab {

/// Dense row-major complex matrix.
template <Scalar T>
class Matrix {
 public:
  using value_type = Complex<T>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex<T>> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows_ * cols_, "matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex<T>(1.0);
    return m;
  }

  static Matrix diagonal(const std::vector<Complex<T>>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex<T>& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex<T>& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Complex<T>>& data() const { return data_; }
  std::vector<Complex<T>>& data() { return data_; }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = conj((*this)(r, c));
    return out;
  }

  Matrix conjugate() const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = conj(data_[i]);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex<T> aik = a(i, k);
        if (aik.re == T(0.0) && aik.im == T(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const Complex<T>& s, Matrix a) {
    for (auto& z : a.data_) z = s * z;
    return a;
  }

  /// Bit-level equality of every component.
  friend bool identical(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
      if constexpr (std::is_same_v<T, double>) {
        if (a.data_[i].re != b.data_[i].re || a.data_[i].im != b.data_[i].im) return false;
      } else {
        if (a.data_[i].re.components() != b.data_[i].re.components() ||
            a.data_[i].im.components() != b.data_[i].im.components())
          return false;
      }
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex<T>> data_;
};

template <Scalar T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// max_{ij} |A_ij - B_ij|
template <Scalar T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, num::to_double(abs(a.data()[i] - b.data()[i])));
  return m;
}

/// ||U^dagger U - I||_max
template <Scalar T>
double unitarity_defect(const Matrix<T>& u) {
  return max_abs_diff(u.adjoint() * u, Matrix<T>::identity(u.cols()));
}

template <Scalar To, Scalar From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.data().size(); ++i) out.data()[i] = complex_cast<To>(m.data()[i]);
  return out;
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_NUMERICS_MATRIX_HPP
