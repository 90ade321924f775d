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

#ifndef CAYLEYLAB_NUMERICS_COMPLEX_HPP
#define CAYLEYLAB_NUMERICS_COMPLEX_HPP

#include <algorithm>
#include <array>
#include <ostream>
#include <type_traits>

#include "cayleylab/numerics/scalar.hpp"

namespace cayleylab {

// std::complex is only specified for the built-in floating types, so the
// extended scalars get a minimal complex type of their own.
template <Scalar T>
struct Complex {
  T re{};
  T im{};

  constexpr Complex() = default;
  constexpr Complex(T r) : re(r), im(0.0) {}  // NOLINT(implicit)
  constexpr Complex(T r, T i) : re(r), im(i) {}
  template <typename D>
    requires(std::is_same_v<D, double> && !std::is_same_v<T, double>)
  constexpr Complex(D r) : re(r), im(0.0) {}  // NOLINT(implicit)

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const T& s, const Complex& a) { return {s * a.re, s * a.im}; }
  friend Complex operator*(const Complex& a, const T& s) { return {s * a.re, s * a.im}; }
  friend Complex operator/(const Complex& a, const T& s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const T den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <Scalar T>
inline Complex<T> conj(const Complex<T>& z) {
  return {z.re, -z.im};
}

/// |z|^2
template <Scalar T>
inline T norm(const Complex<T>& z) {
  return z.re * z.re + z.im * z.im;
}

template <Scalar T>
inline T abs(const Complex<T>& z) {
  return num::sqrt(norm(z));
}

template <Scalar T>
inline Complex<T> polar(const T& radius, const T& phase) {
  T s, c;
  num::sincos(phase, s, c);
  return {radius * c, radius * s};
}

template <Scalar T>
inline T arg(const Complex<T>& z) {
  return num::atan2(z.im, z.re);
}

template <Scalar To, Scalar From>
inline Complex<To> complex_cast(const Complex<From>& z) {
  if constexpr (std::is_same_v<To, From>) {
    return z;
  } else if constexpr (std::is_same_v<From, double>) {
    return {To(z.re), To(z.im)};
  } else if constexpr (std::is_same_v<To, double>) {
    return {num::to_double(z.re), num::to_double(z.im)};
  } else {
    // Widening between expansions keeps every component.
    std::array<double, To::kComponents> re{}, im{};
    for (std::size_t i = 0; i < std::min(To::kComponents, From::kComponents); ++i) {
      re[i] = z.re[i];
      im[i] = z.im[i];
    }
    return {To::from_components(re), To::from_components(im)};
  }
}

template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Complex<T>& z) {
  return os << "(" << num::to_string(z.re) << "," << num::to_string(z.im) << ")";
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_NUMERICS_COMPLEX_HPP
