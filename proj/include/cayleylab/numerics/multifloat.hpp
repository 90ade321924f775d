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

#ifndef CAYLEYLAB_NUMERICS_MULTIFLOAT_HPP
#define CAYLEYLAB_NUMERICS_MULTIFLOAT_HPP

// Extended precision as unevaluated sums of N native doubles
// (floating-point expansions). N = 2 is the classic double-double format,
// N = 4 quad-double. Components are kept renormalized: |c[i+1]| <= ulp(c[i]).

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>

namespace cayleylab {

namespace detail {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Error-free VecSum pass from the tail towards the head.
template <std::size_t K>
inline void vec_sum(std::array<double, K>& x, std::size_t count) {
  for (std::size_t i = count - 1; i > 0; --i) {
    double s, e;
    two_sum(x[i - 1], x[i], s, e);
    x[i - 1] = s;
    x[i] = e;
  }
}

// Compresses `count` terms (roughly ordered by decreasing magnitude) into
// N renormalized components.
template <std::size_t N, std::size_t K>
inline std::array<double, N> renormalize(std::array<double, K>& x, std::size_t count) {
  std::array<double, N> out{};
  if (count == 0) return out;
  vec_sum(x, count);
  vec_sum(x, count);
  std::size_t j = 0;
  double acc = x[0];
  for (std::size_t i = 1; i < count && j < N; ++i) {
    double s, e;
    two_sum(acc, x[i], s, e);
    if (e != 0.0) {
      out[j++] = s;
      acc = e;
    } else {
      acc = s;
    }
  }
  if (j < N) out[j] = acc;
  return out;
}

}  // namespace detail

template <std::size_t N>
class MultiFloat {
  static_assert(N >= 2, "use double for a single component");

 public:
  static constexpr std::size_t kComponents = N;

  constexpr MultiFloat() : c_{} {}
  constexpr MultiFloat(double x) : c_{} { c_[0] = x; }  // NOLINT(implicit)
  constexpr MultiFloat(int x) : MultiFloat(static_cast<double>(x)) {}  // NOLINT(implicit)

  static MultiFloat from_components(const std::array<double, N>& c) {
    std::array<double, N> tmp = c;
    MultiFloat r;
    r.c_ = detail::renormalize<N>(tmp, N);
    return r;
  }

  double operator[](std::size_t i) const { return c_[i]; }
  const std::array<double, N>& components() const { return c_; }

  explicit operator double() const { return c_[0] + c_[1]; }

  MultiFloat operator-() const {
    MultiFloat r;
    for (std::size_t i = 0; i < N; ++i) r.c_[i] = -c_[i];
    return r;
  }

  friend MultiFloat operator+(const MultiFloat& a, const MultiFloat& b) {
    if constexpr (N == 2) {
      double s1, s2, t1, t2;
      detail::two_sum(a.c_[0], b.c_[0], s1, s2);
      detail::two_sum(a.c_[1], b.c_[1], t1, t2);
      s2 += t1;
      detail::quick_two_sum(s1, s2, s1, s2);
      s2 += t2;
      MultiFloat r;
      detail::quick_two_sum(s1, s2, r.c_[0], r.c_[1]);
      return r;
    } else {
      // Merge by decreasing magnitude, then renormalize.
      std::array<double, 2 * N> x{};
      std::size_t i = 0, j = 0, k = 0;
      while (i < N && j < N) {
        if (std::fabs(a.c_[i]) >= std::fabs(b.c_[j])) {
          x[k++] = a.c_[i++];
        } else {
          x[k++] = b.c_[j++];
        }
      }
      while (i < N) x[k++] = a.c_[i++];
      while (j < N) x[k++] = b.c_[j++];
      MultiFloat r;
      r.c_ = detail::renormalize<N>(x, 2 * N);
      return r;
    }
  }

  friend MultiFloat operator-(const MultiFloat& a, const MultiFloat& b) { return a + (-b); }

  friend MultiFloat operator*(const MultiFloat& a, const MultiFloat& b) {
    if constexpr (N == 2) {
      double p1, p2;
      detail::two_prod(a.c_[0], b.c_[0], p1, p2);
      p2 += a.c_[0] * b.c_[1] + a.c_[1] * b.c_[0];
      MultiFloat r;
      detail::quick_two_sum(p1, p2, r.c_[0], r.c_[1]);
      return r;
    } else {
      // Terms grouped by order: products a_i b_j with i + j = L together with
      // the rounding errors of the order L - 1 products.
      std::array<double, 2 * N * N + N> x{};
      std::array<double, N> prev_errs{};
      std::size_t prev_n = 0;
      std::size_t count = 0;
      for (std::size_t level = 0; level <= N; ++level) {
        std::array<double, N> errs{};
        std::size_t n_err = 0;
        for (std::size_t i = 0; i <= level && i < N; ++i) {
          const std::size_t j = level - i;
          if (j >= N) continue;
          if (level < N) {
            double p, e;
            detail::two_prod(a.c_[i], b.c_[j], p, e);
            x[count++] = p;
            errs[n_err++] = e;
          } else {
            x[count++] = a.c_[i] * b.c_[j];
          }
        }
        for (std::size_t t = 0; t < prev_n; ++t) x[count++] = prev_errs[t];
        prev_errs = errs;
        prev_n = n_err;
      }
      MultiFloat r;
      r.c_ = detail::renormalize<N>(x, count);
      return r;
    }
  }

  friend MultiFloat operator/(const MultiFloat& a, const MultiFloat& b) {
    std::array<double, N + 1> q{};
    MultiFloat rem = a;
    for (std::size_t i = 0; i <= N; ++i) {
      q[i] = rem.c_[0] / b.c_[0];
      if (i < N) rem = rem - b * MultiFloat(q[i]);
    }
    MultiFloat r;
    r.c_ = detail::renormalize<N>(q, N + 1);
    return r;
  }

  MultiFloat& operator+=(const MultiFloat& o) { return *this = *this + o; }
  MultiFloat& operator-=(const MultiFloat& o) { return *this = *this - o; }
  MultiFloat& operator*=(const MultiFloat& o) { return *this = *this * o; }
  MultiFloat& operator/=(const MultiFloat& o) { return *this = *this / o; }

  // Renormalized expansions of equal values may still differ componentwise,
  // so ordering goes through the sign of the difference.
  friend bool operator==(const MultiFloat& a, const MultiFloat& b) { return (a - b).c_[0] == 0.0; }
  friend bool operator!=(const MultiFloat& a, const MultiFloat& b) { return !(a == b); }
  friend bool operator<(const MultiFloat& a, const MultiFloat& b) { return (a - b).c_[0] < 0.0; }
  friend bool operator>(const MultiFloat& a, const MultiFloat& b) { return b < a; }
  friend bool operator<=(const MultiFloat& a, const MultiFloat& b) { return !(b < a); }
  friend bool operator>=(const MultiFloat& a, const MultiFloat& b) { return !(a < b); }

  /// Exact scaling by 2^k.
  MultiFloat scaled(int k) const {
    MultiFloat r;
    for (std::size_t i = 0; i < N; ++i) r.c_[i] = std::ldexp(c_[i], k);
    return r;
  }

  MultiFloat floored() const {
    std::array<double, N> r{};
    for (std::size_t i = 0; i < N; ++i) {
      r[i] = std::floor(c_[i]);
      if (r[i] != c_[i]) break;
    }
    return from_components(r);
  }

 private:
  std::array<double, N> c_;
};

using DoubleDouble = MultiFloat<2>;
using QuadDouble = MultiFloat<4>;

}  // namespace cayleylab

#endif  // CAYLEYLAB_NUMERICS_MULTIFLOAT_HPP
