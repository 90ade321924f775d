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

#ifndef CAYLEYLAB_NUMERICS_SCALAR_HPP
#define CAYLEYLAB_NUMERICS_SCALAR_HPP

// Uniform scalar interface over double, DoubleDouble and QuadDouble:
// traits, elementary functions, and decimal conversion.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "cayleylab/numerics/multifloat.hpp"

namespace cayleylab {

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr std::size_t kComponents = 1;
  static constexpr int kDigits10 = 17;
  static constexpr const char* kName = "native-double";
  static double epsilon() { return std::ldexp(1.0, -53); }
  static double pi() { return 3.141592653589793; }
  static double ln2() { return 0.6931471805599453; }
};

template <>
struct ScalarTraits<DoubleDouble> {
  static constexpr std::size_t kComponents = 2;
  static constexpr int kDigits10 = 35;
  static constexpr const char* kName = "double-double";
  static double epsilon() { return std::ldexp(1.0, -106); }
  static DoubleDouble pi() {
    return DoubleDouble::from_components({3.141592653589793, 1.2246467991473532e-16});
  }
  static DoubleDouble ln2() {
    return DoubleDouble::from_components({0.6931471805599453, 2.3190468138462996e-17});
  }
};

template <>
struct ScalarTraits<QuadDouble> {
  static constexpr std::size_t kComponents = 4;
  static constexpr int kDigits10 = 66;
  static constexpr const char* kName = "quad-double";
  static double epsilon() { return std::ldexp(1.0, -209); }
  static QuadDouble pi() {
    return QuadDouble::from_components(
        {3.141592653589793, 1.2246467991473532e-16, -2.9947698097183397e-33, 1.1124542208633653e-49});
  }
  static QuadDouble ln2() {
    return QuadDouble::from_components(
        {0.6931471805599453, 2.3190468138462996e-17, 5.707708438416212e-34, -3.5824322106018114e-50});
  }
};

template <typename T>
concept Scalar = requires { ScalarTraits<T>::kComponents; };

namespace num {

template <Scalar T>
inline double to_double(const T& x) {
  return static_cast<double>(x);
}

template <Scalar T>
inline double hi(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    return x[0];
  }
}

template <Scalar T>
inline T abs(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return std::fabs(x);
  } else {
    return hi(x) < 0.0 ? -x : x;
  }
}

template <Scalar T>
inline T scale2(const T& x, int k) {
  if constexpr (std::is_same_v<T, double>) {
    return std::ldexp(x, k);
  } else {
    return x.scaled(k);
  }
}

template <Scalar T>
inline T floor(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return std::floor(x);
  } else {
    return x.floored();
  }
}

template <Scalar T>
inline T round(const T& x) {
  return num::floor(x + T(0.5));
}

template <Scalar T>
inline bool isfinite(const T& x) {
  return std::isfinite(hi(x));
}

template <Scalar T>
inline int newton_steps() {
  return ScalarTraits<T>::kComponents == 2 ? 2 : 3;
}

template <Scalar T>
inline T sqrt(const T& a) {
  if constexpr (std::is_same_v<T, double>) {
    return std::sqrt(a);
  } else {
    if (hi(a) == 0.0) return T(0.0);
    if (hi(a) < 0.0) return T(std::numeric_limits<double>::quiet_NaN());
    T x(std::sqrt(hi(a)));
    for (int i = 0; i < newton_steps<T>(); ++i) x = scale2(x + a / x, -1);
    return x;
  }
}

template <Scalar T>
inline T exp(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return std::exp(x);
  } else {
    const double xh = hi(x);
    if (xh == 0.0) return T(1.0);
    if (xh > 709.0) return T(std::numeric_limits<double>::infinity());
    if (xh < -745.0) return T(0.0);
    const double k = std::nearbyint(xh / 0.6931471805599453);
    constexpr int kHalvings = 10;
    T r = scale2(x - ScalarTraits<T>::ln2() * T(k), -kHalvings);
    // exp(r) = 1 + t, with t accumulated separately to avoid cancellation.
    T term = r;
    T t = r;
    const double eps = ScalarTraits<T>::epsilon();
    for (int i = 2; i < 200; ++i) {
      term = term * r / T(static_cast<double>(i));
      t += term;
      if (std::fabs(hi(term)) <= eps * std::fabs(hi(t))) break;
    }
    for (int i = 0; i < kHalvings; ++i) t = scale2(t, 1) + t * t;
    return scale2(T(1.0) + t, static_cast<int>(k));
  }
}

template <Scalar T>
inline T log(const T& a) {
  if constexpr (std::is_same_v<T, double>) {
    return std::log(a);
  } else {
    if (hi(a) <= 0.0) return T(std::numeric_limits<double>::quiet_NaN());
    T y(std::log(hi(a)));
    for (int i = 0; i < newton_steps<T>(); ++i) y = y + a * num::exp(-y) - T(1.0);
    return y;
  }
}

namespace detail {

// sin and cos of |t| <= pi/4 by Taylor series.
template <Scalar T>
inline void sincos_reduced(const T& t, T& s, T& c) {
  const double eps = ScalarTraits<T>::epsilon();
  const T t2 = t * t;
  T term = t;
  s = t;
  for (int k = 1; k < 100; ++k) {
    term = -term * t2 / T(static_cast<double>((2 * k) * (2 * k + 1)));
    s += term;
    if (std::fabs(hi(term)) <= eps * 1e-3) break;
  }
  term = T(1.0);
  c = T(1.0);
  for (int k = 1; k < 100; ++k) {
    term = -term * t2 / T(static_cast<double>((2 * k - 1) * (2 * k)));
    c += term;
    if (std::fabs(hi(term)) <= eps * 1e-3) break;
  }
}

}  // namespace detail

template <Scalar T>
inline void sincos(const T& x, T& s, T& c) {
  if constexpr (std::is_same_v<T, double>) {
    s = std::sin(x);
    c = std::cos(x);
  } else {
    const T pi = ScalarTraits<T>::pi();
    const T two_pi = scale2(pi, 1);
    const T half_pi = scale2(pi, -1);
    const T r = x - two_pi * num::round(x / two_pi);
    const double j = std::nearbyint(hi(r / half_pi));
    const T t = r - half_pi * T(j);
    T st, ct;
    detail::sincos_reduced(t, st, ct);
    const int q = static_cast<int>(j);
    switch (q) {
      case 0: s = st; c = ct; break;
      case 1: s = ct; c = -st; break;
      case -1: s = -ct; c = st; break;
      default: s = -st; c = -ct; break;
    }
  }
}

template <Scalar T>
inline T sin(const T& x) {
  T s, c;
  sincos(x, s, c);
  return s;
}

template <Scalar T>
inline T cos(const T& x) {
  T s, c;
  sincos(x, s, c);
  return c;
}

template <Scalar T>
inline T tan(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return std::tan(x);
  } else {
    T s, c;
    sincos(x, s, c);
    return s / c;
  }
}

/// Angle of (x, y) in (-pi, pi].
template <Scalar T>
inline T atan2(const T& y, const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    const double a = std::atan2(y, x);
    return a == -ScalarTraits<double>::pi() ? ScalarTraits<double>::pi() : a;
  } else {
    if (hi(x) == 0.0 && hi(y) == 0.0) return T(0.0);
    T z(std::atan2(hi(y), hi(x)));
    for (int i = 0; i < newton_steps<T>(); ++i) {
      T s, c;
      sincos(z, s, c);
      z = z + (y * c - x * s) / (x * c + y * s);
    }
    const T pi = ScalarTraits<T>::pi();
    if (z > pi) z = z - scale2(pi, 1);
    if (z <= -pi) z = z + scale2(pi, 1);
    return z;
  }
}

template <Scalar T>
inline T atan(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return std::atan(x);
  } else {
    return num::atan2(x, T(1.0));
  }
}

template <Scalar T>
inline T pow(const T& base, int e) {
  if (e < 0) return T(1.0) / num::pow(base, -e);
  T result(1.0);
  T b = base;
  while (e > 0) {
    if (e & 1) result = result * b;
    b = b * b;
    e >>= 1;
  }
  return result;
}

template <Scalar T>
inline T max(const T& a, const T& b) {
  return a < b ? b : a;
}

template <Scalar T>
inline T min(const T& a, const T& b) {
  return b < a ? b : a;
}

namespace detail {

// Decimal conversion runs two components wider than the target so that
// printing and parsing lose nothing visible at the target precision.
template <std::size_t N>
using Wide = MultiFloat<N + 2>;

template <std::size_t N>
inline Wide<N> widen(const MultiFloat<N>& x) {
  std::array<double, N + 2> c{};
  for (std::size_t i = 0; i < N; ++i) c[i] = x[i];
  return Wide<N>::from_components(c);
}

template <std::size_t N>
inline MultiFloat<N> narrow(const Wide<N>& x) {
  std::array<double, N> c{};
  double carry = 0.0;
  for (std::size_t i = 0; i < N; ++i) c[i] = x[i];
  for (std::size_t i = N; i < N + 2; ++i) carry += x[i];
  c[N - 1] += carry;
  return MultiFloat<N>::from_components(c);
}

template <typename W>
inline W pow10(int e) {
  W result(1.0), b(10.0);
  while (e > 0) {
    if (e & 1) result = result * b;
    b = b * b;
    e >>= 1;
  }
  return result;
}

template <typename W>
inline W abs_of(const W& x) {
  return x < W(0.0) ? -x : x;
}

}  // namespace detail

/// Scientific decimal rendering with `digits` significant digits.
template <Scalar T>
inline std::string to_string(const T& value, int digits = ScalarTraits<T>::kDigits10) {
  if constexpr (std::is_same_v<T, double>) {
    std::ostringstream os;
    os.precision(digits);
    os << value;
    return os.str();
  } else {
    using W = detail::Wide<T::kComponents>;
    const double h = hi(value);
    if (!std::isfinite(h)) return std::isnan(h) ? "nan" : (h > 0 ? "inf" : "-inf");
    if (h == 0.0) return "0";
    std::string out = h < 0 ? "-" : "";
    const W x = detail::abs_of(detail::widen(value));
    int e10 = static_cast<int>(std::floor(std::log10(std::fabs(h))));
    W r = e10 >= 0 ? x / detail::pow10<W>(e10) : x * detail::pow10<W>(-e10);
    if (r >= W(10.0)) {
      r = r / W(10.0);
      ++e10;
    } else if (r < W(1.0)) {
      r = r * W(10.0);
      --e10;
    }
    std::string mant;
    for (int i = 0; i <= digits; ++i) {
      int d = static_cast<int>(r.floored()[0]);
      d = std::clamp(d, 0, 9);
      mant.push_back(static_cast<char>('0' + d));
      r = (r - W(static_cast<double>(d))) * W(10.0);
    }
    // Round on the extra digit and propagate the carry.
    const bool round_up = mant.back() >= '5';
    mant.pop_back();
    if (round_up) {
      int i = static_cast<int>(mant.size()) - 1;
      while (i >= 0 && mant[i] == '9') mant[i--] = '0';
      if (i >= 0) {
        ++mant[i];
      } else {
        mant.insert(mant.begin(), '1');
        mant.pop_back();
        ++e10;
      }
    }
    out += mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(e10);
    return out;
  }
}

template <Scalar T>
inline T from_string(const std::string& text) {
  if constexpr (std::is_same_v<T, double>) {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters in number: " + text);
    return v;
  } else {
    using W = detail::Wide<T::kComponents>;
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    W acc(0.0);
    int exponent = 0;
    bool any = false, seen_point = false;
    for (; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch >= '0' && ch <= '9') {
        acc = acc * W(10.0) + W(static_cast<double>(ch - '0'));
        if (seen_point) --exponent;
        any = true;
      } else if (ch == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
    }
    if (!any) throw std::invalid_argument("not a number: " + text);
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
      std::size_t pos = 0;
      exponent += std::stoi(text.substr(i + 1), &pos);
      i += 1 + pos;
    }
    if (i != text.size()) throw std::invalid_argument("trailing characters in number: " + text);
    if (exponent > 0) acc = acc * detail::pow10<W>(exponent);
    if (exponent < 0) acc = acc / detail::pow10<W>(-exponent);
    const T v = detail::narrow<T::kComponents>(acc);
    return negative ? -v : v;
  }
}

}  // namespace num
}  // namespace cayleylab

#endif  // CAYLEYLAB_NUMERICS_SCALAR_HPP
