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

#ifndef CAYLEYLAB_CAYLEY_HPP
#define CAYLEYLAB_CAYLEY_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "cayleylab/errors.hpp"
#include "cayleylab/numerics/linalg.hpp"
#include "cayleylab/numerics/parallel.hpp"

namespace cayleylab {

/// Phases closer than this to +-pi are treated as singular.
inline constexpr double kSingularPhaseGap = 1e-9;

struct EigenMargin {
  double beta = 0.1;
  std::size_t dim = 4;

  EigenMargin() = default;
  EigenMargin(double b, std::size_t n = 4) : beta(b), dim(n) {
    require(beta > 0.0 && beta < ScalarTraits<double>::pi(), "margin must lie in (0, pi)");
  }

  /// Pr[a Haar dim-N spectrum is margin-good] >= 1 - N beta / pi.
  double union_bound() const { return 1.0 - static_cast<double>(dim) * beta / ScalarTraits<double>::pi(); }
};

struct TransformKind {
  enum class Kind { kCayley, kTruncatedTaylor };
  Kind kind = Kind::kCayley;
  int order = 12;

  static TransformKind cayley() { return {}; }
  static TransformKind truncated_taylor(int k = 12) {
    require(k >= 1, "truncated Taylor order must be at least 1");
    return {Kind::kTruncatedTaylor, k};
  }
  bool is_cayley() const { return kind == Kind::kCayley; }
};

template <Scalar T>
void check_phase(const T& phi) {
  const T gap = ScalarTraits<T>::pi() - num::abs(phi);
  if (!(num::to_double(gap) > kSingularPhaseGap)) {
    fail(ErrorKind::kSingularPhase, "eigenphase at or too close to +-pi");
  }
}

/// f_theta(phi) = 2 atan((1 - theta) tan(phi / 2)).
template <Scalar T>
T eigenphase_transform(const T& phi, const T& theta) {
  if (!(num::abs(phi) < ScalarTraits<T>::pi())) fail(ErrorKind::kSingularPhase, "|phi| must be below pi");
  return num::scale2(num::atan((T(1.0) - theta) * num::tan(num::scale2(phi, -1))), 1);
}

/// Eigenvalue of H(theta) for an eigenphase phi of H:
/// (1 + i t) / (1 - i t) with t = (1 - theta) tan(phi / 2).
template <Scalar T>
Complex<T> cayley_factor(const T& phi, const T& theta) {
  const T t = (T(1.0) - theta) * num::tan(num::scale2(phi, -1));
  return Complex<T>(T(1.0), t) / Complex<T>(T(1.0), -t);
}

template <Scalar T>
Matrix<T> spectral_matrix(const Matrix<T>& vectors, const std::vector<Complex<T>>& values) {
  const std::size_t n = values.size();
  Matrix<T> out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      const Complex<T> lv = values[j] * vectors(r, j);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += lv * conj(vectors(c, j));
    }
  }
  return out;
}

template <Scalar T>
Matrix<T> cayley_transform(const SpectralDecomposition<T>& sd, const T& theta) {
  std::vector<Complex<T>> values;
  values.reserve(sd.phases.size());
  for (const auto& phi : sd.phases) {
    check_phase(phi);
    values.push_back(cayley_factor(phi, theta));
  }
  return spectral_matrix(sd.vectors, values);
}

template <Scalar T>
Matrix<T> cayley_transform(const Matrix<T>& u, const T& theta) {
  return cayley_transform(unitary_eigendecomposition(u), theta);
}

/// (theta I + (2 - theta) H) ((2 - theta) I + theta H)^-1; the two factors
/// commute. Kept as an independent cross-check of the spectral route.
template <Scalar T>
Matrix<T> cayley_resolvent(const Matrix<T>& h, const T& theta) {
  const std::size_t n = h.rows();
  const Matrix<T> id = Matrix<T>::identity(n);
  const Matrix<T> num_m = Complex<T>(theta) * id + Complex<T>(T(2.0) - theta) * h;
  const Matrix<T> den_m = Complex<T>(T(2.0) - theta) * id + Complex<T>(theta) * h;
  return solve(den_m, num_m);
}

template <Scalar T>
struct TaylorTransform {
  Matrix<T> matrix;
  double truncation_estimate = 0.0;  // (theta |log H|)^(K+1) / (K+1)!
};

/// H sum_{k<=K} (-theta log H)^k / k!, with the principal logarithm taken on
/// the spectrum. Not unitary in general.
template <Scalar T>
TaylorTransform<T> truncated_taylor_transform(const SpectralDecomposition<T>& sd, const T& theta, int order) {
  require(order >= 0, "truncation order must be nonnegative");
  std::vector<Complex<T>> values;
  double log_norm = 0.0;
  for (const auto& phi : sd.phases) {
    check_phase(phi);
    log_norm = std::max(log_norm, std::fabs(num::to_double(phi)));
    const Complex<T> z(T(0.0), -theta * phi);  // -theta log(e^{i phi})
    Complex<T> term(1.0), sum(1.0);
    for (int k = 1; k <= order; ++k) {
      term = term * z / T(static_cast<double>(k));
      sum += term;
    }
    values.push_back(polar(T(1.0), phi) * sum);
  }
  TaylorTransform<T> out{spectral_matrix(sd.vectors, values), 0.0};
  const double x = std::fabs(num::to_double(theta)) * log_norm;
  out.truncation_estimate = std::exp((order + 1) * std::log(std::max(x, 1e-300)) - std::lgamma(order + 2.0));
  return out;
}

template <Scalar T>
TaylorTransform<T> truncated_taylor_transform(const Matrix<T>& u, const T& theta, int order) {
  return truncated_taylor_transform(unitary_eigendecomposition(u), theta, order);
}

/// True iff every phase lies in [-pi + beta, pi - beta].
template <Scalar T>
bool margin_good(const std::vector<T>& phases, const EigenMargin& margin) {
  const double limit = ScalarTraits<double>::pi() - margin.beta;
  for (const auto& phi : phases)
    if (std::fabs(num::to_double(phi)) > limit) return false;
  return true;
}

struct TvEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Histogram total variation between the joint (sorted) eigenphase law of the
/// Cayley-deformed ensemble at theta and the Haar eigenphase law. Both
/// histograms are filled from the same Haar draws (the deformed one after
/// applying f_theta), so at theta = 0 the estimate is exactly zero and the
/// sampling noise only comes from samples that change cells.
inline TvEstimate eigenphase_tv_estimate(double theta, std::size_t dim, std::size_t samples, std::size_t bins,
                                         SeededRng rng, Parallelism par = {}) {
  require(samples >= 1000, "eigenphase_tv_estimate: at least 1000 samples");
  require(bins >= 20, "eigenphase_tv_estimate: at least 20 bins");
  require(dim >= 1 && dim <= 6, "eigenphase_tv_estimate: dim must be in [1, 6]");
  const double pi = ScalarTraits<double>::pi();
  auto cell_of = [&](std::vector<double> phases) {
    std::sort(phases.begin(), phases.end());
    std::uint64_t key = 0;
    for (double p : phases) {
      auto b = static_cast<std::uint64_t>((p + pi) / (2.0 * pi) * static_cast<double>(bins));
      key = key * bins + std::min<std::uint64_t>(b, bins - 1);
    }
    return key;
  };
  std::vector<std::uint64_t> deformed(samples), reference(samples);
  parallel_for(samples, par, [&](std::size_t i) {
    SeededRng r = rng.split(i);
    auto sd = unitary_eigendecomposition(haar_unitary<double>(dim, r));
    reference[i] = cell_of(sd.phases);
    for (auto& p : sd.phases) p = std::fabs(p) < pi ? eigenphase_transform(p, theta) : p;
    deformed[i] = cell_of(sd.phases);
  });
  std::map<std::uint64_t, double> diff;
  for (std::size_t i = 0; i < samples; ++i) {
    diff[deformed[i]] += 1.0;
    diff[reference[i]] -= 1.0;
  }
  const double n = static_cast<double>(samples);
  double tv = 0.0;
  for (const auto& [cell, d] : diff) tv += std::fabs(d);
  // Per-sample contribution s(deformed cell) - s(reference cell) with the
  // empirical sign pattern held fixed.
  double mean = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    auto sign = [&](std::uint64_t c) {
      const double d = diff[c];
      return d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
    };
    const double g = sign(deformed[i]) - sign(reference[i]);
    mean += g;
    sq += g * g;
  }
  mean /= n;
  const double var = std::max(0.0, sq / n - mean * mean);
  return {0.5 * tv / n, 0.5 * std::sqrt(var / n)};
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_CAYLEY_HPP
