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

#ifndef CAYLEYLAB_BOSON_HPP
#define CAYLEYLAB_BOSON_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "cayleylab/errors.hpp"
#include "cayleylab/interp.hpp"
#include "cayleylab/numerics/linalg.hpp"
#include "cayleylab/numerics/matrix.hpp"
#include "cayleylab/numerics/parallel.hpp"

namespace cayleylab {

inline constexpr std::size_t kMaxRyserSize = 14;
inline constexpr std::size_t kMaxNaivePermanentSize = 8;

/// n photons in m = n^c modes.
struct BosonConfig {
  int photons = 3;
  double c = 2.5;

  double modes() const { return std::pow(static_cast<double>(photons), c); }

  void validate() const {
    require(photons >= 1, "photon count must be positive");
    require(c > 2.0, "mode exponent c must exceed 2");
  }

  /// p_X = |Per X|^2 / m^n.
  double output_probability(double permanent_sq) const { return permanent_sq / std::pow(modes(), photons); }

  // Natural logs of the additive-error scales, leading order in n log n.
  double log_reduction_robustness() const { return -(c + 4.0) * nlogn(); }
  double log_interpolation_barrier() const { return -(c + 1.0) * nlogn(); }
  double log_sampling_requirement() const { return -(c - 1.0) * nlogn(); }

 private:
  double nlogn() const { return photons * std::log(static_cast<double>(photons)); }
};

/// Ryser's formula with Gray-code subset updates, O(2^n n).
template <Scalar T>
Complex<T> permanent_ryser(const Matrix<T>& x) {
  require(x.square(), "permanent needs a square matrix");
  const std::size_t n = x.rows();
  if (n > kMaxRyserSize) fail(ErrorKind::kTooLarge, "permanent_ryser supports n <= 14");
  if (n == 0) return Complex<T>(1.0);
  std::vector<Complex<T>> row_sums(n);
  Complex<T> total(0.0);
  std::uint32_t gray = 0;
  const std::uint32_t subsets = std::uint32_t{1} << n;
  for (std::uint32_t k = 1; k < subsets; ++k) {
    const std::uint32_t next = k ^ (k >> 1);
    const std::uint32_t flipped = next ^ gray;
    const std::size_t col = static_cast<std::size_t>(std::countr_zero(flipped));
    const bool added = (next & flipped) != 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (added) {
        row_sums[i] += x(i, col);
      } else {
        row_sums[i] -= x(i, col);
      }
    }
    gray = next;
    Complex<T> prod = row_sums[0];
    for (std::size_t i = 1; i < n; ++i) prod = prod * row_sums[i];
    if (std::popcount(gray) % 2 == static_cast<int>(n % 2)) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  return total;
}

/// Sum over all n! permutations.
template <Scalar T>
Complex<T> permanent_naive(const Matrix<T>& x) {
  require(x.square(), "permanent needs a square matrix");
  const std::size_t n = x.rows();
  if (n > kMaxNaivePermanentSize) fail(ErrorKind::kTooLarge, "permanent_naive supports n <= 8");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Complex<T> total(0.0);
  do {
    Complex<T> prod(1.0);
    for (std::size_t i = 0; i < n; ++i) prod = prod * x(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// i.i.d. complex Gaussian entries with mean 0 and E|x|^2 = variance.
template <Scalar T>
Matrix<T> gaussian_matrix(std::size_t n, double variance, SeededRng& rng) {
  require(n >= 1, "matrix size must be positive");
  require(variance >= 0.0, "variance must be nonnegative");
  const T scale = num::sqrt(T(variance));
  Matrix<T> m(n, n);
  for (auto& z : m.data()) z = complex_normal<T>(rng) * scale;
  return m;
}

/// X(theta) = (1 - theta) X1 + theta X0.
template <Scalar T>
Matrix<T> permanent_path(const Matrix<T>& x1, const Matrix<T>& x0, const T& theta) {
  require(x1.rows() == x0.rows() && x1.cols() == x0.cols(), "path endpoints must have equal shape");
  Matrix<T> m(x1.rows(), x1.cols());
  const T one_minus = T(1.0) - theta;
  for (std::size_t i = 0; i < m.data().size(); ++i) m.data()[i] = x1.data()[i] * one_minus + x0.data()[i] * theta;
  return m;
}

template <Scalar T>
bool is_zero_one(const Matrix<T>& x) {
  return std::all_of(x.data().begin(), x.data().end(), [](const Complex<T>& z) {
    return num::hi(z.im) == 0.0 && (num::hi(z.re) == 0.0 || z.re == T(1.0));
  });
}

/// Returns a value standing in for |Per(X(theta_i))|^2 at grid point i.
template <Scalar T>
using PermanentOracle = std::function<T(const Matrix<T>& x, std::size_t grid_index)>;

template <Scalar T>
PermanentOracle<T> exact_permanent_oracle() {
  return [](const Matrix<T>& x, std::size_t) { return norm(permanent_ryser(x)); };
}

struct PermanentReductionConfig {
  double span = 0.3;
  std::size_t grid_size = 0;  // 0 selects 100 d^2
  double delta = 1e-28;
  double eta = 0.1;  // expected corruption rate; the budget adds 4 sigma
  SearchOptions search;
  BoundConstants bounds;
};

template <Scalar T>
struct PermanentReduction {
  ExtrapolationResult<T> result;
  Matrix<T> x1;
  DataSet<T> data;
};

/// Recovers |Per(X0)|^2 for a 0/1 matrix X0 from oracle values along
/// X(theta), theta in [0, span], by robust extrapolation with d = 2n.
template <Scalar T>
PermanentReduction<T> permanent_reduce(const Matrix<T>& x0, const PermanentOracle<T>& oracle,
                                       const PermanentReductionConfig& cfg, SeededRng rng) {
  require(x0.square() && x0.rows() >= 1, "X0 must be a nonempty square matrix");
  require(is_zero_one(x0), "X0 must have 0/1 entries");
  if (x0.rows() > kMaxRyserSize) fail(ErrorKind::kTooLarge, "permanent reduction supports n <= 14");
  require(cfg.span > 0.0 && cfg.span < 1.0, "span must lie in (0, 1)");
  const int d = 2 * static_cast<int>(x0.rows());
  PermanentReduction<T> out;
  SeededRng matrix_rng = rng.split(0);
  out.x1 = gaussian_matrix<T>(x0.rows(), 1.0, matrix_rng);
  const std::size_t count = cfg.grid_size ? cfg.grid_size : default_grid_size(d);
  out.data.span = T(cfg.span);
  out.data.x = DataSet<T>::uniform_grid(count, out.data.span);
  out.data.eta_budget = corruption_budget(cfg.eta, count);
  out.data.y.resize(count);
  parallel_for(count, cfg.search.par, [&](std::size_t i) {
    out.data.y[i] = oracle(permanent_path(out.x1, x0, out.data.x[i]), i);
  });
  double ymax = 0.0;
  for (const auto& y : out.data.y) ymax = std::max(ymax, std::fabs(num::to_double(y)));
  out.data.delta = cfg.delta + 100.0 * ScalarTraits<T>::epsilon() * ymax;
  out.result = robust_extrapolate(out.data, d, rng.split(1), T(1.0), cfg.search, cfg.bounds);
  return out;
}

/// P(theta) = |Per(X(theta))|^2 + t |Per((1 - theta) X1 + theta J)|^2, with J
/// the all-ones matrix: close to the true curve near theta = 0, off by
/// t (n!)^2 at theta = 1.
template <Scalar T>
T barrier_deviation(const Matrix<T>& x1, const T& t, const T& theta) {
  if (x1.rows() > kMaxNaivePermanentSize) fail(ErrorKind::kTooLarge, "barrier construction supports n <= 8");
  Matrix<T> ones(x1.rows(), x1.cols());
  for (auto& z : ones.data()) z = Complex<T>(1.0);
  return t * norm(permanent_ryser(permanent_path(x1, ones, theta)));
}

template <Scalar T>
T barrier_polynomial(const Matrix<T>& x1, const Matrix<T>& x0, const T& t, const T& theta) {
  if (x1.rows() > kMaxNaivePermanentSize) fail(ErrorKind::kTooLarge, "barrier construction supports n <= 8");
  return norm(permanent_ryser(permanent_path(x1, x0, theta))) + barrier_deviation(x1, t, theta);
}

struct BarrierPoint {
  double theta = 0.0;
  double mean_deviation = 0.0;
  double standard_error = 0.0;
  double max_deviation = 0.0;
};

struct BarrierReport {
  int n = 0;
  double t = 0.0;
  std::size_t samples = 0;
  double worst_case_deviation = 0.0;  // t |Q(1)|, equal to t (n!)^2
  double factorial_squared = 0.0;
  std::vector<BarrierPoint> average_case;  // over Gaussian X1 at each theta
};

/// Average-case deviation t |Q(theta)| over `samples` Gaussian X1 on a theta
/// grid, against the worst-case deviation at theta = 1.
inline BarrierReport barrier_report(int n, double t, const std::vector<double>& thetas, std::size_t samples,
                                    SeededRng rng, Parallelism par = {}) {
  require(n >= 1, "n must be positive");
  if (n > static_cast<int>(kMaxNaivePermanentSize)) fail(ErrorKind::kTooLarge, "barrier demo supports n <= 8");
  require(samples >= 2, "need at least two samples");
  BarrierReport rep;
  rep.n = n;
  rep.t = t;
  rep.samples = samples;
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  rep.factorial_squared = fact * fact;
  std::vector<Matrix<double>> x1s(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    SeededRng r = rng.split(s);
    x1s[s] = gaussian_matrix<double>(static_cast<std::size_t>(n), 1.0, r);
  }
  rep.worst_case_deviation = barrier_deviation(x1s[0], t, 1.0);
  for (double theta : thetas) {
    std::vector<double> dev(samples);
    parallel_for(samples, par, [&](std::size_t s) { dev[s] = barrier_deviation(x1s[s], t, theta); });
    BarrierPoint p;
    p.theta = theta;
    const double mean = std::accumulate(dev.begin(), dev.end(), 0.0) / static_cast<double>(samples);
    double var = 0.0;
    for (double v : dev) var += (v - mean) * (v - mean);
    var /= static_cast<double>(samples - 1);
    p.mean_deviation = mean;
    p.standard_error = std::sqrt(var / static_cast<double>(samples));
    p.max_deviation = *std::max_element(dev.begin(), dev.end());
    rep.average_case.push_back(p);
  }
  return rep;
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_BOSON_HPP
