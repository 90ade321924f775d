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

#ifndef CAYLEYLAB_TOYMODEL_HPP
#define CAYLEYLAB_TOYMODEL_HPP

#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

#include "cayleylab/errors.hpp"
#include "cayleylab/numerics/linalg.hpp"
#include "cayleylab/numerics/parallel.hpp"

namespace cayleylab {

inline constexpr int kMaxToyQubits = 6;

/// Global noisy random circuit: d layers, each one Haar unitary on all n
/// qubits followed by single-qubit depolarizing at rate gamma on every qubit.
struct ToyParams {
  int n = 3;
  int depth = 1;
  double gamma = 0.1;
  std::size_t trials = 500;

  void validate() const {
    require(n >= 1, "qubit count must be positive");
    require(depth >= 1, "depth must be at least 1");
    require(gamma >= 0.0 && gamma <= 1.0, "gamma must lie in [0, 1]");
  }
};

/// beta = ((1 + 3(1 - gamma)^2)^n - 1) / (4^n - 1), the per-layer contraction.
inline double decay_coefficient(int n, double gamma) {
  require(n >= 1, "qubit count must be positive");
  const double g = (1.0 - gamma) * (1.0 - gamma);
  return (std::pow(1.0 + 3.0 * g, n) - 1.0) / (std::pow(4.0, n) - 1.0);
}

/// CP = ((1 + (1 - gamma)^2)^n - 1) / (2^n + 1) * beta^(d - 1).
inline double cp_closed_form(const ToyParams& p) {
  p.validate();
  const double g = (1.0 - p.gamma) * (1.0 - p.gamma);
  const double first = (std::pow(1.0 + g, p.n) - 1.0) / (std::pow(2.0, p.n) + 1.0);
  return first * std::pow(decay_coefficient(p.n, p.gamma), p.depth - 1);
}

/// rho -> (1 - gamma) rho + gamma (I/2 (x) Tr_q rho) on qubit q (q = 0 is the
/// most significant bit).
inline void depolarize_qubit(Matrix<double>& rho, int n, int q, double gamma) {
  const std::size_t dim = rho.rows();
  const std::size_t bit = std::size_t{1} << (n - 1 - q);
  Matrix<double> out = rho;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Complex<double> v = rho(i, j) * (1.0 - gamma);
      if (((i ^ j) & bit) == 0) {
        const std::size_t i0 = i & ~bit, j0 = j & ~bit;
        v += (rho(i0, j0) + rho(i0 | bit, j0 | bit)) * (0.5 * gamma);
      }
      out(i, j) = v;
    }
  }
  rho = std::move(out);
}

struct CpEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
  std::size_t tv_violations = 0;  // trials with TV(p, uniform) > sqrt(CP_trial)/2
  double max_tv = 0.0;
};

/// Monte Carlo of 2^n sum_x p(x)^2 - 1 over random circuits; trial i uses
/// rng.split(i).
inline CpEstimate cp_monte_carlo(const ToyParams& p, SeededRng rng, Parallelism par = {}) {
  p.validate();
  if (p.n > kMaxToyQubits) fail(ErrorKind::kTooLarge, "toy-model Monte Carlo supports n <= 6");
  require(p.trials >= 100, "need at least 100 trials");
  const std::size_t dim = std::size_t{1} << p.n;
  std::vector<double> cp(p.trials), tv(p.trials);
  std::vector<int> bad(p.trials, 0);
  parallel_for(p.trials, par, [&](std::size_t t) {
    SeededRng r = rng.split(t);
    Matrix<double> rho(dim, dim);
    rho(0, 0) = 1.0;
    for (int layer = 0; layer < p.depth; ++layer) {
      const Matrix<double> u = haar_unitary<double>(dim, r);
      rho = u * rho * u.adjoint();
      for (int q = 0; q < p.n; ++q) depolarize_qubit(rho, p.n, q, p.gamma);
    }
    double sq = 0.0, dist = 0.0;
    for (std::size_t x = 0; x < dim; ++x) {
      const double px = rho(x, x).re;
      sq += px * px;
      dist += std::fabs(px - 1.0 / static_cast<double>(dim));
    }
    cp[t] = static_cast<double>(dim) * sq - 1.0;
    tv[t] = 0.5 * dist;
    bad[t] = tv[t] > 0.5 * std::sqrt(std::max(cp[t], 0.0)) + 1e-12;
  });
  CpEstimate out;
  out.trials = p.trials;
  const double n = static_cast<double>(p.trials);
  out.estimate = std::accumulate(cp.begin(), cp.end(), 0.0) / n;
  double var = 0.0;
  for (double v : cp) var += (v - out.estimate) * (v - out.estimate);
  out.standard_error = std::sqrt(var / (n - 1.0) / n);
  out.tv_violations = static_cast<std::size_t>(std::accumulate(bad.begin(), bad.end(), 0));
  for (double v : tv) out.max_tv = std::max(out.max_tv, v);
  return out;
}

struct DecayFit {
  double slope = 0.0;
  double slope_error = 0.0;
  double intercept = 0.0;
};

/// Weighted least squares of ln CP against depth, weights from the delta
/// method (sigma_ln = se / estimate).
inline DecayFit fit_log_decay(const std::vector<int>& depths, const std::vector<CpEstimate>& est) {
  require(depths.size() == est.size() && depths.size() >= 2, "need at least two depths");
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    require(est[i].estimate > 0.0 && est[i].standard_error > 0.0, "log fit needs positive estimates and errors");
    const double sl = est[i].standard_error / est[i].estimate;
    const double w = 1.0 / (sl * sl);
    const double x = depths[i], y = std::log(est[i].estimate);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  const double den = sw * sxx - sx * sx;
  DecayFit f;
  f.slope = (sw * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / sw;
  f.slope_error = std::sqrt(sw / den);
  return f;
}

/// CSV columns n, d, gamma, closed_form, mc_estimate, stderr, trials.
inline void write_cp_row(std::ostream& os, const ToyParams& p, const CpEstimate& e) {
  os << p.n << ',' << p.depth << ',' << p.gamma << ',' << cp_closed_form(p) << ',' << e.estimate << ','
     << e.standard_error << ',' << e.trials << '\n';
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_TOYMODEL_HPP
