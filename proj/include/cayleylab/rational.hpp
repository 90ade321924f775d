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

#ifndef CAYLEYLAB_RATIONAL_HPP
#define CAYLEYLAB_RATIONAL_HPP

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cayleylab/circuits.hpp"
#include "cayleylab/numerics/parallel.hpp"
#include "cayleylab/numerics/polynomial.hpp"

namespace cayleylab {

/// Q(theta) = prod_jl (1 + (1 - theta)^2 tan^2(phi_jl / 2)) over every pad
/// eigenphase, kept in product form.
template <Scalar T>
class DenominatorSpec {
 public:
  DenominatorSpec() = default;
  explicit DenominatorSpec(const std::vector<T>& phases) {
    for (const auto& phi : phases) {
      check_phase(phi);
      const T t = num::tan(num::scale2(phi, -1));
      tan_sq_.push_back(t * t);
    }
  }
  explicit DenominatorSpec(const PadSeed<T>& seed) : DenominatorSpec(seed.phases()) {}

  std::size_t size() const { return tan_sq_.size(); }
  const std::vector<T>& tan_squared() const { return tan_sq_; }

  /// Pairwise (tree) product of the factors; exactly 1 at theta = 1.
  T operator()(const T& theta) const {
    const T w = T(1.0) - theta;
    const T w2 = w * w;
    std::vector<T> f;
    f.reserve(tan_sq_.size());
    for (const auto& t2 : tan_sq_) f.push_back(T(1.0) + w2 * t2);
    if (f.empty()) return T(1.0);
    while (f.size() > 1) {
      std::vector<T> next;
      next.reserve((f.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < f.size(); i += 2) next.push_back(f[i] * f[i + 1]);
      if (f.size() % 2 == 1) next.push_back(f.back());
      f = std::move(next);
    }
    return f[0];
  }

 private:
  std::vector<T> tan_sq_;
};

template <Scalar T>
T denominator_Q(const DenominatorSpec<T>& spec, const T& theta) {
  return spec(theta);
}

/// Degree bound of P = Pr * Q: sum over slots of 2 * dim(slot), i.e. 8m for
/// two-qubit gates.
inline int numerator_degree_bound(const Architecture& arch) {
  int d = 0;
  for (std::size_t i = 0; i < arch.m(); ++i) d += 2 * static_cast<int>(arch.slot_dim(i));
  return d;
}

/// Numerator degree for a perturbation kind. The truncated-Taylor family is
/// polynomial: each gate entry has degree K, so Pr has degree 2 K m and Q = 1.
inline int numerator_degree(const Architecture& arch, const TransformKind& kind) {
  if (kind.is_cayley()) return numerator_degree_bound(arch);
  return 2 * kind.order * static_cast<int>(arch.m());
}

template <Scalar T>
using ProbabilityOracle = std::function<T(const Circuit<T>&, std::size_t grid_index)>;

template <Scalar T>
struct NumeratorSamples {
  std::vector<T> theta;
  std::vector<T> prob;   // oracle answers
  std::vector<T> q;      // Q(theta_i)
  std::vector<T> y;      // prob * Q
  std::vector<int> flag;  // 0 ok, 1 oracle failed (y set to 0)
  double delta = 0.0;
  T cap_K{1.0};  // max_i Q(theta_i)

  void write_csv(std::ostream& os) const {
    os << "theta,y,Q,flag\n";
    for (std::size_t i = 0; i < theta.size(); ++i) {
      os << num::to_string(theta[i]) << ',' << num::to_string(y[i]) << ',' << num::to_string(q[i]) << ','
         << flag[i] << '\n';
    }
  }
};

namespace detail {

template <Scalar T>
NumeratorSamples<T> sample_numerator(const PerturbedFamily<T>& family, const std::vector<T>& grid,
                                     const ProbabilityOracle<T>& oracle, double delta, Parallelism par) {
  const bool cayley = family.transform.is_cayley();
  const DenominatorSpec<T> spec(cayley ? family.seed.phases() : std::vector<T>{});
  NumeratorSamples<T> s;
  const std::size_t n = grid.size();
  s.theta = grid;
  s.prob.assign(n, T(0.0));
  s.q.assign(n, T(1.0));
  s.y.assign(n, T(0.0));
  s.flag.assign(n, 0);
  s.delta = delta;
  parallel_for(n, par, [&](std::size_t i) {
    s.q[i] = spec(grid[i]);
    try {
      s.prob[i] = oracle(family.member(grid[i]), i);
      s.y[i] = s.prob[i] * s.q[i];
    } catch (const std::exception&) {
      s.flag[i] = 1;
    }
  });
  for (const auto& q : s.q) s.cap_K = num::max(s.cap_K, q);
  return s;
}

}  // namespace detail

/// y_i = oracle(C(theta_i)) * Q(theta_i). Oracle exceptions become flagged
/// points rather than aborting; corruption is expected downstream.
template <Scalar T>
NumeratorSamples<T> numerator_samples(const PerturbedFamily<T>& family, const std::vector<T>& grid,
                                      const ProbabilityOracle<T>& oracle, double delta, Parallelism par = {}) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(T(0.0) <= grid[i] && grid[i] <= T(1.0), "grid points must lie in [0, 1]");
    require(i == 0 || grid[i - 1] < grid[i], "grid must be strictly increasing");
  }
  return detail::sample_numerator(family, grid, oracle, delta, par);
}

struct RationalReport {
  int degree = 0;
  std::size_t fit_nodes = 0;
  std::size_t heldout_nodes = 0;
  double max_heldout_residual = 0.0;
  double max_abs_numerator = 0.0;
  double relative_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Interpolates P = Pr * Q at degree+1 Chebyshev nodes on the theta window
/// [lo, hi] and checks the interpolant against P at held-out nodes: midpoints
/// of consecutive fitting nodes, both endpoints, and one extrapolation node at
/// hi + (hi - lo). Inside the window a degree-n polynomial is within about
/// 2^(-2n) (relative) of degree n-4, so only the extrapolation node separates
/// the two. C(theta) is a valid unitary circuit for every real theta, so
/// sampling outside [0, 1] is legitimate.
template <Scalar T>
RationalReport verify_rational_degree(const PerturbedFamily<T>& family, const ProbabilityOracle<T>& oracle,
                                      int degree, double tol, T lo = T(0.0), T hi = T(1.0),
                                      Parallelism par = {}) {
  require(degree >= 0, "degree must be nonnegative");
  require(lo < hi, "verification window must be nondegenerate");
  const std::vector<T> nodes = chebyshev_nodes<T>(degree + 1, lo, hi);
  std::vector<T> held;
  held.push_back(lo);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) held.push_back(num::scale2(nodes[i] + nodes[i + 1], -1));
  held.push_back(hi);
  held.push_back(hi + (hi - lo));
  std::vector<T> all = nodes;
  all.insert(all.end(), held.begin(), held.end());
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return all[a] < all[b]; });
  std::vector<T> grid;
  for (std::size_t i : order) grid.push_back(all[i]);
  const auto samples = detail::sample_numerator(family, grid, oracle, 0.0, par);
  std::vector<Point<T>> fit_points, held_points;
  for (std::size_t k = 0; k < order.size(); ++k) {
    require(samples.flag[k] == 0, "oracle failed during degree verification");
    (order[k] < nodes.size() ? fit_points : held_points).push_back({grid[k], samples.y[k]});
  }
  const auto fit = poly_fit(fit_points, degree, Basis::kChebyshev, std::make_optional(std::make_pair(lo, hi)));
  RationalReport r;
  r.degree = degree;
  r.fit_nodes = fit_points.size();
  r.heldout_nodes = held_points.size();
  r.tolerance = tol;
  for (const auto& p : fit_points) r.max_abs_numerator = std::max(r.max_abs_numerator, std::fabs(num::to_double(p.y)));
  for (const auto& p : held_points) {
    r.max_abs_numerator = std::max(r.max_abs_numerator, std::fabs(num::to_double(p.y)));
    r.max_heldout_residual =
        std::max(r.max_heldout_residual, std::fabs(num::to_double(p.y - fit.polynomial(p.x))));
  }
  r.relative_residual = r.max_abs_numerator > 0.0 ? r.max_heldout_residual / r.max_abs_numerator : r.max_heldout_residual;
  r.pass = r.relative_residual <= tol;
  return r;
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_RATIONAL_HPP
