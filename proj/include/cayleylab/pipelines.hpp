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

#ifndef CAYLEYLAB_PIPELINES_HPP
#define CAYLEYLAB_PIPELINES_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cayleylab/cayley.hpp"
#include "cayleylab/circuits.hpp"
#include "cayleylab/errors.hpp"
#include "cayleylab/interp.hpp"
#include "cayleylab/numerics/precision.hpp"
#include "cayleylab/rational.hpp"
#include "cayleylab/simulator.hpp"

namespace cayleylab {

enum class AdversaryKind { kOffset, kRandomUnit, kChebyshev };

inline const char* adversary_name(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::kOffset:
      return "offset";
    case AdversaryKind::kRandomUnit:
      return "random";
    case AdversaryKind::kChebyshev:
      return "chebyshev";
  }
  return "?";
}

inline AdversaryKind parse_adversary(const std::string& s) {
  if (s == "offset") return AdversaryKind::kOffset;
  if (s == "random" || s == "random-unit") return AdversaryKind::kRandomUnit;
  if (s == "chebyshev") return AdversaryKind::kChebyshev;
  fail(ErrorKind::kValidation, "unknown adversary '" + s + "' (expected offset, random or chebyshev)");
}

/// Corruption and noise model of an average-case oracle on an equally
/// spaced grid of `grid_size` points over [0, span].
///
/// offset:    a coin with rate eta corrupts a point to truth + 10.
/// random:    a coin with rate eta replaces a point by a uniform draw in [0, 1].
/// chebyshev: honest points are shifted by delta T_d(2 theta / span - 1) and
///            the floor(eta N) points nearest the target all follow the rival
///            truth + A (T_d(2 theta / span - 1) + 2).
/// Honest points of the other kinds carry uniform noise in [-delta, delta].
/// Every decision is a pure function of (rng, index).
struct Adversary {
  AdversaryKind kind = AdversaryKind::kOffset;
  double eta = 0.0;
  double delta = 0.0;
  SeededRng rng{0};
  int degree = 0;
  double span = 0.5;
  std::size_t grid_size = 0;
  double rival_amplitude = 1e-3;

  void validate() const {
    require(eta >= 0.0 && eta < 0.25, "corruption rate must lie in [0, 1/4)");
    require(delta >= 0.0, "delta must be nonnegative");
  }

  bool corrupted(std::size_t i) const {
    if (eta == 0.0) return false;
    if (kind == AdversaryKind::kChebyshev) {
      const auto bad = static_cast<std::size_t>(std::floor(eta * static_cast<double>(grid_size)));
      return i + bad >= grid_size;
    }
    return rng.split(i).at(0) < static_cast<std::uint64_t>(eta * 18446744073709551616.0);
  }

  template <Scalar T>
  T chebyshev_wave(const T& theta) const {
    const T s = num::scale2(theta, 1) / T(span) - T(1.0);
    T t0(1.0), t1 = s;
    if (degree == 0) return t0;
    for (int k = 2; k <= degree; ++k) {
      const T t2 = num::scale2(s * t1, 1) - t0;
      t0 = t1;
      t1 = t2;
    }
    return t1;
  }

  template <Scalar T>
  T apply(const T& truth, std::size_t i, const T& theta) const {
    SeededRng r = rng.split(i);
    (void)r.next();  // first draw is the corruption coin
    const bool bad = corrupted(i);
    switch (kind) {
      case AdversaryKind::kOffset:
        return bad ? truth + T(10.0) : truth + T(delta * (2.0 * r.uniform() - 1.0));
      case AdversaryKind::kRandomUnit:
        return bad ? T(r.uniform()) : truth + T(delta * (2.0 * r.uniform() - 1.0));
      case AdversaryKind::kChebyshev: {
        const T wave = chebyshev_wave(theta);
        return bad ? truth + T(rival_amplitude) * (wave + T(2.0)) : truth + T(delta) * wave;
      }
    }
    return truth;
  }
};

/// An oracle for Pr[0^n] of circuits from the perturbed family: the truth
/// function wrapped by an adversary. The grid fields of the adversary are
/// filled in by the reduction that queries it.
template <Scalar T>
struct AverageCaseOracle {
  ProbabilityOracle<T> truth;
  Adversary adversary;

  T query(const Circuit<T>& c, std::size_t i, const T& theta) const {
    return adversary.apply(truth(c, i), i, theta);
  }
};

template <Scalar T>
AverageCaseOracle<T> make_adversarial_oracle(ProbabilityOracle<T> truth_fn, double eta, double delta,
                                             AdversaryKind kind, SeededRng rng) {
  AverageCaseOracle<T> o;
  o.truth = std::move(truth_fn);
  o.adversary.kind = kind;
  o.adversary.eta = eta;
  o.adversary.delta = delta;
  o.adversary.rng = rng;
  o.adversary.validate();
  return o;
}

template <Scalar T>
ProbabilityOracle<T> exact_probability() {
  return [](const Circuit<T>& c, std::size_t) { return output_prob(c); };
}

template <Scalar T>
ProbabilityOracle<T> noisy_probability(NoiseModel<T> noise) {
  return [noise = std::move(noise)](const Circuit<T>& c, std::size_t) { return noisy_output_prob(c, noise); };
}

struct ReductionConfig {
  double span = 0.5;
  std::size_t grid_size = 0;  // 0 selects 100 d^2
  double delta = 1e-30;
  double eta = 0.1;
  EigenMargin margin;
  PrecisionConfig precision;  // consumed by callers that dispatch on precision
  TransformKind transform;
  int rescale_k = 1;
  std::size_t pad_budget = 1000;
  BoundConstants bounds;
  SearchOptions search;

  void validate(const Architecture& arch) const {
    require(span > 0.0 && span < 1.0, "span must lie in (0, 1)");
    require(eta >= 0.0 && eta < 0.25, "corruption rate must lie in [0, 1/4)");
    require(delta >= 0.0, "delta must be nonnegative");
    require(rescale_k >= 1, "rescale k must be at least 1");
    require(transform.is_cayley() || transform.order >= 1, "Taylor order must be at least 1");
    const std::size_t need = static_cast<std::size_t>(8 * arch.m() + 2);
    require(grid_size == 0 || grid_size >= need, "grid size must be at least 8m + 2");
  }

  int degree(const Architecture& arch) const { return numerator_degree(arch, transform); }

  std::size_t points(const Architecture& arch) const {
    const int d = degree(arch) * rescale_k;
    return grid_size ? grid_size : default_grid_size(d);
  }
};

template <Scalar T>
struct ReductionReport {
  bool noisy = false;
  std::uint64_t seed = 0;
  int degree = 0;
  std::size_t grid_size = 0;
  double span = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double eta_budget = 0.0;
  double delta_effective = 0.0;  // delta K plus rounding, the certificate tolerance
  AdversaryKind adversary = AdversaryKind::kOffset;
  TransformKind transform;
  NumeratorSamples<T> samples;
  std::vector<int> corrupted;
  std::vector<double> truncation;  // per grid point, Taylor variant only
  ExtrapolationResult<T> result;
  std::optional<T> truth;
  double achieved_error = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> notes;

  T estimate() const { return result.estimate; }
};

namespace detail {

template <Scalar T>
ReductionReport<T> run_reduction(const Circuit<T>& c0, AverageCaseOracle<T> oracle, const ReductionConfig& cfg,
                                 SeededRng rng, bool noisy) {
  c0.validate();
  cfg.validate(c0.arch);
  ReductionReport<T> rep;
  rep.noisy = noisy;
  rep.seed = rng.seed();
  rep.degree = cfg.degree(c0.arch);
  rep.grid_size = cfg.points(c0.arch);
  rep.span = cfg.span;
  rep.delta = cfg.delta;
  rep.eta = cfg.eta;
  rep.adversary = oracle.adversary.kind;
  rep.transform = cfg.transform;

  const PadSeed<T> pad = one_time_pad(c0, rng.split(0), cfg.margin, cfg.pad_budget);
  const PerturbedFamily<T> family(c0, pad, cfg.transform);
  const std::vector<T> grid = DataSet<T>::uniform_grid(rep.grid_size, T(cfg.span));

  oracle.adversary.degree = rep.degree;
  oracle.adversary.span = cfg.span;
  oracle.adversary.grid_size = rep.grid_size;
  ProbabilityOracle<T> query = [&](const Circuit<T>& c, std::size_t i) { return oracle.query(c, i, grid[i]); };
  rep.samples = numerator_samples(family, grid, query, cfg.delta, cfg.search.par);
  rep.corrupted.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rep.corrupted[i] = oracle.adversary.corrupted(i) || rep.samples.flag[i];
  if (!cfg.transform.is_cayley()) {
    rep.truncation.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) rep.truncation[i] = family.truncation_estimate(grid[i]);
    rep.notes.push_back("truncated-Taylor family is not unitary; Q = 1 and the truncation column bounds the series error");
  }
  if (cfg.span * static_cast<double>(c0.arch.m()) > 1.0)
    rep.notes.push_back("span exceeds 1/m; fine for the simulator oracle, not for a true average-case oracle");

  DataSet<T> data;
  data.x = grid;
  data.y = rep.samples.y;
  data.span = T(cfg.span);
  data.eta_budget = corruption_budget(cfg.eta, grid.size());
  double ymax = 0.0;
  for (const auto& y : data.y) ymax = std::max(ymax, std::fabs(num::to_double(y)));
  data.delta = cfg.delta * num::to_double(rep.samples.cap_K) + 100.0 * ScalarTraits<T>::epsilon() * ymax;
  rep.eta_budget = data.eta_budget;
  rep.delta_effective = data.delta;

  SeededRng search_rng = rng.split(1);
  rep.result = cfg.rescale_k == 1 ? robust_extrapolate(data, rep.degree, search_rng, T(1.0), cfg.search, cfg.bounds)
                                  : rescaled_extrapolate(data, rep.degree, cfg.rescale_k, search_rng, cfg.search,
                                                         cfg.bounds);
  return rep;
}

}  // namespace detail

/// Worst-to-average-case reduction for Pr[0^n](C0): pad, perturb, query the
/// oracle on [0, span], multiply by Q, robustly extrapolate P to theta = 1.
/// The pad uses rng.split(0) and the certificate search rng.split(1).
template <Scalar T>
ReductionReport<T> reduce(const Circuit<T>& c0, const AverageCaseOracle<T>& oracle, const ReductionConfig& cfg,
                          SeededRng rng) {
  return detail::run_reduction(c0, oracle, cfg, rng, false);
}

/// The same reduction against an oracle for the noisy probability under a
/// fixed noise model. Q depends only on the pad, so it matches reduce() on the
/// same rng exactly.
template <Scalar T>
ReductionReport<T> reduce_noisy(const Circuit<T>& c0, const NoiseModel<T>& noise, const AverageCaseOracle<T>& oracle,
                                const ReductionConfig& cfg, SeededRng rng) {
  noise.validate(c0.arch);
  return detail::run_reduction(c0, oracle, cfg, rng, true);
}

/// Fills in the ground truth and achieved error of a report.
template <Scalar T>
void attach_truth(ReductionReport<T>& rep, const T& truth) {
  rep.truth = truth;
  rep.achieved_error = std::fabs(num::to_double(rep.result.estimate - truth));
}

struct UniformityGap {
  int n = 0;
  double probability = 0.0;
  double uniform = 0.0;
  double gap = 0.0;
  bool reduction_ran = false;
  double achieved_error = std::numeric_limits<double>::quiet_NaN();
  double a_priori_bound = std::numeric_limits<double>::quiet_NaN();
};

/// |Pr[0^n](C0, N) - 2^-n| next to the reduction's achieved error and
/// a-priori bound (when `run_reduction`).
template <Scalar T>
UniformityGap uniformity_gap_report(const Circuit<T>& c0, const NoiseModel<T>& noise, const ReductionConfig& cfg,
                                    SeededRng rng, bool run_reduction = true) {
  if (c0.arch.n > static_cast<int>(kMaxDensityQubits))
    fail(ErrorKind::kTooLarge, "uniformity gap report supports n <= 8");
  UniformityGap g;
  g.n = c0.arch.n;
  const T pr = noisy_output_prob(c0, noise);
  g.probability = num::to_double(pr);
  g.uniform = std::ldexp(1.0, -c0.arch.n);
  g.gap = std::fabs(num::to_double(pr - num::scale2(T(1.0), -c0.arch.n)));
  if (run_reduction) {
    const auto oracle =
        make_adversarial_oracle<T>(noisy_probability(noise), cfg.eta, cfg.delta, AdversaryKind::kOffset, rng.split(2));
    auto rep = reduce_noisy(c0, noise, oracle, cfg, rng);
    attach_truth(rep, pr);
    g.reduction_ran = true;
    g.achieved_error = rep.achieved_error;
    g.a_priori_bound = rep.result.a_priori_bound;
  }
  return g;
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_PIPELINES_HPP
