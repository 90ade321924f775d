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

#ifndef CAYLEYLAB_INTERP_HPP
#define CAYLEYLAB_INTERP_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cayleylab/errors.hpp"
#include "cayleylab/numerics/parallel.hpp"
#include "cayleylab/numerics/polynomial.hpp"
#include "cayleylab/numerics/rng.hpp"

namespace cayleylab {

/// Sample set {(x_i, y_i)} for robust extrapolation. Points are usually the
/// uniform grid x_i = i span / (N - 1); delta bounds the error of honest
/// points and eta_budget is the fraction of points a certificate may drop.
template <Scalar T>
struct DataSet {
  std::vector<T> x;
  std::vector<T> y;
  T span{1.0};
  double delta = 0.0;
  double eta_budget = 0.01;
  std::vector<int> corrupted;  // optional ground truth for reporting: 1 corrupted, 0 honest

  static std::vector<T> uniform_grid(std::size_t count, const T& span) {
    require(count >= 2, "grid needs at least two points");
    std::vector<T> xs(count);
    const T last(static_cast<double>(count - 1));
    for (std::size_t i = 0; i < count; ++i) xs[i] = T(static_cast<double>(i)) * span / last;
    xs.back() = span;
    return xs;
  }

  std::size_t size() const { return x.size(); }

  std::size_t required_size() const {
    return static_cast<std::size_t>(std::ceil((1.0 - eta_budget) * static_cast<double>(size()) - 1e-9));
  }

  void validate() const {
    require(!x.empty() && x.size() == y.size(), "data set needs matching x and y");
    require(eta_budget >= 0.0 && eta_budget < 0.25, "corruption budget must lie in [0, 1/4)");
    require(delta >= 0.0, "delta must be nonnegative");
    require(corrupted.empty() || corrupted.size() == x.size(), "corruption flags must match the points");
    for (std::size_t i = 1; i < x.size(); ++i) require(x[i - 1] < x[i], "x values must be strictly increasing");
  }

  void write_csv(std::ostream& os) const {
    os << "x,y,corrupted\n";
    for (std::size_t i = 0; i < size(); ++i) {
      os << num::to_string(x[i]) << ',' << num::to_string(y[i]) << ',';
      if (!corrupted.empty()) os << corrupted[i];
      os << '\n';
    }
  }
};

/// Budget for independently corrupted points at rate eta: eta plus four
/// binomial standard deviations, kept below 1/4.
inline double corruption_budget(double eta, std::size_t count) {
  require(eta >= 0.0 && eta < 0.25, "corruption rate must lie in [0, 1/4)");
  const double sigma = std::sqrt(eta * (1.0 - eta) / static_cast<double>(std::max<std::size_t>(count, 1)));
  return std::min(eta + 4.0 * sigma, 0.2499);
}

/// Default grid size 100 d^2 (at least 16 points).
inline std::size_t default_grid_size(int d) {
  return std::max<std::size_t>(16, static_cast<std::size_t>(100) * d * d);
}

template <Scalar T>
struct Certificate {
  std::vector<std::size_t> subset;  // ascending indices
  RealPolynomial<T> polynomial;     // Chebyshev basis on [0, span]
  double max_residual = 0.0;        // over the subset
  std::string stage;                // which search stage produced it
  long trial = -1;                  // winning randomized trial, if any
};

struct VerificationReport {
  bool ok = false;
  std::string reason;
  double max_residual = 0.0;
  std::size_t subset_size = 0;
};

/// Re-checks a certificate from scratch. Residuals are recomputed with the
/// explicit three-term recurrence rather than the Clenshaw routine the search
/// uses.
template <Scalar T>
VerificationReport verify_certificate(const DataSet<T>& data, const Certificate<T>& cert, int d) {
  VerificationReport r;
  r.subset_size = cert.subset.size();
  if (cert.polynomial.degree() > d) {
    r.reason = "polynomial degree exceeds d";
    return r;
  }
  if (cert.subset.size() < data.required_size()) {
    r.reason = "subset smaller than the required fraction";
    return r;
  }
  const auto& c = cert.polynomial.coefficients();
  const T lo = cert.polynomial.lo(), hi = cert.polynomial.hi();
  for (std::size_t k = 0; k < cert.subset.size(); ++k) {
    const std::size_t i = cert.subset[k];
    if (i >= data.size() || (k > 0 && cert.subset[k - 1] >= i)) {
      r.reason = "subset indices invalid or not strictly increasing";
      return r;
    }
    T p(0.0);
    if (cert.polynomial.basis() == Basis::kMonomial) {
      T xp(1.0);
      for (const auto& ck : c) {
        p += ck * xp;
        xp = xp * data.x[i];
      }
    } else {
      const T s = (data.x[i] - lo - (hi - data.x[i])) / (hi - lo);
      T t0(1.0), t1 = s;
      p = c[0];
      if (c.size() > 1) p += c[1] * s;
      for (std::size_t j = 2; j < c.size(); ++j) {
        const T t2 = num::scale2(s * t1, 1) - t0;
        p += c[j] * t2;
        t0 = t1;
        t1 = t2;
      }
    }
    const double res = std::fabs(num::to_double(data.y[i] - p));
    r.max_residual = std::max(r.max_residual, res);
  }
  if (!(r.max_residual <= data.delta)) {
    r.reason = "a subset residual exceeds delta";
    return r;
  }
  r.ok = true;
  return r;
}

struct SearchOptions {
  std::size_t budget = 2000;     // randomized subset trials
  std::size_t max_trims = 400;   // worst-point removals in the refinement stage
  bool randomized_only = false;  // skip the deterministic stages
  Parallelism par;
};

namespace detail {

// Clenshaw evaluation at a precomputed interval variable s.
template <Scalar T>
T clenshaw(const std::vector<T>& c, const T& s) {
  const T two_s = s + s;
  T b1(0.0), b2(0.0);
  for (std::size_t k = c.size(); k-- > 1;) {
    const T b0 = two_s * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + c[0];
}

inline double clenshaw_d(const double* c, std::size_t n, double s) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = n; k-- > 1;) {
    const double b0 = 2.0 * s * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + c[0];
}

// Dense real solve with partial pivoting; returns false if singular.
template <Scalar T>
bool solve_dense(std::vector<T>& a, std::vector<T>& b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (num::abs(a[i * n + k]) > num::abs(a[piv * n + k])) piv = i;
    if (num::hi(a[piv * n + k]) == 0.0) return false;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = a[i * n + k] / a[k * n + k];
      for (std::size_t c = k; c < n; ++c) a[i * n + c] -= f * a[k * n + c];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    T s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a[k * n + c] * b[c];
    b[k] = s / a[k * n + k];
  }
  return true;
}

template <Scalar T>
std::vector<T> cheb_row(int d, const T& s) {
  std::vector<T> row(d + 1);
  row[0] = T(1.0);
  if (d >= 1) row[1] = s;
  for (int k = 2; k <= d; ++k) row[k] = num::scale2(s * row[k - 1], 1) - row[k - 2];
  return row;
}

// Discrete minimax (Chebyshev) fit on the index set `active` (ascending x)
// by the single-point exchange method. Returns coefficients and the levelled
// error; `reference` is used as a warm start and updated. Iteration stops
// early once the maximum error is at most `good_enough`.
template <Scalar T>
struct MinimaxFit {
  std::vector<T> coeffs;
  double max_error = 0.0;
  std::size_t worst = 0;  // position in `active` of the largest residual
  bool converged = false;
};

template <Scalar T>
MinimaxFit<T> minimax_fit(const std::vector<T>& s, const std::vector<T>& y, const std::vector<std::size_t>& active,
                          int d, std::vector<std::size_t>& reference, double good_enough = 0.0) {
  MinimaxFit<T> out;
  const std::size_t n = active.size();
  const std::size_t r = static_cast<std::size_t>(d) + 2;
  auto residuals_max = [&](const std::vector<T>& c) {
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = active[k];
      const double e = std::fabs(num::to_double(y[i] - clenshaw(c, s[i])));
      if (e > best) {
        best = e;
        arg = k;
      }
    }
    return std::make_pair(best, arg);
  };
  if (n < r) {
    // Interpolate (or least-squares) directly; too few points to level.
    std::vector<T> a(n * (d + 1)), b(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto row = cheb_row(d, s[active[k]]);
      std::copy(row.begin(), row.end(), a.begin() + k * (d + 1));
      b[k] = y[active[k]];
    }
    if (n >= static_cast<std::size_t>(d + 1)) {
      out.coeffs = householder_least_squares(std::move(a), n, d + 1, std::move(b)).x;
    } else {
      out.coeffs.assign(d + 1, T(0.0));
    }
    auto [e, arg] = residuals_max(out.coeffs);
    out.max_error = e;
    out.worst = arg;
    out.converged = true;
    return out;
  }
  // Reference positions (into `active`), ascending and distinct.
  std::vector<std::size_t> ref = reference;
  {
    bool ok = ref.size() == r;
    for (std::size_t j = 0; ok && j < r; ++j) ok = ref[j] < n && (j == 0 || ref[j - 1] < ref[j]);
    if (!ok) {
      ref.resize(r);
      for (std::size_t j = 0; j < r; ++j) {
        const double c = 0.5 * (1.0 - std::cos(ScalarTraits<double>::pi() * j / (r - 1)));
        ref[j] = static_cast<std::size_t>(std::llround(c * static_cast<double>(n - 1)));
      }
      for (std::size_t j = 1; j < r; ++j) ref[j] = std::max(ref[j], ref[j - 1] + 1);
      for (std::size_t j = r - 1; j-- > 0;) ref[j] = std::min(ref[j], ref[j + 1] - 1);
    }
  }
  const int max_iterations = 40 * static_cast<int>(r) + 200;
  std::vector<T> coeffs(d + 1, T(0.0));
  double level = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    std::vector<T> a(r * r), b(r);
    for (std::size_t j = 0; j < r; ++j) {
      const std::size_t i = active[ref[j]];
      const auto row = cheb_row(d, s[i]);
      std::copy(row.begin(), row.end(), a.begin() + j * r);
      a[j * r + r - 1] = T(j % 2 == 0 ? 1.0 : -1.0);
      b[j] = y[i];
    }
    if (!solve_dense(a, b, r)) break;
    coeffs.assign(b.begin(), b.begin() + d + 1);
    const T h = b[r - 1];
    level = std::fabs(num::to_double(h));
    auto [e, arg] = residuals_max(coeffs);
    out.coeffs = coeffs;
    out.max_error = e;
    out.worst = arg;
    if (e <= good_enough || e <= level * (1.0 + 1e-9) + 1e-300 ||
        std::find(ref.begin(), ref.end(), arg) != ref.end()) {
      out.converged = true;
      break;
    }
    // Single-point exchange keeping the sign alternation.
    const int sigma = num::hi(y[active[arg]] - clenshaw(coeffs, s[active[arg]])) >= 0.0 ? 1 : -1;
    auto ref_sign = [&](std::size_t j) {
      const double hv = num::hi(h) * (j % 2 == 0 ? 1.0 : -1.0);
      return hv >= 0.0 ? 1 : -1;
    };
    const std::size_t pos = static_cast<std::size_t>(std::lower_bound(ref.begin(), ref.end(), arg) - ref.begin());
    if (pos == 0) {
      if (sigma == ref_sign(0)) {
        ref[0] = arg;
      } else {
        ref.pop_back();
        ref.insert(ref.begin(), arg);
      }
    } else if (pos == r) {
      if (sigma == ref_sign(r - 1)) {
        ref[r - 1] = arg;
      } else {
        ref.erase(ref.begin());
        ref.push_back(arg);
      }
    } else {
      if (sigma == ref_sign(pos - 1)) {
        ref[pos - 1] = arg;
      } else {
        ref[pos] = arg;
      }
    }
  }
  reference = ref;
  return out;
}

// Weighted least squares in double for the l1 (IRLS) stage.
inline std::vector<double> weighted_fit_d(const std::vector<double>& s, const std::vector<double>& y,
                                          const std::vector<double>& w, int d) {
  const std::size_t n = s.size(), cols = static_cast<std::size_t>(d + 1);
  std::vector<double> a(n * cols), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sw = std::sqrt(w[i]);
    const auto row = cheb_row<double>(d, s[i]);
    for (std::size_t k = 0; k < cols; ++k) a[i * cols + k] = row[k] * sw;
    b[i] = y[i] * sw;
  }
  return householder_least_squares(std::move(a), n, cols, std::move(b)).x;
}

}  // namespace detail

/// Finds any certificate (F', Q): at least required_size() points and a
/// degree-<= d polynomial within delta of each of them.
///
/// Stages: (1) l1 fit in double by iteratively reweighted least squares and
/// classification of the gross outliers; (2) minimax fit at full precision on
/// the candidate inliers, dropping the worst point while the levelled error
/// exceeds delta; (3) randomized (d+1)-point interpolation trials, each with
/// its own RNG stream, whose consensus sets go through stage 2. The first
/// verified certificate wins (lowest trial index in stage 3).
template <Scalar T>
Certificate<T> certificate_search(const DataSet<T>& data, int d, SeededRng rng, const SearchOptions& opt = {}) {
  data.validate();
  require(d >= 0, "degree must be nonnegative");
  const std::size_t n = data.size();
  require(n >= static_cast<std::size_t>(d + 1), "need at least d+1 points");
  const T lo(0.0);
  const T hi = num::max(data.span, data.x.back());
  std::vector<T> s(n);
  std::vector<double> sd(n), yd(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = (data.x[i] - lo - (hi - data.x[i])) / (hi - lo);
    sd[i] = num::to_double(s[i]);
    yd[i] = num::to_double(data.y[i]);
  }
  const std::size_t need = data.required_size();
  double yscale = 0.0;
  for (double v : yd) yscale = std::max(yscale, std::fabs(v));
  yscale = std::max(yscale, 1e-300);

  // Minimax refinement on `active` (ascending indices) with trimming.
  auto refine = [&](std::vector<std::size_t> active, const std::string& stage,
                    long trial) -> std::optional<Certificate<T>> {
    std::vector<std::size_t> reference;
    for (std::size_t trims = 0; active.size() >= std::min(need, n); ++trims) {
      auto fit = detail::minimax_fit(s, data.y, active, d, reference, data.delta);
      if (fit.max_error <= data.delta) {
        Certificate<T> cert;
        cert.polynomial = RealPolynomial<T>::chebyshev(fit.coeffs, lo, hi);
        for (std::size_t i = 0; i < n; ++i) {
          const double e = std::fabs(num::to_double(data.y[i] - detail::clenshaw(fit.coeffs, s[i])));
          if (e <= data.delta) {
            cert.subset.push_back(i);
            cert.max_residual = std::max(cert.max_residual, e);
          }
        }
        cert.stage = stage;
        cert.trial = trial;
        if (verify_certificate(data, cert, d).ok) return cert;
        return std::nullopt;
      }
      if (trims == opt.max_trims || active.size() == need) return std::nullopt;
      // Drop the worst point; keep the warm-start reference consistent.
      const std::size_t w = fit.worst;
      active.erase(active.begin() + static_cast<long>(w));
      for (auto& rpos : reference) {
        if (rpos > w) --rpos;
      }
      reference.erase(std::unique(reference.begin(), reference.end()), reference.end());
    }
    return std::nullopt;
  };

  if (!opt.randomized_only) {
    // Stage 1: l1 fit in double.
    std::vector<double> w(n, 1.0), c;
    std::vector<double> r(n);
    double eps_w = yscale;
    for (int it = 0; it < 60; ++it) {
      c = detail::weighted_fit_d(sd, yd, w, d);
      for (std::size_t i = 0; i < n; ++i) r[i] = yd[i] - detail::clenshaw_d(c.data(), c.size(), sd[i]);
      std::vector<double> ar(n);
      for (std::size_t i = 0; i < n; ++i) ar[i] = std::fabs(r[i]);
      std::nth_element(ar.begin(), ar.begin() + static_cast<long>(n / 2), ar.end());
      const double med = ar[n / 2];
      eps_w = std::max(std::min(eps_w * 0.3, std::max(med, 1e-300)), 1e-15 * yscale);
      for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / std::max(std::fabs(r[i]), eps_w);
      if (eps_w <= 1e-15 * yscale && it > 8) break;
    }
    // Concentration steps: refit on the `need` smallest residuals until the
    // kept set stops changing. Started from the l1 fit and from contiguous
    // windows, since a smooth rival block can trap a single start.
    const double tau = std::max(1e-10 * yscale, 4.0 * data.delta);
    auto fit_on = [&](const std::vector<std::size_t>& idx) {
      std::vector<double> ks(idx.size()), ky(idx.size()), kw(idx.size(), 1.0);
      for (std::size_t j = 0; j < idx.size(); ++j) {
        ks[j] = sd[idx[j]];
        ky[j] = yd[idx[j]];
      }
      const auto cf = detail::weighted_fit_d(ks, ky, kw, d);
      std::vector<double> res(n);
      for (std::size_t i = 0; i < n; ++i) res[i] = yd[i] - detail::clenshaw_d(cf.data(), cf.size(), sd[i]);
      return res;
    };
    auto concentrate = [&](std::vector<double> res) {
      std::vector<std::size_t> kept;
      for (int it = 0; it < 50; ++it) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::nth_element(order.begin(), order.begin() + static_cast<long>(need - 1), order.end(),
                         [&](std::size_t x, std::size_t y) { return std::fabs(res[x]) < std::fabs(res[y]); });
        std::vector<std::size_t> next(order.begin(), order.begin() + static_cast<long>(need));
        std::sort(next.begin(), next.end());
        if (next == kept) break;
        kept = std::move(next);
        res = fit_on(kept);
      }
      std::vector<std::size_t> active;
      for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(res[i]) <= tau) active.push_back(i);
      return active;
    };
    std::vector<std::size_t> best = concentrate(r);
    if (best.size() < need && need < n) {
      for (std::size_t first : {std::size_t{0}, (n - need) / 2, n - need}) {
        std::vector<std::size_t> window(need);
        std::iota(window.begin(), window.end(), first);
        auto active = concentrate(fit_on(window));
        if (active.size() > best.size()) best = std::move(active);
        if (best.size() >= need) break;
      }
    }
    if (best.size() >= need) {
      if (auto cert = refine(best, "l1+minimax", -1)) return *cert;
    }
  }

  // Stage 3: randomized consensus trials, in batches for determinism.
  const std::size_t batch = std::max<std::size_t>(1, 4 * opt.par.resolved());
  for (std::size_t start = 0; start < opt.budget; start += batch) {
    const std::size_t count = std::min(batch, opt.budget - start);
    std::vector<std::optional<Certificate<T>>> found(count);
    parallel_for(count, opt.par, [&](std::size_t j) {
      const std::size_t trial = start + j;
      SeededRng tr = rng.split(trial);
      // One node per stratum of a random window holding at least half the
      // grid keeps the interpolation reasonably conditioned.
      const std::size_t k = static_cast<std::size_t>(d + 1);
      const std::size_t len = std::max(k, n / 2 + tr.below(n - n / 2 + 1));
      const std::size_t first = tr.below(n - len + 1);
      std::vector<std::size_t> pick(k);
      for (std::size_t q = 0; q < k; ++q) {
        const std::size_t a = q * len / k, b = (q + 1) * len / k;
        pick[q] = first + a + tr.below(std::max<std::size_t>(1, b - a));
      }
      std::vector<T> a(k * k), rhs(k);
      for (std::size_t q = 0; q < k; ++q) {
        const auto row = detail::cheb_row(d, s[pick[q]]);
        std::copy(row.begin(), row.end(), a.begin() + q * k);
        rhs[q] = data.y[pick[q]];
      }
      if (!detail::solve_dense(a, rhs, k)) return;
      std::vector<double> res(n);
      for (std::size_t i = 0; i < n; ++i)
        res[i] = std::fabs(num::to_double(data.y[i] - detail::clenshaw(rhs, s[i])));
      // Consensus threshold: the need-th smallest residual, floored at delta.
      std::vector<double> sorted = res;
      std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(need - 1), sorted.end());
      const double cut = std::max(sorted[need - 1], data.delta);
      if (cut > 1e-6 * yscale + data.delta) return;
      std::vector<std::size_t> active;
      for (std::size_t i = 0; i < n; ++i)
        if (res[i] <= cut * 1.5) active.push_back(i);
      found[j] = refine(active, "randomized", static_cast<long>(trial));
    });
    for (auto& f : found)
      if (f) return *f;
  }
  fail(ErrorKind::kSearchExhausted, "no verified certificate within the search budget");
}

// ---- bounds ---------------------------------------------------------------

/// |P(1)| <= eps e^{4d/Delta} for |P| <= eps on [0, Delta]. Degree 0 gives eps.
inline double paturi_bound(double eps, int d, double span) {
  require(span > 0.0 && span <= 1.0, "paturi_bound: Delta must be in (0, 1]");
  if (d == 0) return eps;
  return eps * std::exp(4.0 * d / span);
}

/// |P| <= c on N+1 equally spaced points of an interval and d^2/N < 1
/// imply |P| <= c / (1 - d^2/N) on the whole interval.
inline double markov_uniform_bound(double c, int d, long long N) {
  require(N >= 1, "markov_uniform_bound: N must be positive");
  const double ratio = static_cast<double>(d) * d / static_cast<double>(N);
  if (ratio >= 1.0) fail(ErrorKind::kInvalidRegime, "markov_uniform_bound needs d^2 < N");
  return c / (1.0 - ratio);
}

/// |P(1)| <= delta (8/Delta)^d for |P| <= delta on [0, Delta].
inline double long_distance_bound(double delta, int d, double span) {
  require(span > 0.0 && span < 1.0, "long_distance_bound: Delta must be in (0, 1)");
  return delta * std::pow(8.0 / span, d);
}

/// Constants of the a-priori extrapolation bound. Two delta-certificates
/// share at least (1 - 2 eta) of the grid, where their difference is below
/// 2 delta; that makes it uniformly <= 2.02 delta e^{C d} on [0, Delta] with
/// C = max(zeph, 4 / (1/2 - 2 eta)).
struct BoundConstants {
  double zeph = 12.0;

  double uniform_constant(double eta_budget) const {
    require(eta_budget >= 0.0 && eta_budget < 0.25, "corruption budget must lie in [0, 1/4)");
    return std::max(zeph, 4.0 / (0.5 - 2.0 * eta_budget));
  }

  double uniform_bound(double delta, int d, double eta_budget) const {
    return 2.02 * delta * std::exp(uniform_constant(eta_budget) * d);
  }

  /// delta e^{d ln(1/Delta) + d ln 8 + C d}, with the 2.02 prefactor.
  double a_priori(double delta, int d, double span, double eta_budget) const {
    require(span > 0.0 && span < 1.0, "a-priori bound needs Delta in (0, 1)");
    return uniform_bound(delta, d, eta_budget) * std::pow(8.0 / span, d);
  }
};

/// |T_d(2/span - 1)|: growth at 1 of the Chebyshev polynomial rescaled to be
/// bounded by 1 on [0, span]. Extremal for all three bounds.
inline double chebyshev_witness(int d, double span) {
  require(span > 0.0 && span <= 1.0, "span must lie in (0, 1]");
  return std::cosh(d * std::acosh(2.0 / span - 1.0));
}

struct BoundCheckRow {
  int d = 0;
  double span = 0.0;
  std::string bound;
  double value = 0.0;
  double witness = 0.0;
  bool ok = false;
};

/// Chebyshev witnesses against paturi_bound and long_distance_bound for
/// d = 0..dmax over the given spans, plus the long-distance bound at span 1/d.
inline std::vector<BoundCheckRow> chebyshev_bound_table(int dmax, const std::vector<double>& spans) {
  require(dmax >= 0, "dmax must be nonnegative");
  std::vector<BoundCheckRow> rows;
  auto add = [&](int d, double span, const char* name, double value) {
    const double w = chebyshev_witness(d, span);
    rows.push_back({d, span, name, value, w, w <= value * (1.0 + 1e-12)});
  };
  for (int d = 0; d <= dmax; ++d) {
    for (double span : spans) {
      add(d, span, "paturi", paturi_bound(1.0, d, span));
      if (span < 1.0) add(d, span, "long_distance", long_distance_bound(1.0, d, span));
    }
    if (d >= 2) add(d, 1.0 / d, "long_distance_1/d", long_distance_bound(1.0, d, 1.0 / d));
  }
  return rows;
}

template <Scalar T>
struct ExtrapolationResult {
  T estimate{0.0};
  T target{1.0};
  Certificate<T> certificate;
  int degree = 0;
  int rescale_k = 1;
  double zeph_constant = 0.0;  // C actually used
  double uniform_bound = 0.0;  // bound on |P - Q| over the fitting interval
  double a_priori_bound = 0.0;
  double achieved_residual = 0.0;
};

/// p = Q(target) for a found certificate, with the a-priori bound computed
/// from (delta, d, Delta, eta) alone.
template <Scalar T>
ExtrapolationResult<T> robust_extrapolate(const DataSet<T>& data, int d, SeededRng rng, const T& target = T(1.0),
                                          const SearchOptions& opt = {}, const BoundConstants& bc = {}) {
  ExtrapolationResult<T> out;
  out.certificate = certificate_search(data, d, rng, opt);
  out.target = target;
  out.estimate = out.certificate.polynomial(target);
  out.degree = d;
  out.zeph_constant = bc.uniform_constant(data.eta_budget);
  out.uniform_bound = bc.uniform_bound(data.delta, d, data.eta_budget);
  out.a_priori_bound = bc.a_priori(data.delta, d, num::to_double(data.span), data.eta_budget);
  out.achieved_residual = out.certificate.max_residual;
  return out;
}

/// Substitutes theta = x^k: the degree-d data in theta becomes degree d k in
/// x = theta^(1/k) on [0, Delta^(1/k)], extrapolated to x = 1. The bound is
/// the Paturi growth paturi_bound(uniform, d k, Delta^(1/k)). k = 1 defers to
/// robust_extrapolate.
template <Scalar T>
ExtrapolationResult<T> rescaled_extrapolate(const DataSet<T>& data, int d, int k, SeededRng rng,
                                            const SearchOptions& opt = {}, const BoundConstants& bc = {}) {
  require(k >= 1, "rescaling exponent must be at least 1");
  if (k == 1) return robust_extrapolate(data, d, rng, T(1.0), opt, bc);
  data.validate();
  DataSet<T> sub = data;
  const T inv_k = T(1.0) / T(static_cast<double>(k));
  for (auto& x : sub.x) {
    require(num::hi(x) >= 0.0, "rescaling needs nonnegative x");
    if (num::hi(x) > 0.0) x = num::exp(num::log(x) * inv_k);
  }
  sub.span = num::exp(num::log(data.span) * inv_k);
  const int dk = d * k;
  ExtrapolationResult<T> out;
  out.certificate = certificate_search(sub, dk, rng, opt);
  out.target = T(1.0);
  out.estimate = out.certificate.polynomial(T(1.0));
  out.degree = dk;
  out.rescale_k = k;
  out.zeph_constant = bc.uniform_constant(data.eta_budget);
  out.uniform_bound = bc.uniform_bound(data.delta, dk, data.eta_budget);
  out.a_priori_bound = paturi_bound(out.uniform_bound, dk, num::to_double(sub.span));
  out.achieved_residual = out.certificate.max_residual;
  return out;
}

/// 8 t (1.01 e^{2/t} + 2.01), the exponent prefactor of the rescaled bound
/// with k = t log n.
inline double rescaling_exponent(double t) { return 8.0 * t * (1.01 * std::exp(2.0 / t) + 2.01); }

/// Golden-section minimization of rescaling_exponent over t > 0.
inline std::pair<double, double> minimize_rescaling_exponent() {
  double a = 0.2, b = 20.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  while (b - a > 1e-12) {
    if (rescaling_exponent(c) < rescaling_exponent(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  const double t = 0.5 * (a + b);
  return {t, rescaling_exponent(t)};
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_INTERP_HPP
