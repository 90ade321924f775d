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

// Acceptance harness: one [PASS]/[FAIL] line per criterion with its runtime.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstdarg>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cayleylab/boson.hpp"
#include "cayleylab/pipelines.hpp"
#include "cayleylab/toymodel.hpp"

namespace {

using namespace cayleylab;
using DD = DoubleDouble;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

bool same_bytes(const DD& a, const DD& b) {
  return std::memcmp(a.components().data(), b.components().data(), sizeof(double) * 2) == 0;
}

PerturbedFamily<DD> family(const Architecture& arch, std::uint64_t seed) {
  return {random_circuit<DD>(arch, SeededRng(seed, 1)), one_time_pad<DD>(arch, SeededRng(seed, 2), EigenMargin(0.1)),
          TransformKind::cayley()};
}

ReductionConfig reduction_config() {
  ReductionConfig cfg;
  cfg.eta = 0.1;
  cfg.delta = 1e-30;
  cfg.span = 0.5;
  return cfg;
}

// 1
Outcome cayley_endpoints() {
  SeededRng rng(1001);
  double e0 = 0.0, e1 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SeededRng r = rng.split(i);
    const auto h = haar_unitary<double>(4, r);
    const auto sd = unitary_eigendecomposition(h);
    e0 = std::max(e0, max_abs_diff(cayley_transform(sd, 0.0), h));
    e1 = std::max(e1, max_abs_diff(cayley_transform(sd, 1.0), Matrix<double>::identity(4)));
  }
  return {e0 <= 1e-11 && e1 <= 1e-11, fmt("max|H(0)-H|=%.2e max|H(1)-I|=%.2e over 1000 gates", e0, e1)};
}

// 2 and 3
Outcome rational_structure(bool noisy) {
  const double tol = 1e-8;
  bool pass = true;
  std::ostringstream os;
  double worst_pass = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const auto arch = brickwork_with_gates(3, static_cast<std::size_t>(m));
    int negative_fails = 0;
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto fam = family(arch, 2000 + 10 * m + s);
      const auto model = depolarizing_model<DD>(arch, noisy ? 0.1 : 0.0, NoiseArity::kTwoQubit);
      const ProbabilityOracle<DD> clean = [](const Circuit<DD>& c, std::size_t) { return output_prob(c); };
      const ProbabilityOracle<DD> mixed = [&model](const Circuit<DD>& c, std::size_t) {
        return noisy_output_prob(c, model);
      };
      const auto& oracle = noisy ? mixed : clean;
      const auto good = verify_rational_degree(fam, oracle, 8 * m, tol);
      const auto bad = verify_rational_degree(fam, oracle, 8 * m - 4, tol);
      pass = pass && good.pass;
      worst_pass = std::max(worst_pass, good.relative_residual);
      negative_fails += !bad.pass;
      if (noisy) {
        std::vector<DD> grid;
        for (int i = 0; i <= 40; ++i) grid.push_back(DD(static_cast<double>(i)) / DD(40.0));
        const auto a = numerator_samples(fam, grid, clean, 0.0);
        const auto b = numerator_samples(fam, grid, mixed, 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) pass = pass && same_bytes(a.q[i], b.q[i]);
      }
    }
    pass = pass && negative_fails >= 4;
    os << " m=" << m << ":neg " << negative_fails << "/5";
  }
  return {pass, fmt("worst degree-8m residual %.2e;", worst_pass) + os.str() + (noisy ? "; Q byte-identical" : "")};
}

// 4
Outcome convexity() {
  SeededRng rng(4001);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    SeededRng r = rng.split(i);
    const auto c = random_circuit<double>(brickwork_with_gates(2, 2), r.split(0));
    NoiseModel<double> model;
    const int channels = 1 + i % 2;
    for (int k = 0; k < channels; ++k) {
      const double gamma = r.uniform();
      const int q = static_cast<int>(r.uniform() * 2.0);
      const auto slot = static_cast<std::size_t>(r.uniform() * 2.0);
      model.channels.push_back(depolarizing_1q<double>(gamma, q, slot));
    }
    worst = std::max(worst, std::fabs(trajectory_average(c, model) - noisy_output_prob(c, model)));
  }
  return {worst <= 1e-12, fmt("max |trajectory - density| = %.2e over 100 circuits", worst)};
}

// 5
Outcome robust_extrapolation() {
  std::size_t total = 0, found = 0, within_bound = 0, small = 0;
  double worst = 0.0;
  for (int d : {4, 8, 16}) {
    for (double span : {0.25, 0.5}) {
      for (AdversaryKind kind : {AdversaryKind::kOffset, AdversaryKind::kChebyshev}) {
        for (std::uint64_t s = 0; s < 20; ++s) {
          ++total;
          const SeededRng rng(5000 + 1000 * d + static_cast<std::uint64_t>(span * 100) + 7 * s,
                              kind == AdversaryKind::kOffset ? 1 : 2);
          SeededRng coeff_rng = rng.split(0);
          std::vector<DD> c(static_cast<std::size_t>(d + 1));
          for (auto& ck : c) ck = DD(coeff_rng.normal() / std::sqrt(d + 1.0));
          const auto p = RealPolynomial<DD>::chebyshev(c, DD(0.0), DD(span));
          Adversary adv;
          adv.kind = kind;
          adv.eta = 0.1;
          adv.delta = 1e-30;
          adv.rng = rng.split(1);
          adv.degree = d;
          adv.span = span;
          adv.grid_size = default_grid_size(d);
          DataSet<DD> data;
          data.span = DD(span);
          data.x = DataSet<DD>::uniform_grid(adv.grid_size, data.span);
          double ymax = 0.0;
          for (std::size_t i = 0; i < data.x.size(); ++i) {
            data.y.push_back(adv.apply(p(data.x[i]), i, data.x[i]));
            data.corrupted.push_back(adv.corrupted(i));
            ymax = std::max(ymax, std::fabs(num::to_double(data.y.back())));
          }
          data.delta = adv.delta + 100.0 * ScalarTraits<DD>::epsilon() * ymax;
          data.eta_budget = corruption_budget(adv.eta, data.size());
          try {
            const auto r = robust_extrapolate(data, d, rng.split(2));
            ++found;
            const double err = std::fabs(num::to_double(r.estimate - p(DD(1.0))));
            worst = std::max(worst, err);
            within_bound += err <= r.a_priori_bound;
            small += err <= 1e-6;
          } catch (const Error&) {
          }
        }
      }
    }
  }
  const bool pass = found == total && within_bound == total && small * 100 >= 95 * total;
  return {pass, fmt("%zu/%zu certificates, %zu within a-priori bound, %zu with error <= 1e-6, worst %.2e", found,
                    total, within_bound, small, worst)};
}

// 6
Outcome bound_checkers() {
  std::vector<double> spans;
  for (int i = 1; i <= 9; ++i) spans.push_back(i / 10.0);
  const auto rows = chebyshev_bound_table(20, spans);
  std::size_t bad_rows = 0;
  for (const auto& r : rows) bad_rows += !r.ok;
  std::size_t markov_bad = 0, markov_rows = 0;
  for (int d = 1; d <= 20; ++d) {
    const long long grid = 4LL * d * d;
    for (double span : spans) {
      // The rescaled witness is bounded by 1 on the grid, so the Markov
      // bound must cover its sup over [0, span], which is exactly 1.
      double on_grid = 0.0;
      for (long long i = 0; i <= grid; ++i) {
        const double x = span * static_cast<double>(i) / static_cast<double>(grid);
        const double s = std::clamp(2.0 * x / span - 1.0, -1.0, 1.0);
        on_grid = std::max(on_grid, std::fabs(std::cos(d * std::acos(s))));
      }
      ++markov_rows;
      markov_bad += !(1.0 <= markov_uniform_bound(on_grid, d, grid) * (1.0 + 1e-12));
    }
  }
  SeededRng rng(6001);
  std::size_t sums_bad = 0;
  for (int d = 0; d <= 20; ++d) {
    for (int k = 0; k < 1000; ++k) {
      SeededRng r = rng.split(static_cast<std::uint64_t>(d) * 1000 + k);
      std::vector<double> c(static_cast<std::size_t>(d + 1));
      double l1 = 0.0;
      for (auto& ck : c) l1 += std::fabs(ck = r.normal());
      for (auto& ck : c) ck /= l1;
      const double sum = RealPolynomial<double>::chebyshev(c, -1.0, 1.0).to_monomial().coefficient_abs_sum();
      sums_bad += sum > std::pow(4.0, d) * (1.0 + 1e-12);
    }
  }
  return {bad_rows == 0 && markov_bad == 0 && sums_bad == 0,
          fmt("%zu witness rows (%zu violations), %zu Markov rows (%zu violations), 21000 coefficient sums "
              "(%zu above 4^d)",
              rows.size(), bad_rows, markov_rows, markov_bad, sums_bad)};
}

// 7
Outcome rescaling_constant() {
  const auto [t, value] = minimize_rescaling_exponent();
  DataSet<double> data;
  data.span = 0.1;
  data.x = DataSet<double>::uniform_grid(4 * 24 * 24, data.span);
  for (const auto& x : data.x) data.y.push_back(std::pow(1.0 - x, 8));
  data.delta = 1e-12;
  data.eta_budget = 0.0;
  const auto r = rescaled_extrapolate(data, 8, 3, SeededRng(7001));
  const double direct = paturi_bound(r.uniform_bound, 8, 0.1);
  const bool pass = std::fabs(value - 69.7) <= 0.1 && r.a_priori_bound < direct;
  return {pass, fmt("min 8t(1.01e^{2/t}+2.01) = %.4f at t = %.4f; rescaled bound %.3e < Paturi %.3e", value, t,
                    r.a_priori_bound, direct)};
}

// 8
Outcome end_to_end() {
  const auto cfg = reduction_config();
  int ok_clean = 0, ok_noisy = 0;
  double worst_clean = 0.0, worst_noisy = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto c0 = random_circuit<DD>(brickwork_with_gates(2, 2), SeededRng(8000 + s, 1));
    const auto noise = depolarizing_model<DD>(c0.arch, 0.1, NoiseArity::kTwoQubit);
    const auto clean =
        make_adversarial_oracle<DD>(exact_probability<DD>(), 0.1, 1e-30, AdversaryKind::kOffset, SeededRng(8000 + s, 2));
    const auto noisy = make_adversarial_oracle<DD>(noisy_probability(noise), 0.1, 1e-30, AdversaryKind::kOffset,
                                                   SeededRng(8000 + s, 2));
    try {
      auto a = reduce(c0, clean, cfg, SeededRng(8000 + s, 3));
      attach_truth(a, output_prob(c0));
      worst_clean = std::max(worst_clean, a.achieved_error);
      ok_clean += a.achieved_error <= 1e-6;
    } catch (const Error&) {
    }
    try {
      auto b = reduce_noisy(c0, noise, noisy, cfg, SeededRng(8000 + s, 3));
      attach_truth(b, noisy_output_prob(c0, noise));
      worst_noisy = std::max(worst_noisy, b.achieved_error);
      ok_noisy += b.achieved_error <= 1e-6;
    } catch (const Error&) {
    }
  }
  return {ok_clean == 10 && ok_noisy == 10, fmt("noiseless %d/10 (worst %.2e), noisy gamma=0.1 %d/10 (worst %.2e)",
                                                ok_clean, worst_clean, ok_noisy, worst_noisy)};
}

// 9
Outcome permanent_reduction() {
  int ok = 0;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    SeededRng pick(9000 + s, 1);
    Matrix<double> x0(3, 3);
    double want = 0.0;
    for (int attempt = 0; want == 0.0; ++attempt) {
      SeededRng r = pick.split(static_cast<std::uint64_t>(attempt));
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) x0(i, j) = Complex<double>(r.uniform() < 0.5 ? 0.0 : 1.0);
      want = norm(permanent_naive(x0));
    }
    const auto exact = exact_permanent_oracle<DD>();
    const SeededRng noise(9000 + s, 2);
    const PermanentOracle<DD> oracle = [&](const Matrix<DD>& x, std::size_t i) {
      SeededRng r = noise.split(i);
      if (r.uniform() < 0.1) return DD(r.uniform() * 50.0);
      return exact(x, i);
    };
    PermanentReductionConfig cfg;
    cfg.span = 0.3;
    cfg.eta = 0.1;
    try {
      const auto red = permanent_reduce<DD>(matrix_cast<DD>(x0), oracle, cfg, SeededRng(9000 + s, 3));
      const double rel = std::fabs(num::to_double(red.result.estimate) - want) / want;
      worst = std::max(worst, rel);
      ok += rel <= 1e-6;
    } catch (const Error&) {
    }
  }
  SeededRng rng(9100);
  double ryser = 0.0;
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int k = 0; k < 20; ++k) {
      const auto x = gaussian_matrix<double>(n, 1.0, rng);
      const auto a = permanent_ryser(x), b = permanent_naive(x);
      ryser = std::max(ryser, abs(a - b) / std::max(1.0, abs(b)));
    }
  }
  return {ok == 10 && ryser <= 1e-9,
          fmt("%d/10 within 1e-6 relative (worst %.2e); Ryser vs naive n<=7 max rel diff %.2e", ok, worst, ryser)};
}

// 10
Outcome cp_decay() {
  std::vector<int> depths;
  std::vector<CpEstimate> est;
  bool pass = true;
  double worst_z = 0.0;
  for (int d = 1; d <= 6; ++d) {
    ToyParams p;
    p.n = 3;
    p.gamma = 0.1;
    p.depth = d;
    p.trials = 500;
    const auto e = cp_monte_carlo(p, SeededRng(10000 + d));
    const double z = std::fabs(e.estimate - cp_closed_form(p)) / e.standard_error;
    worst_z = std::max(worst_z, z);
    pass = pass && z <= 3.0;
    depths.push_back(d);
    est.push_back(e);
  }
  const auto fit = fit_log_decay(depths, est);
  const double ln_beta = std::log(decay_coefficient(3, 0.1));
  const double slope_z = std::fabs(fit.slope - ln_beta) / fit.slope_error;
  ToyParams pt;
  pt.n = 3;
  pt.gamma = 0.0;
  pt.depth = 3;
  pt.trials = 500;
  const auto e0 = cp_monte_carlo(pt, SeededRng(10100));
  const double pt_z = std::fabs(e0.estimate - 7.0 / 9.0) / e0.standard_error;
  pass = pass && slope_z <= 3.0 && pt_z <= 3.0;
  return {pass, fmt("max depth z = %.2f; slope %.4f vs ln beta %.4f (z = %.2f); Porter-Thomas %.4f vs %.4f (z = %.2f)",
                    worst_z, fit.slope, ln_beta, slope_z, e0.estimate, 7.0 / 9.0, pt_z)};
}

// 11
Outcome margin_statistics() {
  bool pass = true;
  std::string detail;
  for (double delta : {0.05, 0.1}) {
    const EigenMargin margin(delta, 4);
    const int samples = 10000;
    SeededRng rng(11000 + static_cast<std::uint64_t>(delta * 100));
    int good = 0;
    for (int i = 0; i < samples; ++i) {
      SeededRng r = rng.split(static_cast<std::uint64_t>(i));
      good += margin_good(unitary_eigendecomposition(haar_unitary<double>(4, r)).phases, margin);
    }
    const double p = margin.union_bound();
    const double sigma = std::sqrt(p * (1.0 - p) / samples);
    const double freq = static_cast<double>(good) / samples;
    pass = pass && freq >= p - 3.0 * sigma;
    detail += fmt("delta=%.2f: %.4f >= %.4f - 3 sigma; ", delta, freq, p);
  }
  return {pass, detail.substr(0, detail.size() - 2)};
}

// 12
Outcome fourier_sampling() {
  const double threshold = std::ldexp(1.0, -2 * 2 - 1);
  int exact = 0, decided = 0;
  double worst = 0.0, bound = 0.0;
  const auto cfg = reduction_config();
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> f(4);
    int sum = 0;
    for (int x = 0; x < 4; ++x) sum += f[x] = (mask >> x & 1) ? -1 : 1;
    const auto c0 = fourier_sampling_brickwork<DD>(f);
    const DD want = DD(static_cast<double>(sum * sum)) / DD(16.0);
    exact += same_bytes(output_prob(c0), want);
    const auto oracle = make_adversarial_oracle<DD>(exact_probability<DD>(), 0.1, 1e-30, AdversaryKind::kOffset,
                                                    SeededRng(12000 + mask, 1));
    try {
      auto rep = reduce(c0, oracle, cfg, SeededRng(12000 + mask, 2));
      attach_truth(rep, want);
      worst = std::max(worst, rep.achieved_error);
      bound = rep.result.a_priori_bound;
      const bool says_nonzero = num::to_double(rep.estimate()) >= threshold;
      decided += rep.achieved_error < threshold && says_nonzero == (sum != 0);
    } catch (const Error&) {
    }
  }
  return {exact == 16 && decided == 16,
          fmt("%d/16 exact (sum f)^2/16; %d/16 gapped decisions correct at threshold 2^-5 (worst error %.2e, "
              "a-priori bound %.2e)",
              exact, decided, worst, bound)};
}

// 13
Outcome barrier_demo() {
  const double t = 1.0 / (24.0 * 24.0);
  const auto rep = barrier_report(4, t, {0.0, 0.01, 0.02, 0.03, 0.04, 0.05}, 100, SeededRng(13000));
  bool pass = std::fabs(rep.worst_case_deviation - t * rep.factorial_squared) <= 1e-12 &&
              std::fabs(rep.worst_case_deviation - 1.0) <= 1e-12;
  double worst_avg = 0.0;
  for (const auto& p : rep.average_case) {
    worst_avg = std::max(worst_avg, p.mean_deviation + 3.0 * p.standard_error);
    pass = pass && p.mean_deviation + 3.0 * p.standard_error <= 0.1 * rep.worst_case_deviation;
  }
  return {pass, fmt("worst-case deviation %.15g; max average-case (mean + 3 se) over theta <= 0.05: %.4f",
                    rep.worst_case_deviation, worst_avg)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "cayley endpoints", 10, cayley_endpoints},
      {2, "rational structure", 120, [] { return rational_structure(false); }},
      {3, "noisy rational structure", 300, [] { return rational_structure(true); }},
      {4, "trajectory convexity", 30, convexity},
      {5, "robust extrapolation", 600, robust_extrapolation},
      {6, "bound checkers", 60, bound_checkers},
      {7, "rescaling constant", 1, rescaling_constant},
      {8, "end-to-end reduction", 900, end_to_end},
      {9, "permanent reduction", 300, permanent_reduction},
      {10, "collision-probability decay", 600, cp_decay},
      {11, "margin statistics", 60, margin_statistics},
      {12, "fourier-sampling quantization", 60, fourier_sampling},
      {13, "barrier demo", 120, barrier_demo},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.limit_s;
    failures += !pass;
    std::printf("[%s] %2d %s: %s (%.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.limit_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
