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

#include <gtest/gtest.h>

#include <cmath>

#include "cayleylab/boson.hpp"

namespace cayleylab {
namespace {

using DD = DoubleDouble;

Matrix<double> real_matrix(std::size_t n, const std::vector<double>& v) {
  std::vector<Complex<double>> d(v.begin(), v.end());
  return Matrix<double>(n, n, d);
}

template <typename T>
Matrix<T> identity_like(std::size_t n) {
  return Matrix<T>::identity(n);
}

// Total variation between CN(theta, (1 - theta)^2) and CN(0, 1) by quadrature.
double entry_tv(double theta) {
  const double pi = 3.141592653589793, s2 = (1 - theta) * (1 - theta), h = 0.01;
  double acc = 0.0;
  for (double a = -7.0; a <= 7.0; a += h) {
    for (double b = -7.0; b <= 7.0; b += h) {
      const double p = std::exp(-((a - theta) * (a - theta) + b * b) / s2) / (pi * s2);
      const double q = std::exp(-(a * a + b * b)) / pi;
      acc += std::fabs(p - q);
    }
  }
  return 0.5 * acc * h * h;
}

TEST(Permanent, Examples) {
  EXPECT_NEAR(permanent_ryser(Matrix<double>::identity(3)).re, 1.0, 1e-15);
  EXPECT_NEAR(permanent_ryser(real_matrix(4, std::vector<double>(16, 1.0))).re, 24.0, 1e-12);
  const auto m = real_matrix(2, {1, 2, 3, 4});
  EXPECT_NEAR(permanent_ryser(m).re, 10.0, 1e-14);
  EXPECT_NEAR(permanent_naive(m).re, 10.0, 1e-14);
  EXPECT_EQ(permanent_naive(Matrix<double>(3, 3)), Complex<double>());
  EXPECT_NEAR(permanent_naive(real_matrix(3, {2, 0, 0, 0, 3, 0, 0, 0, 5})).re, 30.0, 1e-14);
}

TEST(Permanent, RyserMatchesNaive) {
  SeededRng rng(71);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto x = gaussian_matrix<double>(6, 1.0, rng);
    const auto a = permanent_ryser(x), b = permanent_naive(x);
    EXPECT_LE(abs(a - b), 1e-9 * std::max(1.0, abs(b)));
  }
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto x = gaussian_matrix<double>(n, 1.0, rng);
    EXPECT_LE(abs(permanent_ryser(x) - permanent_naive(x)), 1e-10 * std::max(1.0, abs(permanent_naive(x))));
  }
}

TEST(Permanent, SizeLimits) {
  try {
    permanent_naive(Matrix<double>::identity(9));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooLarge);
  }
  EXPECT_THROW(permanent_ryser(Matrix<double>::identity(15)), Error);
  EXPECT_NEAR(permanent_ryser(Matrix<double>::identity(14)).re, 1.0, 1e-12);
}

TEST(Permanent, MultilinearInRows) {
  SeededRng rng(72);
  for (int rep = 0; rep < 20; ++rep) {
    auto u = gaussian_matrix<double>(5, 1.0, rng);
    auto v = u;
    SeededRng r2 = rng.split(rep);
    const auto other = gaussian_matrix<double>(5, 1.0, r2);
    for (std::size_t c = 0; c < 5; ++c) v(0, c) = other(0, c);
    const Complex<double> a(0.7, -0.2), b(-1.3, 0.4);
    auto mix = u;
    for (std::size_t c = 0; c < 5; ++c) mix(0, c) = a * u(0, c) + b * v(0, c);
    const auto want = a * permanent_ryser(u) + b * permanent_ryser(v);
    EXPECT_LE(abs(permanent_ryser(mix) - want), 1e-10 * std::max(1.0, abs(want)));
  }
}

TEST(GaussianMatrix, MomentsAndDeterminism) {
  SeededRng rng(73);
  const auto x = gaussian_matrix<double>(317, 1.0, rng);  // ~1e5 entries
  const double count = static_cast<double>(x.data().size());
  double re = 0.0, im = 0.0, sq = 0.0;
  for (const auto& z : x.data()) {
    re += z.re;
    im += z.im;
    sq += norm(z);
  }
  EXPECT_LE(std::fabs(re / count), 3 * std::sqrt(0.5 / count));
  EXPECT_LE(std::fabs(im / count), 3 * std::sqrt(0.5 / count));
  EXPECT_LE(std::fabs(sq / count - 1.0), 3 / std::sqrt(count));
  SeededRng a(74, 2), b(74, 2);
  EXPECT_TRUE(identical(gaussian_matrix<double>(4, 2.0, a), gaussian_matrix<double>(4, 2.0, b)));
}

TEST(PermanentPath, EndpointsAndDegree) {
  SeededRng rng(75);
  const std::size_t n = 3;
  const auto x1 = gaussian_matrix<double>(n, 1.0, rng);
  const auto x0 = real_matrix(n, {1, 0, 1, 1, 1, 0, 0, 1, 1});
  EXPECT_TRUE(identical(permanent_path(x1, x0, 0.0), x1));
  EXPECT_TRUE(identical(permanent_path(x1, x0, 1.0), x0));
  // |Per(X(theta))|^2 has degree 2n.
  const int d = 2 * static_cast<int>(n);
  std::vector<Point<double>> pts;
  for (const double t : chebyshev_nodes<double>(d + 1, 0.0, 1.0)) pts.push_back({t, norm(permanent_ryser(permanent_path(x1, x0, t)))});
  const auto fit = poly_fit(pts, d);
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, std::fabs(p.y));
  for (double t : {0.05, 0.5, 0.93}) {
    const double y = norm(permanent_ryser(permanent_path(x1, x0, t)));
    EXPECT_LE(std::fabs(fit.polynomial(t) - y), 1e-9 * scale);
  }
}

TEST(PermanentPath, EntryTvGrowsLinearly) {
  const double a = entry_tv(0.01), b = entry_tv(0.02), c = entry_tv(0.04);
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_NEAR(b / a, 2.0, 0.1);
  EXPECT_NEAR(c / a, 4.0, 0.3);
}

TEST(BosonConfig, Scales) {
  BosonConfig cfg{5, 3.0};
  cfg.validate();
  EXPECT_NEAR(cfg.modes(), 125.0, 1e-9);
  EXPECT_NEAR(cfg.output_probability(125.0 * 125.0), std::pow(125.0, -3.0), 1e-18);
  EXPECT_LT(cfg.log_reduction_robustness(), cfg.log_interpolation_barrier());
  EXPECT_LT(cfg.log_interpolation_barrier(), cfg.log_sampling_requirement());
  EXPECT_NEAR(cfg.log_sampling_requirement(), -2.0 * 5 * std::log(5.0), 1e-12);
  EXPECT_THROW((BosonConfig{5, 2.0}.validate()), Error);
}

TEST(PermanentReduce, ExactOracle) {
  const auto x0 = real_matrix(3, {1, 1, 0, 0, 1, 1, 1, 0, 1});
  const auto x0dd = matrix_cast<DD>(x0);
  const double want = norm(permanent_naive(x0));
  EXPECT_EQ(want, 4.0);
  PermanentReductionConfig cfg;
  cfg.eta = 0.0;
  const auto red = permanent_reduce<DD>(x0dd, exact_permanent_oracle<DD>(), cfg, SeededRng(76));
  EXPECT_LE(std::fabs(num::to_double(red.result.estimate) - want), 1e-6);
  EXPECT_EQ(red.result.degree, 6);
  EXPECT_EQ(red.data.size(), default_grid_size(6));
}

TEST(PermanentReduce, IdentityTarget) {
  PermanentReductionConfig cfg;
  cfg.eta = 0.0;
  const auto red = permanent_reduce<DD>(identity_like<DD>(3), exact_permanent_oracle<DD>(), cfg, SeededRng(77));
  EXPECT_LE(std::fabs(num::to_double(red.result.estimate) - 1.0), 1e-6);
}

TEST(PermanentReduce, CorruptedOracleWithinBound) {
  const auto x0 = matrix_cast<DD>(real_matrix(4, {1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1}));
  const double want = norm(permanent_naive(matrix_cast<double>(x0)));
  const auto exact = exact_permanent_oracle<DD>();
  const SeededRng noise(78);
  const PermanentOracle<DD> oracle = [&](const Matrix<DD>& x, std::size_t i) {
    SeededRng r = noise.split(i);
    if (r.uniform() < 0.1) return DD(r.uniform() * 50.0);
    return exact(x, i);
  };
  PermanentReductionConfig cfg;
  const auto red = permanent_reduce<DD>(x0, oracle, cfg, SeededRng(79));
  const double err = std::fabs(num::to_double(red.result.estimate) - want);
  EXPECT_LE(err, red.result.a_priori_bound);
  EXPECT_LE(err, 1e-6);
}

TEST(PermanentReduce, Validation) {
  PermanentReductionConfig cfg;
  EXPECT_THROW(permanent_reduce<double>(real_matrix(2, {1, 2, 0, 1}), exact_permanent_oracle<double>(), cfg,
                                        SeededRng(1)),
               Error);
  cfg.span = 1.0;
  EXPECT_THROW(permanent_reduce<double>(identity_like<double>(2), exact_permanent_oracle<double>(), cfg, SeededRng(1)),
               Error);
}

TEST(Barrier, Endpoints) {
  SeededRng rng(80);
  const auto x1 = gaussian_matrix<double>(4, 1.0, rng);
  const auto x0 = real_matrix(4, {1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0, 1, 1});
  for (double th : {0.0, 0.3, 0.8}) {
    EXPECT_EQ(barrier_polynomial(x1, x0, 0.0, th), norm(permanent_ryser(permanent_path(x1, x0, th))));
  }
  const double t = 0.25;
  const double want = norm(permanent_ryser(x0)) + t * 24.0 * 24.0;
  EXPECT_NEAR(barrier_polynomial(x1, x0, t, 1.0), want, 1e-12 * want);
  EXPECT_THROW(barrier_polynomial(gaussian_matrix<double>(9, 1.0, rng), Matrix<double>::identity(9), 0.1, 0.5),
               Error);
}

TEST(Barrier, AverageCaseFarBelowWorstCase) {
  const double t = 1.0 / (24.0 * 24.0);
  const auto rep = barrier_report(4, t, {0.0, 0.01, 0.05}, 400, SeededRng(81));
  EXPECT_NEAR(rep.worst_case_deviation, 1.0, 1e-12);
  EXPECT_EQ(rep.factorial_squared, 576.0);
  ASSERT_EQ(rep.average_case.size(), 3u);
  for (const auto& p : rep.average_case) {
    EXPECT_LT(p.mean_deviation + 3 * p.standard_error, 0.1 * rep.worst_case_deviation);
    // E|Per(G)|^2 = n! for standard complex Gaussian G.
    EXPECT_LE(p.mean_deviation, 3.0 * t * 24.0);
  }
}

}  // namespace
}  // namespace cayleylab
