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
#include <functional>
#include <sstream>

#include "cayleylab/interp.hpp"

namespace cayleylab {
namespace {

using DD = DoubleDouble;

template <typename T>
DataSet<T> sample(const std::function<T(const T&)>& f, std::size_t count, double span, double delta, double eta) {
  DataSet<T> data;
  data.span = T(span);
  data.x = DataSet<T>::uniform_grid(count, data.span);
  for (const auto& x : data.x) data.y.push_back(f(x));
  data.delta = delta;
  data.eta_budget = eta;
  data.corrupted.assign(count, 0);
  return data;
}

// T_d(2x/span - 1), bounded by 1 on [0, span].
template <typename T>
T rescaled_chebyshev(int d, const T& x, const T& span) {
  const T s = T(2.0) * x / span - T(1.0);
  T t0(1.0), t1 = s;
  if (d == 0) return t0;
  for (int k = 2; k <= d; ++k) {
    const T t2 = T(2.0) * s * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

TEST(DataSet, GridAndValidation) {
  const auto xs = DataSet<double>::uniform_grid(5, 0.5);
  EXPECT_EQ(xs, (std::vector<double>{0.0, 0.125, 0.25, 0.375, 0.5}));
  DataSet<double> data = sample<double>([](double x) { return x; }, 5, 0.5, 0.0, 0.3);
  EXPECT_THROW(data.validate(), Error);
  data.eta_budget = 0.01;
  data.validate();
  data.x[2] = data.x[1];
  EXPECT_THROW(data.validate(), Error);
}

TEST(DataSet, RequiredSizeAndCsv) {
  auto data = sample<double>([](double x) { return x; }, 100, 1.0, 0.0, 0.01);
  EXPECT_EQ(data.required_size(), 99u);
  data.eta_budget = 0.1;
  EXPECT_EQ(data.required_size(), 90u);
  data.corrupted[3] = 1;
  std::ostringstream os;
  data.write_csv(os);
  EXPECT_EQ(os.str().substr(0, 14), "x,y,corrupted\n");
  EXPECT_NE(os.str().find(",1\n"), std::string::npos);
}

TEST(DataSet, BudgetsAndGridSize) {
  EXPECT_EQ(default_grid_size(0), 16u);
  EXPECT_EQ(default_grid_size(2), 400u);
  EXPECT_EQ(default_grid_size(16), 25600u);
  EXPECT_NEAR(corruption_budget(0.1, 400), 0.1 + 4 * std::sqrt(0.09 / 400), 1e-15);
  EXPECT_EQ(corruption_budget(0.0, 10), 0.0);
  EXPECT_EQ(corruption_budget(0.2, 10), 0.2499);
  EXPECT_THROW(corruption_budget(0.3, 10), Error);
}

TEST(CertificateSearch, CleanQuadratic) {
  const auto data = sample<double>([](double x) { return x * x; }, default_grid_size(2), 1.0, 1e-12, 0.01);
  const auto cert = certificate_search(data, 2, SeededRng(1));
  EXPECT_EQ(cert.subset.size(), data.size());
  const auto mono = cert.polynomial.to_monomial().coefficients();
  ASSERT_EQ(mono.size(), 3u);
  EXPECT_NEAR(mono[0], 0.0, 1e-12);
  EXPECT_NEAR(mono[1], 0.0, 1e-12);
  EXPECT_NEAR(mono[2], 1.0, 1e-12);
  EXPECT_TRUE(verify_certificate(data, cert, 2).ok);
}

TEST(CertificateSearch, OffsetCorruption) {
  const std::function<double(const double&)> p = [](const double& x) {
    return 0.3 - 1.2 * x + 2.0 * x * x - 0.5 * x * x * x + 0.1 * x * x * x * x;
  };
  auto data = sample<double>(p, default_grid_size(4), 0.5, 1e-11, 0.2);
  SeededRng rng(2);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (rng.uniform() < 0.15) {
      data.y[i] += 10.0;
      data.corrupted[i] = 1;
    }
  }
  const auto cert = certificate_search(data, 4, SeededRng(3));
  ASSERT_TRUE(verify_certificate(data, cert, 4).ok);
  std::size_t honest = 0, agree = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.corrupted[i]) continue;
    ++honest;
    agree += std::fabs(cert.polynomial(data.x[i]) - data.y[i]) <= data.delta;
  }
  EXPECT_GE(agree, static_cast<std::size_t>(std::ceil(0.99 * honest)));
}

TEST(CertificateSearch, ConstantWithOneOutlier) {
  auto data = sample<double>([](double) { return 0.7; }, 100, 1.0, 1e-14, 0.01);
  data.y[37] = 5.0;
  const auto cert = certificate_search(data, 0, SeededRng(4));
  EXPECT_EQ(cert.polynomial.degree(), 0);
  EXPECT_NEAR(cert.polynomial(0.5), 0.7, 1e-14);
  EXPECT_EQ(cert.subset.size(), 99u);
}

TEST(CertificateSearch, RandomizedStageAlone) {
  auto data = sample<double>([](double x) { return 1.0 + x - x * x; }, 200, 0.5, 1e-12, 0.1);
  for (std::size_t i = 0; i < data.size(); i += 17) data.y[i] = -3.0;
  SearchOptions opt;
  opt.randomized_only = true;
  const auto cert = certificate_search(data, 2, SeededRng(5), opt);
  EXPECT_EQ(cert.stage, "randomized");
  EXPECT_GE(cert.trial, 0);
  EXPECT_TRUE(verify_certificate(data, cert, 2).ok);
}

TEST(CertificateSearch, ExhaustedOnNoise) {
  DataSet<double> data;
  data.x = DataSet<double>::uniform_grid(60, 1.0);
  SeededRng rng(6);
  for (std::size_t i = 0; i < 60; ++i) data.y.push_back(rng.uniform());
  data.delta = 1e-12;
  SearchOptions opt;
  opt.budget = 50;
  opt.max_trims = 20;
  try {
    certificate_search(data, 1, SeededRng(7), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSearchExhausted);
  }
}

TEST(VerifyCertificate, RejectsBadCertificates) {
  const auto data = sample<double>([](double x) { return x; }, 100, 1.0, 1e-12, 0.01);
  auto cert = certificate_search(data, 1, SeededRng(8));
  ASSERT_TRUE(verify_certificate(data, cert, 1).ok);
  EXPECT_FALSE(verify_certificate(data, cert, 0).ok);
  auto small = cert;
  small.subset.resize(90);
  EXPECT_FALSE(verify_certificate(data, small, 1).ok);
  auto shifted = cert;
  shifted.polynomial = RealPolynomial<double>::chebyshev({0.5 + 1e-9, 0.5}, 0.0, 1.0);
  EXPECT_TRUE(verify_certificate(data, cert, 1).ok);
  EXPECT_FALSE(verify_certificate(data, shifted, 1).ok);
}

TEST(RobustExtrapolate, CleanCubic) {
  const std::function<DD(const DD&)> p = [](const DD& x) { return DD(0.2) + x * (DD(-1.0) + x * (DD(0.5) + x)); };
  const auto data = sample<DD>(p, default_grid_size(3), 0.5, 1e-28, 0.01);
  const auto r = robust_extrapolate(data, 3, SeededRng(9));
  EXPECT_LE(std::fabs(num::to_double(r.estimate - p(DD(1.0)))), 1e-10);
  EXPECT_GT(r.a_priori_bound, 0.0);
  EXPECT_EQ(r.degree, 3);
}

class ChebyshevWorstCase : public ::testing::Test {
 protected:
  static DataSet<DD> corrupted_t8(std::uint64_t seed) {
    const DD span(0.25);
    const std::function<DD(const DD&)> p = [span](const DD& x) { return rescaled_chebyshev(8, x, span); };
    const std::size_t n = default_grid_size(8);
    auto data = sample<DD>(p, n, 0.25, 1e-30, corruption_budget(0.1, n));
    SeededRng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < 0.1) {
        data.y[i] += DD(rng.uniform() * 4.0 - 2.0);
        data.corrupted[i] = 1;
      }
    }
    return data;
  }
};

TEST_F(ChebyshevWorstCase, WithinAprioriBound) {
  const auto data = corrupted_t8(10);
  const auto r = robust_extrapolate(data, 8, SeededRng(11));
  const double truth = chebyshev_witness(8, 0.25);
  const double err = std::fabs(num::to_double(r.estimate - DD(truth)));
  EXPECT_LE(err, r.a_priori_bound);
  EXPECT_LE(err, 1e-12 * truth);
  EXPECT_TRUE(verify_certificate(data, r.certificate, 8).ok);
}

TEST_F(ChebyshevWorstCase, CertificatesAgreeAcrossStreams) {
  const auto data = corrupted_t8(12);
  const auto a = robust_extrapolate(data, 8, SeededRng(13));
  SearchOptions opt;
  opt.randomized_only = true;
  const auto b = robust_extrapolate(data, 8, SeededRng(14), DD(1.0), opt);
  EXPECT_LE(std::fabs(num::to_double(a.estimate - b.estimate)), 2 * a.a_priori_bound);
}

TEST(Bounds, PaturiExamples) {
  EXPECT_NEAR(paturi_bound(1.0, 1, 1.0), std::exp(4.0), 1e-12);
  EXPECT_NEAR(paturi_bound(1.0, 1, 1.0), 54.598, 1e-3);
  EXPECT_EQ(paturi_bound(0.3, 0, 0.2), 0.3);
  EXPECT_THROW(paturi_bound(1.0, 1, 0.0), Error);
}

TEST(Bounds, MarkovExamples) {
  EXPECT_DOUBLE_EQ(markov_uniform_bound(1.0, 2, 8), 2.0);
  EXPECT_EQ(markov_uniform_bound(0.4, 0, 8), 0.4);
  try {
    markov_uniform_bound(1.0, 3, 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidRegime);
  }
}

TEST(Bounds, MarkovHoldsOnRandomPolynomials) {
  SeededRng rng(15);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> c(6);
    for (auto& ck : c) ck = rng.normal();
    const auto p = RealPolynomial<double>::chebyshev(c, 0.0, 1.0);
    double on_grid = 0.0, dense = 0.0;
    for (int i = 0; i <= 50; ++i) on_grid = std::max(on_grid, std::fabs(p(i / 50.0)));
    for (int i = 0; i <= 1000; ++i) dense = std::max(dense, std::fabs(p(i / 1000.0)));
    EXPECT_LE(dense, markov_uniform_bound(on_grid, 5, 50));
  }
}

TEST(Bounds, LongDistanceExamples) {
  EXPECT_DOUBLE_EQ(long_distance_bound(1.0, 1, 0.5), 16.0);
  const auto t2 = RealPolynomial<double>::chebyshev({0.0, 0.0, 1.0}, -1.0, 1.0).to_monomial();
  EXPECT_LE(t2.coefficient_abs_sum(), std::pow(4.0, 2));
  EXPECT_THROW(long_distance_bound(1.0, 1, 1.0), Error);
}

TEST(Bounds, ChebyshevTableHolds) {
  const auto rows = chebyshev_bound_table(20, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
  std::size_t reciprocal = 0;
  for (const auto& r : rows) {
    EXPECT_TRUE(r.ok) << r.bound << " d=" << r.d << " span=" << r.span;
    reciprocal += r.bound == "long_distance_1/d";
  }
  EXPECT_EQ(reciprocal, 19u);
}

TEST(Bounds, ChebyshevWitnessSaturates) {
  for (int d = 1; d <= 24; ++d) EXPECT_GE(chebyshev_witness(d, 0.25), std::exp(static_cast<double>(d)));
  EXPECT_NEAR(chebyshev_witness(8, 0.25), rescaled_chebyshev(8, 1.0, 0.25), 1e-6);
}

TEST(Bounds, AprioriMonotoneAndLinear) {
  const BoundConstants bc;
  const double base = bc.a_priori(1e-20, 8, 0.5, 0.05);
  EXPECT_LT(base, bc.a_priori(1e-20, 9, 0.5, 0.05));
  EXPECT_LT(base, bc.a_priori(1e-20, 8, 0.4, 0.05));
  EXPECT_NEAR(bc.a_priori(3e-20, 8, 0.5, 0.05) / base, 3.0, 1e-12);
  EXPECT_EQ(bc.uniform_constant(0.01), 12.0);
  EXPECT_NEAR(bc.uniform_constant(0.2), 4.0 / 0.1, 1e-12);
  const double want = 2.02 * 1e-20 * std::exp(8 * (std::log(2.0) + std::log(8.0) + 12.0));
  EXPECT_NEAR(base / want, 1.0, 1e-12);
}

TEST(Rescaling, KOneMatchesPlainExtrapolation) {
  const auto data = sample<double>([](double x) { return 1.0 - x + 0.5 * x * x; }, 400, 0.5, 1e-12, 0.01);
  const auto a = robust_extrapolate(data, 2, SeededRng(16));
  const auto b = rescaled_extrapolate(data, 2, 1, SeededRng(16));
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.a_priori_bound, b.a_priori_bound);
}

TEST(Rescaling, RecoversValueThroughSubstitution) {
  const std::function<DD(const DD&)> p = [](const DD& x) { return DD(0.3) + x * (DD(-0.8) + x * DD(1.1)); };
  const auto data = sample<DD>(p, 400, 0.5, 1e-28, 0.01);
  const auto r = rescaled_extrapolate(data, 2, 3, SeededRng(17));
  EXPECT_EQ(r.degree, 6);
  EXPECT_EQ(r.rescale_k, 3);
  EXPECT_LE(std::fabs(num::to_double(r.estimate - p(DD(1.0)))), 1e-12);
}

TEST(Rescaling, CubeRootBeatsDirectPaturi) {
  const double span = 0.1;
  EXPECT_LT(paturi_bound(1.0, 24, std::cbrt(span)), paturi_bound(1.0, 8, span));
}

TEST(Rescaling, PrefactorMinimum) {
  const auto [t, value] = minimize_rescaling_exponent();
  EXPECT_NEAR(value, 69.7, 0.1);
  EXPECT_LT(value, 70.0);
  EXPECT_GT(rescaling_exponent(t * 0.9), value);
  EXPECT_GT(rescaling_exponent(t * 1.1), value);
}

}  // namespace
}  // namespace cayleylab
