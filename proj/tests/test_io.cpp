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

#include "cayleylab/io.hpp"

namespace cayleylab {
namespace {

using io::json;

TEST(CircuitJson, DoubleRoundTripIsBitExact) {
  const auto c = random_circuit<double>(brickwork(3, 3), SeededRng(141));
  const auto text = io::circuit_to_json(c).dump();
  const auto back = io::circuit_from_json<double>(json::parse(text));
  EXPECT_EQ(back.arch, c.arch);
  for (std::size_t i = 0; i < c.gates.size(); ++i) EXPECT_TRUE(identical(back.gates[i], c.gates[i]));
}

template <typename T>
class ExtendedJson : public ::testing::Test {};
using ExtendedTypes = ::testing::Types<DoubleDouble, QuadDouble>;
TYPED_TEST_SUITE(ExtendedJson, ExtendedTypes);

TYPED_TEST(ExtendedJson, RoundTripToPrintedDigits) {
  using T = TypeParam;
  const auto c = random_circuit<T>(brickwork(2, 1), SeededRng(142));
  const auto j = io::circuit_to_json(c);
  const std::string first = j["gates"][0][0][0][0].template get<std::string>();
  EXPECT_GE(first.size(), 40u);
  const auto back = io::circuit_from_json<T>(json::parse(j.dump()));
  EXPECT_EQ(io::circuit_to_json(back).dump(), j.dump());
  const double tol = 10 * ScalarTraits<T>::epsilon();
  EXPECT_LE(max_abs_diff(back.gates[0], c.gates[0]), tol);
}

TEST(CircuitJson, Validation) {
  EXPECT_THROW(io::circuit_from_json<double>(json::parse(R"({"n": 2, "slots": [[0, 1]], "extra": 1})")), Error);
  EXPECT_THROW(io::circuit_from_json<double>(json::parse(R"({"slots": [[0, 1]]})")), Error);
  EXPECT_THROW(io::circuit_from_json<double>(json::parse(R"({"n": 2, "slots": [[0, 1]], "gates": [[[1]]]})")),
               Error);
  const auto c = io::circuit_from_json<double>(
      json::parse(R"({"n": 1, "slots": [[0]], "gates": [[[0, [1, 0]], [[1, 0], 0]]]})"));
  EXPECT_EQ(c.gates[0](0, 1), Complex<double>(1.0));
}

TEST(ScalarJson, Forms) {
  EXPECT_TRUE(io::scalar_to_json(0.5).is_number());
  EXPECT_TRUE(io::scalar_to_json(DoubleDouble(0.5)).is_string());
  EXPECT_EQ(io::report_digits<double>(), 17);
  EXPECT_EQ(io::report_digits<QuadDouble>(), 35);
  const auto third = DoubleDouble(1.0) / DoubleDouble(3.0);
  const auto back = io::scalar_from_json<DoubleDouble>(io::scalar_to_json(third));
  EXPECT_LE(std::fabs(num::to_double(back - third)), 1e-33);
  EXPECT_THROW(io::scalar_from_json<double>(json(true)), Error);
}

TEST(ReportJson, CarriesGridAndBounds) {
  const auto c0 = random_circuit<double>(brickwork(2, 1), SeededRng(143));
  ReductionConfig cfg;
  cfg.grid_size = 300;
  cfg.delta = 1e-13;
  const auto oracle =
      make_adversarial_oracle<double>(exact_probability<double>(), 0.1, 1e-13, AdversaryKind::kOffset, SeededRng(144));
  auto rep = reduce(c0, oracle, cfg, SeededRng(145));
  attach_truth(rep, output_prob(c0));
  const auto j = io::report_to_json(rep, cfg);
  for (const char* key : {"config", "seed", "grid", "estimate", "truth", "achieved_error", "a_priori_bound",
                          "certificate_size"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["grid"].size(), 300u);
  EXPECT_EQ(j["grid"][0].size(), 5u);
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 145u);
  EXPECT_EQ(j["config"]["grid_size"].get<std::size_t>(), 300u);
}

TEST(ReportJson, BarrierAndPermanent) {
  const auto rep = barrier_report(3, 1.0 / 36.0, {0.0, 0.1}, 10, SeededRng(146));
  const auto j = io::barrier_report_to_json(rep);
  EXPECT_EQ(j["average_case"].size(), 2u);
  EXPECT_NEAR(j["worst_case_deviation"].get<double>(), 1.0, 1e-12);
}

}  // namespace
}  // namespace cayleylab
