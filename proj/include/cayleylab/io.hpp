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

#ifndef CAYLEYLAB_IO_HPP
#define CAYLEYLAB_IO_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayleylab/boson.hpp"
#include "cayleylab/circuits.hpp"
#include "cayleylab/errors.hpp"
#include "cayleylab/pipelines.hpp"
#include "cayleylab/toymodel.hpp"

namespace cayleylab::io {

using json = nlohmann::json;

/// Significant digits for reports: 17 at native double, 35 otherwise.
template <Scalar T>
constexpr int report_digits() {
  return std::is_same_v<T, double> ? 17 : 35;
}

/// Doubles become JSON numbers; extended values become decimal strings.
template <Scalar T>
json scalar_to_json(const T& v, int digits = report_digits<T>()) {
  if constexpr (std::is_same_v<T, double>) {
    (void)digits;
    if (!std::isfinite(v)) return json(num::to_string(v, 17));
    return json(v);
  } else {
    return json(num::to_string(v, digits));
  }
}

template <Scalar T>
T scalar_from_json(const json& j) {
  if (j.is_number()) return T(j.get<double>());
  require(j.is_string(), "expected a number or a decimal string");
  return num::from_string<T>(j.get<std::string>());
}

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// Row-major array of rows of [re, im] pairs. Full precision so gates round-trip.
template <Scalar T>
json matrix_to_json(const Matrix<T>& m) {
  const int digits = std::max(40, ScalarTraits<T>::kDigits10 + 4);
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& z = m(r, c);
      row.push_back(json::array({scalar_to_json(z.re, digits), scalar_to_json(z.im, digits)}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar T>
Matrix<T> matrix_from_json(const json& j) {
  require(j.is_array() && !j.empty(), "matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  require(j[0].is_array() && !j[0].empty(), "matrix rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  Matrix<T> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    require(j[r].is_array() && j[r].size() == cols, "matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      if (e.is_array()) {
        require(e.size() == 2, "matrix entries must be [re, im] pairs");
        m(r, c) = Complex<T>(scalar_from_json<T>(e[0]), scalar_from_json<T>(e[1]));
      } else {
        m(r, c) = Complex<T>(scalar_from_json<T>(e));
      }
    }
  }
  return m;
}

template <Scalar T>
json circuit_to_json(const Circuit<T>& c) {
  json gates = json::array();
  for (const auto& g : c.gates) gates.push_back(matrix_to_json(g));
  return {{"n", c.arch.n}, {"slots", c.arch.slots}, {"gates", gates}};
}

template <Scalar T>
Circuit<T> circuit_from_json(const json& j) {
  require(j.is_object(), "circuit must be a JSON object");
  for (const auto& [key, _] : j.items())
    require(key == "n" || key == "slots" || key == "gates", "unknown circuit key '" + key + "'");
  require(j.contains("n") && j.contains("slots"), "circuit needs 'n' and 'slots'");
  Circuit<T> c;
  c.arch = Architecture(j.at("n").get<int>(), j.at("slots").get<std::vector<std::vector<int>>>());
  c.arch.validate();
  if (j.contains("gates")) {
    for (const auto& g : j.at("gates")) c.gates.push_back(matrix_from_json<T>(g));
  }
  c.validate();
  return c;
}

inline json config_to_json(const ReductionConfig& cfg) {
  return {{"span", cfg.span},
          {"grid_size", cfg.grid_size},
          {"delta", cfg.delta},
          {"eta", cfg.eta},
          {"margin_beta", cfg.margin.beta},
          {"precision", cfg.precision.name()},
          {"transform", cfg.transform.is_cayley() ? "cayley" : "truncated-taylor"},
          {"taylor_order", cfg.transform.order},
          {"rescale_k", cfg.rescale_k},
          {"zeph_constant", cfg.bounds.zeph},
          {"budget", cfg.search.budget}};
}

/// {config, seed, grid: [(theta, oracle_value, Q, y, flag)], estimate, truth,
/// achieved_error, a_priori_bound, certificate_size, ...}.
template <Scalar T>
json report_to_json(const ReductionReport<T>& rep, const ReductionConfig& cfg) {
  json grid = json::array();
  const auto& s = rep.samples;
  for (std::size_t i = 0; i < s.theta.size(); ++i) {
    json row = json::array({scalar_to_json(s.theta[i]), scalar_to_json(s.prob[i]), scalar_to_json(s.q[i]),
                            scalar_to_json(s.y[i]), rep.corrupted[i]});
    if (!rep.truncation.empty()) row.push_back(rep.truncation[i]);
    grid.push_back(std::move(row));
  }
  json out = {{"config", config_to_json(cfg)},
              {"seed", rep.seed},
              {"noisy", rep.noisy},
              {"adversary", adversary_name(rep.adversary)},
              {"degree", rep.degree},
              {"grid_columns", rep.truncation.empty()
                                   ? json::array({"theta", "oracle_value", "Q", "y", "flag"})
                                   : json::array({"theta", "oracle_value", "Q", "y", "flag", "truncation"})},
              {"grid", grid},
              {"cap_K", scalar_to_json(s.cap_K)},
              {"eta_budget", rep.eta_budget},
              {"delta_effective", rep.delta_effective},
              {"estimate", scalar_to_json(rep.result.estimate)},
              {"truth", rep.truth ? scalar_to_json(*rep.truth) : json(nullptr)},
              {"achieved_error", finite_or_null(rep.achieved_error)},
              {"a_priori_bound", finite_or_null(rep.result.a_priori_bound)},
              {"zeph_constant", rep.result.zeph_constant},
              {"certificate_size", rep.result.certificate.subset.size()},
              {"certificate_stage", rep.result.certificate.stage},
              {"certificate_trial", rep.result.certificate.trial},
              {"certificate_residual", rep.result.achieved_residual},
              {"notes", rep.notes}};
  return out;
}

template <Scalar T>
json permanent_report_to_json(const PermanentReduction<T>& red, const Matrix<T>& x0, double truth) {
  return {{"x0", matrix_to_json(x0)},
          {"x1", matrix_to_json(red.x1)},
          {"degree", red.result.degree},
          {"grid_size", red.data.size()},
          {"span", num::to_double(red.data.span)},
          {"eta_budget", red.data.eta_budget},
          {"delta_effective", red.data.delta},
          {"estimate", scalar_to_json(red.result.estimate)},
          {"truth", truth},
          {"achieved_error", std::fabs(num::to_double(red.result.estimate) - truth)},
          {"a_priori_bound", finite_or_null(red.result.a_priori_bound)},
          {"certificate_size", red.result.certificate.subset.size()},
          {"certificate_stage", red.result.certificate.stage}};
}

inline json barrier_report_to_json(const BarrierReport& rep) {
  json pts = json::array();
  for (const auto& p : rep.average_case)
    pts.push_back({{"theta", p.theta},
                   {"mean_deviation", p.mean_deviation},
                   {"standard_error", p.standard_error},
                   {"max_deviation", p.max_deviation}});
  return {{"n", rep.n},
          {"t", rep.t},
          {"samples", rep.samples},
          {"factorial_squared", rep.factorial_squared},
          {"worst_case_deviation", rep.worst_case_deviation},
          {"average_case", pts}};
}

}  // namespace cayleylab::io

#endif  // CAYLEYLAB_IO_HPP
