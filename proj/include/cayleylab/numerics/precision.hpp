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

#ifndef CAYLEYLAB_NUMERICS_PRECISION_HPP
#define CAYLEYLAB_NUMERICS_PRECISION_HPP

#include <string>
#include <string_view>
#include <utility>

#include "cayleylab/errors.hpp"
#include "cayleylab/numerics/scalar.hpp"

namespace cayleylab {

enum class PrecisionMode { kNativeDouble, kDoubleDouble, kQuadDouble };

struct PrecisionConfig {
  PrecisionMode mode = PrecisionMode::kDoubleDouble;

  double epsilon() const {
    switch (mode) {
      case PrecisionMode::kNativeDouble: return ScalarTraits<double>::epsilon();
      case PrecisionMode::kDoubleDouble: return ScalarTraits<DoubleDouble>::epsilon();
      case PrecisionMode::kQuadDouble: return ScalarTraits<QuadDouble>::epsilon();
    }
    return 0.0;
  }

  int digits10() const {
    return mode == PrecisionMode::kNativeDouble ? 17 : (mode == PrecisionMode::kDoubleDouble ? 35 : 66);
  }

  std::string name() const {
    switch (mode) {
      case PrecisionMode::kNativeDouble: return ScalarTraits<double>::kName;
      case PrecisionMode::kDoubleDouble: return ScalarTraits<DoubleDouble>::kName;
      case PrecisionMode::kQuadDouble: return ScalarTraits<QuadDouble>::kName;
    }
    return "";
  }

  static PrecisionConfig parse(std::string_view text) {
    if (text == "native-double" || text == "double") return {PrecisionMode::kNativeDouble};
    if (text == "double-double") return {PrecisionMode::kDoubleDouble};
    if (text == "quad-double") return {PrecisionMode::kQuadDouble};
    fail(ErrorKind::kValidation, "unknown precision mode '" + std::string(text) + "'");
  }

  template <Scalar T>
  static PrecisionConfig of() {
    if constexpr (std::is_same_v<T, double>) return {PrecisionMode::kNativeDouble};
    else if constexpr (std::is_same_v<T, DoubleDouble>) return {PrecisionMode::kDoubleDouble};
    else return {PrecisionMode::kQuadDouble};
  }
};

/// Calls fn.template operator()<T>() with T matching the runtime mode.
template <typename Fn>
decltype(auto) dispatch_precision(const PrecisionConfig& cfg, Fn&& fn) {
  switch (cfg.mode) {
    case PrecisionMode::kNativeDouble: return std::forward<Fn>(fn).template operator()<double>();
    case PrecisionMode::kDoubleDouble: return std::forward<Fn>(fn).template operator()<DoubleDouble>();
    case PrecisionMode::kQuadDouble: break;
  }
  return std::forward<Fn>(fn).template operator()<QuadDouble>();
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_NUMERICS_PRECISION_HPP
