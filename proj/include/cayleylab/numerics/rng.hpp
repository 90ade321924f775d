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

#ifndef CAYLEYLAB_NUMERICS_RNG_HPP
#define CAYLEYLAB_NUMERICS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace cayleylab {

namespace detail {

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based generator: draw k of stream s under seed S is a pure
/// function of (S, s, k). Copies are independent cursors into the same stream.
class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), key_(derive_key(seed, stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t position() const { return counter_; }

  /// Child stream; keyed on the parent's key so nested splits do not collide.
  SeededRng split(std::uint64_t child) const {
    SeededRng out(seed_, stream_);
    out.key_ = detail::mix64(key_ ^ detail::mix64(child + 0x632be59bd9b4e019ULL));
    out.stream_ = child;
    return out;
  }

  std::uint64_t at(std::uint64_t counter) const {
    return detail::mix64(key_ + detail::mix64(counter * 0x9e3779b97f4a7c15ULL + 0x7f4a7c159e3779b9ULL));
  }

  std::uint64_t next() { return at(counter_++); }
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % n;
  }

  /// Standard normal (Box-Muller, both variates used).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    return detail::mix64(detail::mix64(seed ^ 0xd1b54a32d192ed03ULL) + detail::mix64(stream ^ 0xa0761d6478bd642fULL));
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cayleylab

#endif  // CAYLEYLAB_NUMERICS_RNG_HPP
