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

#ifndef CAYLEYLAB_CIRCUITS_HPP
#define CAYLEYLAB_CIRCUITS_HPP

#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "cayleylab/cayley.hpp"
#include "cayleylab/errors.hpp"
#include "cayleylab/gates.hpp"
#include "cayleylab/numerics/linalg.hpp"

namespace cayleylab {

/// Ordered gate slots over n qubits. Within a slot the first listed qubit is
/// the most significant index of the gate matrix.
struct Architecture {
  int n = 0;
  std::vector<std::vector<int>> slots;

  Architecture() = default;
  Architecture(int qubits, std::vector<std::vector<int>> layout) : n(qubits), slots(std::move(layout)) {
    validate();
  }

  std::size_t m() const { return slots.size(); }

  std::size_t slot_dim(std::size_t i) const { return std::size_t{1} << slots[i].size(); }

  void validate() const {
    require(n >= 1, "architecture needs at least one qubit");
    require(!slots.empty(), "architecture needs at least one slot");
    for (const auto& s : slots) {
      require(!s.empty(), "empty gate slot");
      std::set<int> seen;
      for (int q : s) {
        require(q >= 0 && q < n, "slot qubit index out of range");
        require(seen.insert(q).second, "repeated qubit in slot");
      }
    }
  }

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

/// Alternating nearest-neighbour layers: odd layers pair (2k, 2k+1), even
/// layers pair (2k+1, 2k+2) (layers counted from 1).
inline Architecture brickwork(int n, int depth) {
  require(n >= 2, "brickwork needs n >= 2");
  require(depth >= 1, "brickwork needs depth >= 1");
  std::vector<std::vector<int>> slots;
  for (int layer = 1; layer <= depth; ++layer) {
    for (int a = (layer % 2 == 1) ? 0 : 1; a + 1 < n; a += 2) slots.push_back({a, a + 1});
  }
  if (slots.empty()) slots.push_back({0, 1});
  return {n, slots};
}

/// The first m slots of the brickwork pattern (as many layers as needed).
inline Architecture brickwork_with_gates(int n, std::size_t m) {
  require(m >= 1, "need at least one gate");
  Architecture full = brickwork(n, static_cast<int>(2 * m));
  full.slots.resize(m);
  return full;
}

template <Scalar T>
struct Circuit {
  Architecture arch;
  std::vector<Matrix<T>> gates;

  Circuit() = default;
  Circuit(Architecture a, std::vector<Matrix<T>> g) : arch(std::move(a)), gates(std::move(g)) { validate(); }

  void validate() const {
    arch.validate();
    require(gates.size() == arch.m(), "gate count does not match slot count");
    for (std::size_t i = 0; i < gates.size(); ++i) {
      require(gates[i].rows() == arch.slot_dim(i) && gates[i].cols() == arch.slot_dim(i),
              "gate dimension does not match slot arity");
    }
  }

  static Circuit identity(const Architecture& a) {
    std::vector<Matrix<T>> g;
    for (std::size_t i = 0; i < a.m(); ++i) g.push_back(Matrix<T>::identity(a.slot_dim(i)));
    return {a, std::move(g)};
  }
};

template <Scalar T>
Circuit<T> random_circuit(const Architecture& arch, SeededRng rng) {
  std::vector<Matrix<T>> g;
  for (std::size_t i = 0; i < arch.m(); ++i) {
    SeededRng r = rng.split(i);
    g.push_back(haar_unitary<T>(arch.slot_dim(i), r));
  }
  return {arch, std::move(g)};
}

template <Scalar T>
struct PadSeed {
  std::vector<Matrix<T>> pads;                   // H_i
  std::vector<SpectralDecomposition<T>> spectra;  // of each H_i
  std::vector<std::size_t> draws;                // Haar draws used per slot (>= 1)
  EigenMargin margin;

  /// All eigenphases, slot by slot.
  std::vector<T> phases() const {
    std::vector<T> out;
    for (const auto& s : spectra) out.insert(out.end(), s.phases.begin(), s.phases.end());
    return out;
  }
};

/// Haar pad for every slot, redrawn until its spectrum is margin-good.
/// Slot i uses stream i of `rng`, so the seed is reproducible slot by slot.
template <Scalar T>
PadSeed<T> one_time_pad(const Architecture& arch, const SeededRng& rng, const EigenMargin& margin,
                        std::size_t budget_per_slot = 1000) {
  PadSeed<T> seed;
  seed.margin = margin;
  for (std::size_t i = 0; i < arch.m(); ++i) {
    SeededRng r = rng.split(i);
    std::size_t draws = 0;
    for (;;) {
      if (draws == budget_per_slot) {
        fail(ErrorKind::kResampleBudgetExceeded, "no margin-good pad within the resample budget");
      }
      ++draws;
      Matrix<T> h = haar_unitary<T>(arch.slot_dim(i), r);
      SpectralDecomposition<T> sd = unitary_eigendecomposition(h);
      if (!margin_good(sd.phases, margin)) continue;
      seed.pads.push_back(std::move(h));
      seed.spectra.push_back(std::move(sd));
      seed.draws.push_back(draws);
      break;
    }
  }
  return seed;
}

template <Scalar T>
PadSeed<T> one_time_pad(const Circuit<T>& c0, const SeededRng& rng, const EigenMargin& margin,
                        std::size_t budget_per_slot = 1000) {
  return one_time_pad<T>(c0.arch, rng, margin, budget_per_slot);
}

/// C(theta): slot i holds H_i(theta) G_i, where H_i(theta) is built from the
/// cached spectrum of H_i. For the Cayley transform member(1) returns the base
/// gates themselves.
template <Scalar T>
struct PerturbedFamily {
  Circuit<T> base;
  PadSeed<T> seed;
  TransformKind transform;

  PerturbedFamily(Circuit<T> c0, PadSeed<T> s, TransformKind kind = TransformKind::cayley())
      : base(std::move(c0)), seed(std::move(s)), transform(kind) {
    require(seed.spectra.size() == base.arch.m(), "pad seed does not match the circuit");
  }

  Matrix<T> pad_at(std::size_t slot, const T& theta) const {
    if (transform.is_cayley()) return cayley_transform(seed.spectra[slot], theta);
    return truncated_taylor_transform(seed.spectra[slot], theta, transform.order).matrix;
  }

  /// Largest truncation estimate over the slots (0 for the Cayley transform).
  double truncation_estimate(const T& theta) const {
    if (transform.is_cayley()) return 0.0;
    double worst = 0.0;
    for (const auto& sd : seed.spectra)
      worst = std::max(worst, truncated_taylor_transform(sd, theta, transform.order).truncation_estimate);
    return worst;
  }

  Circuit<T> member(const T& theta) const {
    if (transform.is_cayley() && theta == T(1.0)) return base;
    std::vector<Matrix<T>> g;
    g.reserve(base.gates.size());
    for (std::size_t i = 0; i < base.gates.size(); ++i) g.push_back(pad_at(i, theta) * base.gates[i]);
    return {base.arch, std::move(g)};
  }
};

/// H^{n0} U_f H^{n0} with U_f = diag(f). Slots: n0 single-qubit Hadamards,
/// one n0-qubit diagonal slot, n0 Hadamards.
template <Scalar T>
Circuit<T> fourier_sampling_circuit(const std::vector<int>& truth_table) {
  const std::size_t len = truth_table.size();
  require(len >= 2 && (len & (len - 1)) == 0, "truth table length must be a power of two >= 2");
  int n0 = 0;
  while ((std::size_t{1} << n0) < len) ++n0;
  require(n0 <= 6, "fourier sampling circuits support n0 <= 6");
  Matrix<T> uf(len, len);
  for (std::size_t x = 0; x < len; ++x) {
    require(truth_table[x] == 1 || truth_table[x] == -1, "truth table entries must be +-1");
    uf(x, x) = Complex<T>(static_cast<double>(truth_table[x]));
  }
  std::vector<std::vector<int>> slots;
  std::vector<Matrix<T>> g;
  std::vector<int> all;
  for (int q = 0; q < n0; ++q) {
    slots.push_back({q});
    g.push_back(gates::hadamard<T>());
    all.push_back(q);
  }
  slots.push_back(all);
  g.push_back(uf);
  for (int q = 0; q < n0; ++q) {
    slots.push_back({q});
    g.push_back(gates::hadamard<T>());
  }
  return {Architecture(n0, slots), std::move(g)};
}

/// Two-qubit Fourier sampling circuit on the brickwork architecture with
/// n = 2, m = 2: slot 0 holds U_f (H x H), slot 1 holds H x H.
template <Scalar T>
Circuit<T> fourier_sampling_brickwork(const std::vector<int>& truth_table) {
  require(truth_table.size() == 4, "brickwork embedding expects a 2-qubit truth table");
  Matrix<T> uf(4, 4);
  for (std::size_t x = 0; x < 4; ++x) {
    require(truth_table[x] == 1 || truth_table[x] == -1, "truth table entries must be +-1");
    uf(x, x) = Complex<T>(static_cast<double>(truth_table[x]));
  }
  // H x H has entries +-1/2, which are exact in binary.
  Matrix<T> hh(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) hh(r, c) = Complex<T>(std::popcount(r & c) % 2 == 0 ? 0.5 : -0.5);
  return {brickwork_with_gates(2, 2), {uf * hh, hh}};
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_CIRCUITS_HPP
