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

#ifndef CAYLEYLAB_SIMULATOR_HPP
#define CAYLEYLAB_SIMULATOR_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "cayleylab/circuits.hpp"
#include "cayleylab/errors.hpp"
#include "cayleylab/gates.hpp"

namespace cayleylab {

inline constexpr int kMaxStatevectorQubits = 12;
inline constexpr int kMaxDensityQubits = 8;
inline constexpr std::uint64_t kMaxTrajectories = 1000000;

namespace detail {

// Applies the k-qubit gate u to the given qubits of a register of `width`
// qubits (qubit 0 is the most significant bit of the index).
template <Scalar T>
void apply_gate(std::vector<Complex<T>>& amps, int width, const std::vector<int>& qubits, const Matrix<T>& u) {
  const std::size_t k = qubits.size();
  const std::size_t dim = std::size_t{1} << k;
  std::vector<std::size_t> masks(k);
  std::size_t all = 0;
  for (std::size_t j = 0; j < k; ++j) {
    masks[j] = std::size_t{1} << (width - 1 - qubits[j]);
    all |= masks[j];
  }
  std::vector<std::size_t> offsets(dim, 0);
  for (std::size_t local = 0; local < dim; ++local)
    for (std::size_t j = 0; j < k; ++j)
      if (local & (std::size_t{1} << (k - 1 - j))) offsets[local] |= masks[j];
  std::vector<Complex<T>> in(dim);
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (base & all) continue;
    for (std::size_t a = 0; a < dim; ++a) in[a] = amps[base | offsets[a]];
    for (std::size_t r = 0; r < dim; ++r) {
      Complex<T> acc;
      for (std::size_t c = 0; c < dim; ++c) acc += u(r, c) * in[c];
      amps[base | offsets[r]] = acc;
    }
  }
}

}  // namespace detail

/// Statevector on n qubits starting from |0...0>.
template <Scalar T>
std::vector<Complex<T>> simulate(const Circuit<T>& c) {
  if (c.arch.n > kMaxStatevectorQubits) fail(ErrorKind::kTooLarge, "statevector limited to 12 qubits");
  std::vector<Complex<T>> amps(std::size_t{1} << c.arch.n);
  amps[0] = Complex<T>(1.0);
  for (std::size_t i = 0; i < c.arch.m(); ++i) detail::apply_gate(amps, c.arch.n, c.arch.slots[i], c.gates[i]);
  return amps;
}

template <Scalar T>
Complex<T> output_amplitude(const Circuit<T>& c) {
  return simulate(c)[0];
}

/// Pr[0^n](C) = |<0^n|C|0^n>|^2.
template <Scalar T>
T output_prob(const Circuit<T>& c) {
  return norm(output_amplitude(c));
}

/// Dense 2^n x 2^n unitary of the whole circuit (oracle for small n).
template <Scalar T>
Matrix<T> circuit_unitary(const Circuit<T>& c) {
  if (c.arch.n > 8) fail(ErrorKind::kTooLarge, "dense circuit unitary limited to 8 qubits");
  const std::size_t dim = std::size_t{1} << c.arch.n;
  Matrix<T> out(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<Complex<T>> amps(dim);
    amps[col] = Complex<T>(1.0);
    for (std::size_t i = 0; i < c.arch.m(); ++i) detail::apply_gate(amps, c.arch.n, c.arch.slots[i], c.gates[i]);
    for (std::size_t r = 0; r < dim; ++r) out(r, col) = amps[r];
  }
  return out;
}

enum class ChannelKind { kDepolarizing1q, kDepolarizing2q, kCustom };

template <Scalar T>
struct Channel {
  std::size_t after_slot = 0;
  std::vector<int> qubits;
  std::vector<Matrix<T>> kraus;
  double gamma = 0.0;
  ChannelKind kind = ChannelKind::kCustom;

  /// max |sum K^dagger K - I|.
  double completeness_defect() const {
    const std::size_t dim = std::size_t{1} << qubits.size();
    Matrix<T> acc(dim, dim);
    for (const auto& k : kraus) acc = acc + k.adjoint() * k;
    return max_abs_diff(acc, Matrix<T>::identity(dim));
  }
};

template <Scalar T>
struct NoiseModel {
  std::vector<Channel<T>> channels;

  void validate(const Architecture& arch) const {
    for (const auto& ch : channels) {
      require(ch.after_slot < arch.m(), "channel placed after a nonexistent slot");
      require(!ch.qubits.empty() && !ch.kraus.empty(), "channel needs qubits and Kraus operators");
      for (int q : ch.qubits) require(q >= 0 && q < arch.n, "channel qubit out of range");
      for (const auto& k : ch.kraus)
        require(k.rows() == (std::size_t{1} << ch.qubits.size()) && k.square(), "Kraus operator has wrong dimension");
      require(ch.completeness_defect() <= 1e-12, "Kraus operators are not complete");
    }
  }

  /// Total number of Kraus-index assignments (saturating).
  std::uint64_t trajectory_count() const {
    std::uint64_t total = 1;
    for (const auto& ch : channels) {
      const std::uint64_t k = ch.kraus.size();
      if (total > kMaxTrajectories * 16 / k) return kMaxTrajectories * 16;
      total *= k;
    }
    return total;
  }
};

/// {sqrt(1 - 3g/4) I, sqrt(g/4) X, Y, Z}: rho -> (1 - g) rho + g I/2.
template <Scalar T>
Channel<T> depolarizing_1q(double gamma, int qubit, std::size_t after_slot) {
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must be in [0, 1]");
  const auto p = gates::paulis<T>();
  const T w0 = num::sqrt(T(1.0) - T(0.75) * T(gamma));
  const T w = num::sqrt(T(gamma) / T(4.0));
  Channel<T> ch{after_slot, {qubit}, {}, gamma, ChannelKind::kDepolarizing1q};
  ch.kraus.push_back(Complex<T>(w0) * p[0]);
  for (int j = 1; j < 4; ++j) ch.kraus.push_back(Complex<T>(w) * p[j]);
  return ch;
}

/// {sqrt(1 - g) I x I, sqrt(g/15) P} over the 15 nontrivial two-qubit Paulis.
template <Scalar T>
Channel<T> depolarizing_2q(double gamma, int q0, int q1, std::size_t after_slot) {
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must be in [0, 1]");
  const auto p = gates::paulis<T>();
  const T w0 = num::sqrt(T(1.0) - T(gamma));
  const T w = num::sqrt(T(gamma) / T(15.0));
  Channel<T> ch{after_slot, {q0, q1}, {}, gamma, ChannelKind::kDepolarizing2q};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) ch.kraus.push_back(Complex<T>(a == 0 && b == 0 ? w0 : w) * kron(p[a], p[b]));
  return ch;
}

enum class NoiseArity { kOneQubit, kTwoQubit };

/// One channel after every slot: a two-qubit channel on two-qubit slots when
/// `arity` is kTwoQubit, otherwise a single-qubit channel on each slot qubit.
/// Depends on the architecture only, never on the gates.
template <Scalar T>
NoiseModel<T> depolarizing_model(const Architecture& arch, double gamma, NoiseArity arity) {
  NoiseModel<T> model;
  for (std::size_t i = 0; i < arch.m(); ++i) {
    const auto& s = arch.slots[i];
    if (arity == NoiseArity::kTwoQubit && s.size() == 2) {
      model.channels.push_back(depolarizing_2q<T>(gamma, s[0], s[1], i));
    } else {
      for (int q : s) model.channels.push_back(depolarizing_1q<T>(gamma, q, i));
    }
  }
  return model;
}

/// Dense density matrix; entry (r, c) lives at index r * 2^n + c, so the row
/// index behaves as qubits 0..n-1 and the column index as qubits n..2n-1 of
/// a 2n-qubit vector.
template <Scalar T>
struct DensityMatrix {
  int n = 0;
  std::vector<Complex<T>> data;

  static DensityMatrix zero_state(int qubits) {
    DensityMatrix rho{qubits, std::vector<Complex<T>>(std::size_t{1} << (2 * qubits))};
    rho.data[0] = Complex<T>(1.0);
    return rho;
  }

  std::size_t dim() const { return std::size_t{1} << n; }
  const Complex<T>& operator()(std::size_t r, std::size_t c) const { return data[r * dim() + c]; }

  void apply_unitary(const std::vector<int>& qubits, const Matrix<T>& u) {
    detail::apply_gate(data, 2 * n, qubits, u);
    std::vector<int> cols;
    for (int q : qubits) cols.push_back(q + n);
    detail::apply_gate(data, 2 * n, cols, u.conjugate());
  }

  void apply_channel(const Channel<T>& ch) {
    std::vector<Complex<T>> acc(data.size());
    std::vector<int> cols;
    for (int q : ch.qubits) cols.push_back(q + n);
    for (const auto& k : ch.kraus) {
      std::vector<Complex<T>> term = data;
      detail::apply_gate(term, 2 * n, ch.qubits, k);
      detail::apply_gate(term, 2 * n, cols, k.conjugate());
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
    }
    data = std::move(acc);
  }

  T trace() const {
    T t(0.0);
    for (std::size_t i = 0; i < dim(); ++i) t += (*this)(i, i).re;
    return t;
  }

  std::vector<T> diagonal() const {
    std::vector<T> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = (*this)(i, i).re;
    return out;
  }

  Matrix<T> to_matrix() const { return Matrix<T>(dim(), dim(), data); }
};

template <Scalar T>
DensityMatrix<T> evolve_density(const Circuit<T>& c, const NoiseModel<T>& noise) {
  if (c.arch.n > kMaxDensityQubits) fail(ErrorKind::kTooLarge, "density matrix limited to 8 qubits");
  noise.validate(c.arch);
  auto rho = DensityMatrix<T>::zero_state(c.arch.n);
  for (std::size_t i = 0; i < c.arch.m(); ++i) {
    rho.apply_unitary(c.arch.slots[i], c.gates[i]);
    for (const auto& ch : noise.channels)
      if (ch.after_slot == i) rho.apply_channel(ch);
  }
  return rho;
}

/// Tr[|0^n><0^n| C_N(|0^n><0^n|)].
template <Scalar T>
T noisy_output_prob(const Circuit<T>& c, const NoiseModel<T>& noise) {
  return evolve_density(c, noise)(0, 0).re;
}

template <Scalar T>
std::vector<T> noisy_output_distribution(const Circuit<T>& c, const NoiseModel<T>& noise) {
  return evolve_density(c, noise).diagonal();
}

struct Trajectory {
  std::vector<std::size_t> kraus_index;  // one per channel, in model order
  double weight = 0.0;                   // prod_k Tr(K^dagger K) / dim
};

/// Every Kraus-index assignment with its state-independent weight.
template <Scalar T>
std::vector<Trajectory> enumerate_trajectories(const NoiseModel<T>& noise) {
  if (noise.trajectory_count() > kMaxTrajectories) fail(ErrorKind::kTooManyTrajectories, "over 1e6 trajectories");
  std::vector<std::vector<double>> w;
  for (const auto& ch : noise.channels) {
    std::vector<double> wk;
    for (const auto& k : ch.kraus) {
      T tr(0.0);
      for (const auto& z : k.data()) tr += norm(z);
      wk.push_back(num::to_double(tr) / static_cast<double>(k.rows()));
    }
    w.push_back(std::move(wk));
  }
  std::vector<Trajectory> out;
  Trajectory cur;
  cur.kraus_index.assign(noise.channels.size(), 0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t ch, double weight) {
    if (ch == noise.channels.size()) {
      cur.weight = weight;
      out.push_back(cur);
      return;
    }
    for (std::size_t k = 0; k < w[ch].size(); ++k) {
      cur.kraus_index[ch] = k;
      rec(ch + 1, weight * w[ch][k]);
    }
  };
  rec(0, 1.0);
  return out;
}

/// sum over trajectories of |<0^n| C_xi |0^n>|^2, where C_xi has the chosen
/// (unnormalized) Kraus operator inserted at each channel. For Pauli channels
/// this is E_xi[Pr[0^n](C_xi)] with C_xi unitary.
template <Scalar T>
T trajectory_average(const Circuit<T>& c, const NoiseModel<T>& noise) {
  if (c.arch.n > kMaxStatevectorQubits) fail(ErrorKind::kTooLarge, "statevector limited to 12 qubits");
  noise.validate(c.arch);
  if (noise.trajectory_count() > kMaxTrajectories) fail(ErrorKind::kTooManyTrajectories, "over 1e6 trajectories");
  // Operation list: gate i, then the channels placed after slot i.
  struct Op {
    bool is_gate;
    std::size_t index;
  };
  std::vector<Op> ops;
  for (std::size_t i = 0; i < c.arch.m(); ++i) {
    ops.push_back({true, i});
    for (std::size_t k = 0; k < noise.channels.size(); ++k)
      if (noise.channels[k].after_slot == i) ops.push_back({false, k});
  }
  std::vector<Complex<T>> start(std::size_t{1} << c.arch.n);
  start[0] = Complex<T>(1.0);
  T total(0.0);
  std::function<void(std::size_t, std::vector<Complex<T>>)> rec = [&](std::size_t pos, std::vector<Complex<T>> amps) {
    for (; pos < ops.size() && ops[pos].is_gate; ++pos) {
      const std::size_t i = ops[pos].index;
      detail::apply_gate(amps, c.arch.n, c.arch.slots[i], c.gates[i]);
    }
    if (pos == ops.size()) {
      total += norm(amps[0]);
      return;
    }
    const auto& ch = noise.channels[ops[pos].index];
    for (const auto& k : ch.kraus) {
      std::vector<Complex<T>> branch = amps;
      detail::apply_gate(branch, c.arch.n, ch.qubits, k);
      rec(pos + 1, std::move(branch));
    }
  };
  rec(0, std::move(start));
  return total;
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_SIMULATOR_HPP
