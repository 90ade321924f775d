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

#ifndef CAYLEYLAB_GATES_HPP
#define CAYLEYLAB_GATES_HPP

#include "cayleylab/numerics/matrix.hpp"

namespace cayleylab::gates {

template <Scalar T>
Matrix<T> hadamard() {
  const T s = num::sqrt(T(0.5));
  return Matrix<T>(2, 2, {Complex<T>(s), Complex<T>(s), Complex<T>(s), Complex<T>(-s)});
}

template <Scalar T>
Matrix<T> pauli_x() {
  return Matrix<T>(2, 2, {Complex<T>(), Complex<T>(1.0), Complex<T>(1.0), Complex<T>()});
}

template <Scalar T>
Matrix<T> pauli_y() {
  return Matrix<T>(2, 2,
                   {Complex<T>(), Complex<T>(T(0.0), T(-1.0)), Complex<T>(T(0.0), T(1.0)), Complex<T>()});
}

template <Scalar T>
Matrix<T> pauli_z() {
  return Matrix<T>(2, 2, {Complex<T>(1.0), Complex<T>(), Complex<T>(), Complex<T>(-1.0)});
}

/// I, X, Y, Z in that order.
template <Scalar T>
std::vector<Matrix<T>> paulis() {
  return {Matrix<T>::identity(2), pauli_x<T>(), pauli_y<T>(), pauli_z<T>()};
}

}  // namespace cayleylab::gates

#endif  // CAYLEYLAB_GATES_HPP
