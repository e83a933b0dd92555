// Copyright 2026 The polqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random generators shared by the property-style tests.

#pragma once

#include <random>

#include "polqd/qmat.hpp"

namespace polqd::testing {

inline Operator random_matrix(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

inline Operator random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  return hermitize(random_matrix(rng, dim));
}

inline Operator random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  Eigen::HouseholderQR<Operator> qr(random_matrix(rng, dim));
  return qr.householderQ() * Operator::Identity(dim, dim);
}

/// Full-rank mixed state G G^dagger / Tr.
inline DensityMatrix random_state(std::mt19937_64& rng, int n_sites) {
  const Operator g = random_matrix(rng, Eigen::Index{1} << n_sites);
  Operator rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(hermitize(rho));
}

/// Random pure state projector.
inline DensityMatrix random_pure_state(std::mt19937_64& rng, int n_sites) {
  const Operator u = random_unitary(rng, Eigen::Index{1} << n_sites);
  const Eigen::VectorXcd psi = u.col(0);
  return DensityMatrix(psi * psi.adjoint());
}

inline Operator pauli_x() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

inline Operator pauli_z() {
  Operator m = Operator::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

inline Operator diag(std::initializer_list<double> d) {
  Operator m = Operator::Zero(static_cast<Eigen::Index>(d.size()),
                              static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

}  // namespace polqd::testing
