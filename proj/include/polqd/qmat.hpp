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

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polqd {

using Complex = std::complex<double>;

/// Dense square operator on N two-level sites (dimension 2^N).
///
/// Site 1 is the leftmost (slowest-varying) tensor factor. Per site the
/// basis is ordered (E, G), so |E...E> is index 0 and |G...G> is index 2^N-1.
using Operator = Eigen::MatrixXcd;

/// Invalid input to a kernel operation (bad site index, non-Hermitian
/// matrix, state outside tolerance, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tolerances a matrix must meet to be accepted as a density matrix.
struct StateTolerance {
  double hermiticity = 1e-10;     // max |rho - rho^dagger| entry
  double trace = 1e-10;           // |Tr rho - 1|
  double min_eigenvalue = -1e-8;  // smallest eigenvalue allowed
};

/// Hermitian, positive-semidefinite, unit-trace operator.
///
/// The constructor validates against a StateTolerance and throws DomainError
/// on failure. Instances are immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator m, const StateTolerance& tol = {});

  const Operator& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  int n_sites() const { return n_sites_; }

 private:
  Operator m_;
  int n_sites_;
};

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Operator eigenvectors;  // columns
};

/// Number of sites for a 2^N dimensional operator; throws unless `dim` is a
/// positive power of two.
int sites_for_dimension(Eigen::Index dim);

/// Largest absolute entry.
double max_abs(const Operator& m);

/// Kronecker product a (x) b with `a` as the slow index.
Operator tensor_product(const Operator& a, const Operator& b);

/// Left-to-right Kronecker product of all factors.
Operator tensor_product(std::span<const Operator> factors);

/// Embeds a single-site 2x2 operator at `site` (1-based) in an N-site space.
Operator embed_site_operator(const Operator& op, int site, int n_sites);

/// Reduced operator on the sites listed in `keep` (1-based). The output
/// tensor factors follow the order given in `keep`.
Operator partial_trace(const Operator& m, int n_sites, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Throws DomainError if `m` deviates from Hermiticity by more than 1e-9.
Spectrum hermitian_eig(const Operator& m);

/// Shannon entropy in bits. Entries at or below 1e-12 contribute zero;
/// entries in [-1e-8, 0) are clamped, anything more negative is rejected.
double shannon_entropy(std::span<const double> probabilities);

/// von Neumann entropy -Tr(rho log2 rho) in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho || sigma) = Tr(rho log2 rho - rho log2 sigma) in bits.
///
/// Returns +infinity when rho has weight >= 1e-10 on an eigenspace of sigma
/// whose eigenvalue is below 1e-12.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Hermitian part (m + m^dagger) / 2.
Operator hermitize(const Operator& m);

}  // namespace polqd
