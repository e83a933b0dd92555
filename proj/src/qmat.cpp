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

#include "polqd/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polqd {

namespace {

constexpr double kZeroEigenvalue = 1e-12;
constexpr double kNegativeClamp = -1e-8;
constexpr double kHermitianInput = 1e-9;
constexpr double kSupportWeight = 1e-10;

double xlog2x(double p) {
  if (p < kNegativeClamp) {
    throw DomainError("negative eigenvalue " + std::to_string(p) +
                      " below clamping window");
  }
  if (p <= kZeroEigenvalue) return 0.0;
  return p * std::log2(p);
}

}  // namespace

DensityMatrix::DensityMatrix(Operator m, const StateTolerance& tol)
    : m_(std::move(m)), n_sites_(0) {
  if (m_.rows() != m_.cols()) throw DomainError("density matrix must be square");
  n_sites_ = sites_for_dimension(m_.rows());

  const double herm = max_abs(m_ - m_.adjoint());
  if (herm > tol.hermiticity) {
    throw DomainError("density matrix not Hermitian (deviation " +
                      std::to_string(herm) + ")");
  }
  const double trace_err = std::abs(m_.trace() - Complex(1.0, 0.0));
  if (trace_err > tol.trace) {
    throw DomainError("density matrix trace deviates from 1 by " +
                      std::to_string(trace_err));
  }
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(m_), Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < tol.min_eigenvalue) {
    throw DomainError("density matrix has eigenvalue " + std::to_string(min_ev));
  }
}

int sites_for_dimension(Eigen::Index dim) {
  if (dim < 2) throw DomainError("operator dimension must be at least 2");
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0) throw DomainError("operator dimension is not a power of two");
    d /= 2;
    ++n;
  }
  return n;
}

double max_abs(const Operator& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Operator tensor_product(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator tensor_product(std::span<const Operator> factors) {
  if (factors.empty()) return Operator::Identity(1, 1);
  Operator out = factors.front();
  for (const auto& f : factors.subspan(1)) out = tensor_product(out, f);
  return out;
}

Operator embed_site_operator(const Operator& op, int site, int n_sites) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw DomainError("site operator must be 2x2");
  }
  if (site < 1 || site > n_sites) {
    throw DomainError("site " + std::to_string(site) + " out of range 1.." +
                      std::to_string(n_sites));
  }
  std::vector<Operator> factors(n_sites, Operator::Identity(2, 2));
  factors[site - 1] = op;
  return tensor_product(factors);
}

Operator partial_trace(const Operator& m, int n_sites, std::span<const int> keep) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  if (m.rows() != dim || m.cols() != dim) {
    throw DomainError("operator dimension does not match site count");
  }
  std::vector<bool> kept(n_sites + 1, false);
  for (int s : keep) {
    if (s < 1 || s > n_sites) {
      throw DomainError("site " + std::to_string(s) + " out of range 1.." +
                        std::to_string(n_sites));
    }
    if (kept[s]) throw DomainError("duplicate site " + std::to_string(s));
    kept[s] = true;
  }

  const int n_keep = static_cast<int>(keep.size());
  auto bit = [n_sites](Eigen::Index i, int site) {
    return (i >> (n_sites - site)) & 1;
  };
  std::vector<Eigen::Index> reduced(dim), rest(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index r = 0;
    for (int k = 0; k < n_keep; ++k) r |= bit(i, keep[k]) << (n_keep - 1 - k);
    Eigen::Index t = 0;
    for (int s = 1; s <= n_sites; ++s) {
      if (!kept[s]) t = (t << 1) | bit(i, s);
    }
    reduced[i] = r;
    rest[i] = t;
  }

  const Eigen::Index out_dim = Eigen::Index{1} << n_keep;
  Operator out = Operator::Zero(out_dim, out_dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (rest[i] == rest[j]) out(reduced[i], reduced[j]) += m(i, j);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  if (keep.empty()) throw DomainError("partial trace must keep at least one site");
  StateTolerance loose;
  loose.hermiticity = 1e-9;
  loose.trace = 1e-9;
  return DensityMatrix(partial_trace(rho.matrix(), rho.n_sites(), keep), loose);
}

Spectrum hermitian_eig(const Operator& m) {
  if (m.rows() != m.cols()) throw DomainError("matrix must be square");
  const double herm = max_abs(m - m.adjoint());
  if (herm > kHermitianInput) {
    throw DomainError("matrix not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(m));
  if (es.info() != Eigen::Success) throw DomainError("eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) s -= xlog2x(p);
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Spectrum sp = hermitian_eig(rho.matrix());
  const auto& ev = sp.eigenvalues;
  return std::max(0.0, shannon_entropy(std::span<const double>(ev.data(), ev.size())));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("relative entropy dimension mismatch");

  const Spectrum sp_sigma = hermitian_eig(sigma.matrix());
  const Operator rho_in_sigma =
      sp_sigma.eigenvectors.adjoint() * rho.matrix() * sp_sigma.eigenvectors;

  double cross = 0.0;  // Tr(rho log2 sigma)
  for (Eigen::Index k = 0; k < sigma.dim(); ++k) {
    const double mu = sp_sigma.eigenvalues(k);
    const double weight = rho_in_sigma(k, k).real();
    if (mu <= kZeroEigenvalue) {
      if (mu < kNegativeClamp) {
        throw DomainError("sigma has eigenvalue " + std::to_string(mu));
      }
      if (weight >= kSupportWeight) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log2(mu);
  }
  return -von_neumann_entropy(rho) - cross;
}

Operator hermitize(const Operator& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace polqd
