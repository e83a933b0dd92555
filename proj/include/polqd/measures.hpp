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

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "polqd/qmat.hpp"

namespace polqd {

/// Bloch angles of the "+" outcome of a local two-outcome measurement:
/// |v> = (cos(theta/2), e^{i phi} sin(theta/2)) in the (E, G) basis.
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// One pair of Bloch angles per site; site 1 first.
struct MeasurementBasis {
  std::vector<BlochAngles> angles;

  int n_sites() const { return static_cast<int>(angles.size()); }

  /// Every site measured in the (E, G) basis.
  static MeasurementBasis computational(int n_sites);

  /// Folds each pair into theta in [0, pi], phi in [0, 2pi) without changing
  /// the projector set.
  MeasurementBasis canonical() const;
};

struct ProjectorPair {
  Operator plus;
  Operator minus;
};

/// Rank-1 projectors |v><v| and I - |v><v| for the given angles.
ProjectorPair local_projectors(double theta, double phi);

/// Unitary whose columns are the measurement eigenvectors (v_+, v_-) of all
/// sites, tensored in site order.
Operator measurement_unitary(const MeasurementBasis& basis);

/// Phi(rho) = sum_k Pi_k rho Pi_k over all product outcomes k.
DensityMatrix dephase(const DensityMatrix& rho, const MeasurementBasis& basis);

/// Split of the sites of a state into two non-empty groups (1-based).
struct Bipartition {
  std::vector<int> a;
  std::vector<int> b;
};

/// I = S(rho_A) + S(rho_B) - S(rho_AB) in bits.
double mutual_information(const DensityMatrix& rho, const Bipartition& cut);

/// Settings for the multi-start simplex search over measurement angles.
struct OptimizationConfig {
  int n_starts = 24;
  int grid_resolution = 8;
  int max_iterations = 2000;
  double f_tol = 1e-7;
  std::uint64_t seed = 20130501;

  void validate() const;
};

struct CorrelationReport {
  double value = 0.0;  // bits, clamped at zero
  MeasurementBasis optimal_basis;
  int starts_agreeing = 0;  // converged starts within 1e-5 of the best
  int starts_failed = 0;    // starts that hit max_iterations
};

enum class MeasuredSide { first, second };

/// Quantum discord of a two-site state with the projective measurement on
/// `side`. The conditional entropy skips outcomes with probability < 1e-12.
CorrelationReport qd_asymmetric(const DensityMatrix& rho_ab,
                                MeasuredSide side = MeasuredSide::second,
                                const OptimizationConfig& opt = {});

/// S(rho || Phi(rho)) - sum_j S(rho_j || Phi_j(rho_j)), evaluated with
/// relative entropies. This is the reference route for the GQD objective.
double gqd_objective(const DensityMatrix& rho, const MeasurementBasis& basis);

/// Fast evaluation of the GQD objective for a fixed state.
///
/// In the measurement basis Phi(rho) is diagonal with the outcome
/// distribution p, so S(rho || Phi(rho)) = H(p) - S(rho), and each local term
/// is H(p_j) - S(rho_j) with p_j the marginal of p. The state entropies are
/// computed once.
class GqdEvaluator {
 public:
  explicit GqdEvaluator(const DensityMatrix& rho);

  int n_sites() const { return n_sites_; }
  double operator()(const MeasurementBasis& basis) const;
  /// Angles flattened as (theta_1, phi_1, theta_2, phi_2, ...).
  double operator()(std::span<const double> angles) const;

 private:
  Operator rho_;
  int n_sites_;
  double entropy_offset_;  // S(rho) - sum_j S(rho_j)
};

/// Global quantum discord: minimum of the objective over local projective
/// measurements, by multi-start simplex descent over 2N angles.
///
/// Start 0 is the computational basis, start 1 the sigma_x basis on every
/// site; the rest sample a Latin-hypercube of the angle grid with uniform
/// jitter. Deterministic for a given seed. `value` is gqd_objective at the
/// reported basis, clamped at zero.
CorrelationReport minimize_gqd(const DensityMatrix& rho, const OptimizationConfig& opt = {});

/// GQD of the two-site reduced state on `sites` (1-based, distinct).
CorrelationReport bipartite_gqd(const DensityMatrix& rho, std::pair<int, int> sites,
                                const OptimizationConfig& opt = {});

struct ResidualDiscords {
  double d_r1;  // GQD_123 - GQD_12 - GQD_13
  double d_r2;  // GQD_123 - GQD_12 - GQD_23
  double d_r3;  // GQD_123 - 2/3 (GQD_12 + GQD_13 + GQD_23)
};

/// Whole-state and pairwise GQDs of a three-site state.
struct TripartiteCorrelations {
  CorrelationReport gqd_123;
  CorrelationReport gqd_12;
  CorrelationReport gqd_13;
  CorrelationReport gqd_23;

  /// GQD_123 minus all pairwise GQDs. Not clamped.
  double mgqd() const;
  ResidualDiscords residuals() const;
};

TripartiteCorrelations tripartite_correlations(const DensityMatrix& rho,
                                               const OptimizationConfig& opt = {});

double mgqd(const DensityMatrix& rho, const OptimizationConfig& opt = {});
ResidualDiscords residual_discords(const DensityMatrix& rho, const OptimizationConfig& opt = {});

/// Two-qubit Bell-diagonal state (I + sum_i c_i sigma_i (x) sigma_i) / 4.
/// Throws DomainError if any Bell weight is negative.
Operator bell_diagonal_state(double c1, double c2, double c3);

/// Closed-form discord of a Bell-diagonal state: I - C with
/// C = ((1-c)/2) log2(1-c) + ((1+c)/2) log2(1+c), c = max |c_i|.
double bell_diagonal_qd_oracle(double c1, double c2, double c3);

}  // namespace polqd
