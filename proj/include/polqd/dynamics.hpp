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

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polqd/model.hpp"
#include "polqd/qmat.hpp"

namespace polqd {

/// Post-step guard thresholds applied during integration.
struct GuardTolerances {
  double renormalize_trace = 1e-12;  // renormalize when |Tr - 1| exceeds this
  double abort_trace = 1e-8;         // abort when |Tr - 1| exceeds this
  double abort_eigenvalue = -1e-6;   // abort when a sampled state dips below this
};

/// Fixed-step integration settings. Times are dimensionless (units of
/// 1 / gamma_scale).
struct EvolutionConfig {
  double dt = 0.01;
  double t_max = 1.0;
  int sample_stride = 1;
  GuardTolerances guards;

  void validate() const;
};

/// Largest step satisfying dt * max(|spectral gap of h|, max rate) <= 0.05,
/// capped at `cap`.
double default_time_step(const Operator& h, std::span<const DaviesChannel> channels,
                         double cap = 0.01);

/// Worst-case drifts observed during an evolve() call, measured before the
/// post-step corrections.
struct EvolutionDiagnostics {
  double max_trace_drift_per_step = 0.0;
  double max_hermiticity_drift_per_step = 0.0;
  double min_sampled_eigenvalue = 1.0;
  double max_excitation_increase_per_step = 0.0;  // <N>(t+dt) - <N>(t), worst case
  long steps = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<std::vector<double>> probabilities;  // per sample, per site
  EvolutionDiagnostics diagnostics;
};

/// A guard check failed at dimensionless time `tau`.
class GuardViolation : public std::runtime_error {
 public:
  GuardViolation(const std::string& what, double tau)
      : std::runtime_error(what), tau_(tau) {}
  double tau() const { return tau_; }

 private:
  double tau_;
};

/// -i[H, rho] + sum_c rate_c (A rho A^dagger - 1/2 {A^dagger A, rho}).
Operator liouvillian_rhs(const Operator& rho, const Operator& h,
                         std::span<const DaviesChannel> channels);

/// Classical fourth-order Runge-Kutta from tau = 0 to cfg.t_max. Samples are
/// stored at tau = 0 and every cfg.sample_stride steps.
Trajectory evolve(const DensityMatrix& rho0, const Operator& h,
                  std::span<const DaviesChannel> channels, const EvolutionConfig& cfg);

/// P_Ei = Tr(rho |E><E|_i) for every site.
std::vector<double> excitation_probabilities(const DensityMatrix& rho);

/// Times where max_i P_Ei - min_i P_Ei < tol, one midpoint per contiguous run
/// of samples.
std::vector<double> find_probability_crossings(const Trajectory& traj, double tol);

}  // namespace polqd
