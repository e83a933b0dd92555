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

#include "polqd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polqd {

namespace {

const Complex kI(0.0, 1.0);

// Liouvillian split as rho -> -i(K rho - rho K^dagger) + sum_c rate_c A rho A^dagger
// with K = H - i/2 sum_c rate_c A^dagger A.
class Generator {
 public:
  Generator(const Operator& h, std::span<const DaviesChannel> channels) : k_(h) {
    for (const auto& c : channels) {
      if (c.jump.rows() != h.rows() || c.jump.cols() != h.cols()) {
        throw DomainError("jump operator dimension does not match Hamiltonian");
      }
      if (c.rate == 0.0) continue;
      k_ -= 0.5 * kI * c.rate * (c.jump.adjoint() * c.jump);
      jumps_.push_back(c.jump);
      jumps_dag_.push_back(c.jump.adjoint());
      rates_.push_back(c.rate);
    }
    k_dag_ = k_.adjoint();
  }

  void apply(const Operator& rho, Operator& out) const {
    out.noalias() = -kI * (k_ * rho);
    out.noalias() += kI * (rho * k_dag_);
    for (std::size_t c = 0; c < jumps_.size(); ++c) {
      out.noalias() += rates_[c] * (jumps_[c] * rho * jumps_dag_[c]);
    }
  }

 private:
  Operator k_;
  Operator k_dag_;
  std::vector<Operator> jumps_;
  std::vector<Operator> jumps_dag_;
  std::vector<double> rates_;
};

double mean_excitation(const Operator& rho, const Eigen::VectorXd& n_diag) {
  return (rho.diagonal().real().array() * n_diag.array()).sum();
}

std::string step_diagnostic(const std::string& what, double tau, double dt) {
  std::ostringstream os;
  os << what << " at tau=" << tau << " with dt=" << dt << "; reduce the time step";
  return os.str();
}

}  // namespace

void EvolutionConfig::validate() const {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (!(t_max >= dt)) throw DomainError("t_max must be at least dt");
  if (sample_stride < 1) throw DomainError("sample_stride must be at least 1");
}

double default_time_step(const Operator& h, std::span<const DaviesChannel> channels,
                         double cap) {
  const Spectrum sp = hermitian_eig(h);
  double scale = sp.eigenvalues.maxCoeff() - sp.eigenvalues.minCoeff();
  for (const auto& c : channels) scale = std::max(scale, c.rate);
  if (scale <= 0.0) return cap;
  return std::min(cap, 0.05 / scale);
}

Operator liouvillian_rhs(const Operator& rho, const Operator& h,
                         std::span<const DaviesChannel> channels) {
  if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
    throw DomainError("state and Hamiltonian dimensions differ");
  }
  Operator out = -kI * (h * rho - rho * h);
  for (const auto& c : channels) {
    if (c.jump.rows() != h.rows() || c.jump.cols() != h.cols()) {
      throw DomainError("jump operator dimension does not match Hamiltonian");
    }
    const Operator a_dag = c.jump.adjoint();
    const Operator a_dag_a = a_dag * c.jump;
    out += c.rate * (c.jump * rho * a_dag - 0.5 * (a_dag_a * rho + rho * a_dag_a));
  }
  return out;
}

Trajectory evolve(const DensityMatrix& rho0, const Operator& h,
                  std::span<const DaviesChannel> channels, const EvolutionConfig& cfg) {
  cfg.validate();
  if (rho0.dim() != h.rows()) throw DomainError("state and Hamiltonian dimensions differ");

  const Generator gen(h, channels);
  const int n_sites = rho0.n_sites();
  const Eigen::VectorXd n_diag = excitation_number(n_sites).diagonal().real();
  const double dt = cfg.dt;
  const long n_steps = static_cast<long>(std::floor(cfg.t_max / dt + 1e-9));

  StateTolerance sample_tol;
  sample_tol.min_eigenvalue = cfg.guards.abort_eigenvalue;

  Trajectory traj;
  auto record = [&](const Operator& rho, double tau) {
    DensityMatrix state = [&] {
      try {
        return DensityMatrix(rho, sample_tol);
      } catch (const DomainError& e) {
        throw GuardViolation(step_diagnostic(e.what(), tau, dt), tau);
      }
    }();
    Eigen::SelfAdjointEigenSolver<Operator> es(rho, Eigen::EigenvaluesOnly);
    traj.diagnostics.min_sampled_eigenvalue =
        std::min(traj.diagnostics.min_sampled_eigenvalue, es.eigenvalues().minCoeff());
    traj.probabilities.push_back(excitation_probabilities(state));
    traj.times.push_back(tau);
    traj.states.push_back(std::move(state));
  };

  Operator rho = rho0.matrix();
  record(rho, 0.0);

  const Eigen::Index dim = rho.rows();
  Operator k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), tmp(dim, dim);
  double n_prev = mean_excitation(rho, n_diag);
  for (long step = 1; step <= n_steps; ++step) {
    const double tau = static_cast<double>(step) * dt;

    gen.apply(rho, k1);
    tmp = rho + (0.5 * dt) * k1;
    gen.apply(tmp, k2);
    tmp = rho + (0.5 * dt) * k2;
    gen.apply(tmp, k3);
    tmp = rho + dt * k3;
    gen.apply(tmp, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    auto& diag = traj.diagnostics;
    diag.max_hermiticity_drift_per_step =
        std::max(diag.max_hermiticity_drift_per_step, max_abs(rho - rho.adjoint()));
    rho = hermitize(rho);

    const double trace = rho.trace().real();
    const double drift = std::abs(trace - 1.0);
    diag.max_trace_drift_per_step = std::max(diag.max_trace_drift_per_step, drift);
    if (drift > cfg.guards.abort_trace) {
      throw GuardViolation(step_diagnostic("trace drift " + std::to_string(drift), tau, dt),
                           tau);
    }
    if (drift > cfg.guards.renormalize_trace) rho /= trace;

    const double n_now = mean_excitation(rho, n_diag);
    diag.max_excitation_increase_per_step =
        std::max(diag.max_excitation_increase_per_step, n_now - n_prev);
    n_prev = n_now;
    diag.steps = step;

    if (step % cfg.sample_stride == 0) record(rho, tau);
  }
  return traj;
}

std::vector<double> excitation_probabilities(const DensityMatrix& rho) {
  const int n = rho.n_sites();
  std::vector<double> p(n, 0.0);
  const Operator& m = rho.matrix();
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    const double w = m(i, i).real();
    for (int s = 1; s <= n; ++s) {
      if (((i >> (n - s)) & 1) == 0) p[s - 1] += w;
    }
  }
  for (double& x : p) x = std::clamp(x, 0.0, 1.0);
  return p;
}

std::vector<double> find_probability_crossings(const Trajectory& traj, double tol) {
  std::vector<double> out;
  if (traj.times.empty()) throw DomainError("trajectory is empty");
  std::size_t run_start = 0;
  bool in_run = false;
  for (std::size_t k = 0; k <= traj.times.size(); ++k) {
    bool close = false;
    if (k < traj.times.size()) {
      const auto& p = traj.probabilities[k];
      const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
      close = (*hi - *lo) < tol;
    }
    if (close && !in_run) {
      run_start = k;
      in_run = true;
    } else if (!close && in_run) {
      out.push_back(0.5 * (traj.times[run_start] + traj.times[k - 1]));
      in_run = false;
    }
  }
  return out;
}

}  // namespace polqd
