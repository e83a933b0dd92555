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

#include <functional>
#include <stdexcept>
#include <vector>

#include "polqd/qmat.hpp"

namespace polqd {

/// Physical parameters of an open chain of coupled cavity-atom sites.
///
/// Frequencies are angular (rad/s) and lifetimes in seconds. Everything
/// derived from them (Hamiltonian, Bohr frequencies, rates) is expressed in
/// units of `gamma_scale`, which is also the unit of the dimensionless time
/// tau = gamma_scale * t.
struct NetworkParams {
  int n_sites = 3;
  std::vector<double> omega;    // per site
  std::vector<double> g;        // per site
  std::vector<double> hopping;  // per link i <-> i+1, size n_sites - 1
  double t_cav = 1e-3;
  double gamma_scale = 1e5;
  /// Cavity-loss rate on the polariton lowering operator is
  /// rate_multiplier / t_cav. The dressed state carries amplitude 1/sqrt(2)
  /// on the one-photon component, hence the default 1/2.
  double rate_multiplier = 0.5;

  /// Uniform chain: (omega - g) / 2pi = 51.1 GHz, g = pi * 1e6 rad/s,
  /// J = j_over_g * g on every link.
  static NetworkParams uniform(int n_sites = 3, double j_over_g = 1e-2,
                               double g = 3.14159265358979323846e6);

  /// Throws DomainError on inconsistent sizes or out-of-range values.
  void validate() const;
};

struct SiteOperators {
  Operator raise;              // |E><G| on the site
  Operator lower;              // |G><E| on the site
  Operator excited_projector;  // |E><E| on the site
};

/// Polariton ladder operators for `site` (1-based) embedded in `n_sites`.
SiteOperators polariton_ops(int site, int n_sites);

/// Total excitation number sum_i |E><E|_i.
Operator excitation_number(int n_sites);

/// sum_i (omega_i - g_i)|E><E|_i + sum_i (J_i / 2)(L_i^+ L_{i+1}^- + h.c.),
/// in units of gamma_scale. Open chain, ground-state energy zero.
Operator build_hamiltonian(const NetworkParams& p);

/// Mean dressed-state frequency (omega_i - g_i) in units of gamma_scale.
double mean_site_frequency(const NetworkParams& p);

/// H - reference * N. For an excitation-conserving H this is the generator
/// in the frame rotating at `reference`; Davies operators are unchanged.
Operator rotating_frame(const Operator& h, double reference);

/// One dissipation channel of the microscopic master equation.
struct DaviesChannel {
  int site;               // 1-based
  double bohr_frequency;  // units of gamma_scale, > 0
  double rate;            // units of gamma_scale, >= 0
  Operator jump;
};

/// Decay rate as a function of Bohr frequency (both in units of gamma_scale).
using RateFunction = std::function<double(double)>;

/// Zero-temperature flat spectral density: rate_multiplier / (t_cav * gamma_scale).
RateFunction flat_rate(const NetworkParams& p);

/// Raised when Bohr-frequency grouping depends on the tolerance.
class GroupingAmbiguity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decomposes each site's lowering operator into eigenoperators of H.
///
/// A(w) = sum_{E_b - E_a = w} |a><a| L_site |b><b|, with Bohr frequencies
/// grouped at tolerance 1e-9 * max|E| and only w > 0 retained. Throws
/// GroupingAmbiguity if grouping at ten times that tolerance yields a
/// different channel count.
std::vector<DaviesChannel> davies_channels(const Operator& h, const NetworkParams& p,
                                           const RateFunction& rate_fn);

}  // namespace polqd
