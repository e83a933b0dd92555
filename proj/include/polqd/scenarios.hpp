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

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polqd/dynamics.hpp"
#include "polqd/measures.hpp"
#include "polqd/model.hpp"
#include "polqd/qmat.hpp"

namespace polqd {

enum class ScenarioKind { alpha_sweep, mgqd_trajectory, single_excitation, sudden_transition };
enum class Level { excited, ground };

std::string_view to_string(ScenarioKind kind);

/// alpha |GHZ><GHZ| + (1 - alpha) |Phi><Phi| with
/// |GHZ> = (|EEE> + |GGG>)/sqrt2 and |Phi> = (|EGG> + |GGE>)/sqrt2.
DensityMatrix state_mixture_alpha(double alpha);

/// (|E_i G_j> + |G_i E_j>)/sqrt2 on the given pair, every other site in G.
DensityMatrix state_bell_pair(std::pair<int, int> sites, int n_sites = 3);

/// Pure state with one excitation on `site` (1-based).
DensityMatrix state_single_excitation(int site, int n_sites = 3);

/// Bell-diagonal state on sites (1, 3) tensored with |middle><middle| on
/// site 2, in site order (1, 2, 3).
DensityMatrix state_sudden_transition(double c1, double c2, double c3, Level middle);

/// Everything needed to reproduce one run. Unset optionals take the
/// per-kind defaults listed in resolved().
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::alpha_sweep;
  double alpha = 0.0;
  int alpha_points = 11;
  std::array<double, 3> bell_diag{1.0, -0.8, 0.8};
  Level middle = Level::ground;
  int excited_site = 2;
  std::optional<double> t_cav_us;
  double j_over_g = 1e-2;
  double g = 3.14159265358979323846e6;
  std::optional<double> dt;
  std::optional<double> t_max;
  std::optional<int> sample_stride;
  double crossing_tol = 0.01;
  OptimizationConfig optimization;
  std::string output_path;

  void validate() const;

  /// Copy with per-kind defaults filled in (dt stays unset; it is derived
  /// from the model when the run starts):
  ///   t_cav_us:  10 for mgqd_trajectory and sudden_transition, else 1000
  ///   t_max:     10 / 12 / 8 for mgqd_trajectory / single_excitation / sudden_transition
  ///   stride:    10 / 2 / 2
  ScenarioSpec resolved() const;

  NetworkParams network() const;
};

/// Sets one key from a config file or the matching CLI flag. Keys are the
/// flag names without leading dashes; '_' and '-' are interchangeable.
/// Throws DomainError on unknown keys or unparsable values.
void apply_setting(ScenarioSpec& spec, std::string_view key, std::string_view value);

/// Reads `key = value` lines; '#' starts a comment.
void apply_config(ScenarioSpec& spec, std::istream& in);
void apply_config_file(ScenarioSpec& spec, const std::string& path);

/// One CSV row. Quantities a scenario does not compute stay empty.
struct OutputRecord {
  double tau = 0.0;
  std::optional<double> alpha;
  std::optional<double> gqd_123, gqd_12, gqd_13, gqd_23;
  std::optional<double> mgqd, d_r1, d_r2, d_r3;
  std::optional<double> p_e1, p_e2, p_e3;
};

struct ScenarioOutput {
  std::vector<OutputRecord> records;
  /// Trajectory scenarios: midpoints of runs where all P_Ei agree to
  /// crossing_tol, and the first local maximum of gqd_123 (if computed).
  std::vector<double> crossing_times;
  std::optional<double> first_gqd_maximum;
  EvolutionDiagnostics diagnostics;
};

/// Runs a scenario end to end. Deterministic for a given spec.
/// Guard violations propagate as GuardViolation carrying the failing tau.
ScenarioOutput run_scenario(const ScenarioSpec& spec);

/// tau of the first sample whose gqd_123 exceeds both neighbours.
std::optional<double> first_local_maximum(std::span<const OutputRecord> records);

/// CSV with the header
///   tau,gqd_123,gqd_12,gqd_13,gqd_23,mgqd,d_r1,d_r2,d_r3,p_e1,p_e2,p_e3
/// (alpha_sweep prepends an alpha column). Numbers use 17 significant digits.
void write_csv(std::ostream& out, ScenarioKind kind, std::span<const OutputRecord> records);

std::string format_number(double x);

}  // namespace polqd
