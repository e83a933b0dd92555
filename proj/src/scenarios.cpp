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

#include "polqd/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace polqd {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Eigen::Index basis_index(std::span<const Level> levels) {
  Eigen::Index i = 0;
  for (Level l : levels) i = (i << 1) | (l == Level::ground ? 1 : 0);
  return i;
}

DensityMatrix projector(const Eigen::VectorXcd& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw DomainError("invalid number for '" + std::string(key) + "': " + t);
  }
  return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw DomainError("invalid integer for '" + std::string(key) + "': " + t);
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const long long v = parse_integer(key, text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw DomainError("integer out of range for '" + std::string(key) + "'");
  }
  return static_cast<int>(v);
}

OutputRecord with_probabilities(double tau, const std::vector<double>& p) {
  OutputRecord r;
  r.tau = tau;
  r.p_e1 = p[0];
  r.p_e2 = p[1];
  r.p_e3 = p[2];
  return r;
}

void fill_tripartite(OutputRecord& r, const TripartiteCorrelations& t) {
  r.gqd_123 = t.gqd_123.value;
  r.gqd_12 = t.gqd_12.value;
  r.gqd_13 = t.gqd_13.value;
  r.gqd_23 = t.gqd_23.value;
  r.mgqd = t.mgqd();
  const ResidualDiscords d = t.residuals();
  r.d_r1 = d.d_r1;
  r.d_r2 = d.d_r2;
  r.d_r3 = d.d_r3;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::alpha_sweep:
      return "alpha_sweep";
    case ScenarioKind::mgqd_trajectory:
      return "mgqd_trajectory";
    case ScenarioKind::single_excitation:
      return "single_excitation";
    case ScenarioKind::sudden_transition:
      return "sudden_transition";
  }
  return "unknown";
}

DensityMatrix state_mixture_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  using L = Level;
  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
  ghz(basis_index(std::array{L::excited, L::excited, L::excited})) = kInvSqrt2;
  ghz(basis_index(std::array{L::ground, L::ground, L::ground})) = kInvSqrt2;
  const Operator bell = state_bell_pair({1, 3}).matrix();
  Operator rho = alpha * (ghz * ghz.adjoint()) + (1.0 - alpha) * bell;
  return DensityMatrix(std::move(rho));
}

DensityMatrix state_bell_pair(std::pair<int, int> sites, int n_sites) {
  const auto [i, j] = sites;
  if (i == j || i < 1 || j < 1 || i > n_sites || j > n_sites) {
    throw DomainError("Bell pair needs two distinct sites in range");
  }
  std::vector<Level> a(n_sites, Level::ground), b(n_sites, Level::ground);
  a[i - 1] = Level::excited;
  b[j - 1] = Level::excited;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
  psi(basis_index(a)) = kInvSqrt2;
  psi(basis_index(b)) = kInvSqrt2;
  return projector(psi);
}

DensityMatrix state_single_excitation(int site, int n_sites) {
  if (site < 1 || site > n_sites) throw DomainError("excited site out of range");
  std::vector<Level> levels(n_sites, Level::ground);
  levels[site - 1] = Level::excited;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
  psi(basis_index(levels)) = 1.0;
  return projector(psi);
}

DensityMatrix state_sudden_transition(double c1, double c2, double c3, Level middle) {
  const Operator pair = bell_diagonal_state(c1, c2, c3);  // factors (1, 3)
  const int m = middle == Level::ground ? 1 : 0;
  Operator rho = Operator::Zero(8, 8);
  // (b1, b3) x (b1', b3') of the pair go to (b1, m, b3) x (b1', m, b3').
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const int row = ((r >> 1) << 2) | (m << 1) | (r & 1);
      const int col = ((c >> 1) << 2) | (m << 1) | (c & 1);
      rho(row, col) = pair(r, c);
    }
  }
  return DensityMatrix(std::move(rho));
}

void ScenarioSpec::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (alpha_points < 1) throw DomainError("points must be at least 1");
  if (excited_site < 1 || excited_site > 3) throw DomainError("site must be 1, 2 or 3");
  if (t_cav_us && !(*t_cav_us > 0.0)) throw DomainError("tcav-us must be positive");
  if (!(j_over_g >= 0.0)) throw DomainError("j-over-g must be non-negative");
  if (!(g > 0.0)) throw DomainError("g must be positive");
  if (dt && !(*dt > 0.0)) throw DomainError("dt must be positive");
  if (t_max && !(*t_max > 0.0)) throw DomainError("tmax must be positive");
  if (sample_stride && *sample_stride < 1) throw DomainError("stride must be at least 1");
  if (!(crossing_tol > 0.0)) throw DomainError("crossing-tol must be positive");
  optimization.validate();
  if (kind == ScenarioKind::sudden_transition) {
    bell_diagonal_state(bell_diag[0], bell_diag[1], bell_diag[2]);
  }
}

ScenarioSpec ScenarioSpec::resolved() const {
  ScenarioSpec s = *this;
  const bool fast_decay =
      kind == ScenarioKind::mgqd_trajectory || kind == ScenarioKind::sudden_transition;
  if (!s.t_cav_us) s.t_cav_us = fast_decay ? 10.0 : 1000.0;
  switch (kind) {
    case ScenarioKind::alpha_sweep:
      break;
    case ScenarioKind::mgqd_trajectory:
      if (!s.t_max) s.t_max = 10.0;
      if (!s.sample_stride) s.sample_stride = 10;
      break;
    case ScenarioKind::single_excitation:
      if (!s.t_max) s.t_max = 12.0;
      if (!s.sample_stride) s.sample_stride = 2;
      break;
    case ScenarioKind::sudden_transition:
      if (!s.t_max) s.t_max = 8.0;
      if (!s.sample_stride) s.sample_stride = 2;
      break;
  }
  return s;
}

NetworkParams ScenarioSpec::network() const {
  NetworkParams p = NetworkParams::uniform(3, j_over_g, g);
  p.t_cav = resolved().t_cav_us.value() * 1e-6;
  return p;
}

void apply_setting(ScenarioSpec& spec, std::string_view raw_key, std::string_view value) {
  std::string key = lower(trim(raw_key));
  std::replace(key.begin(), key.end(), '_', '-');
  const std::string v = trim(value);

  if (key == "scenario") {
    const std::string name = lower(v);
    if (name == "alpha_sweep") {
      spec.kind = ScenarioKind::alpha_sweep;
    } else if (name == "mgqd_trajectory") {
      spec.kind = ScenarioKind::mgqd_trajectory;
    } else if (name == "single_excitation") {
      spec.kind = ScenarioKind::single_excitation;
    } else if (name == "sudden_transition") {
      spec.kind = ScenarioKind::sudden_transition;
    } else {
      throw DomainError("unknown scenario '" + v + "'");
    }
  } else if (key == "alpha") {
    spec.alpha = parse_double(key, v);
  } else if (key == "points") {
    spec.alpha_points = parse_int(key, v);
  } else if (key == "c1") {
    spec.bell_diag[0] = parse_double(key, v);
  } else if (key == "c2") {
    spec.bell_diag[1] = parse_double(key, v);
  } else if (key == "c3") {
    spec.bell_diag[2] = parse_double(key, v);
  } else if (key == "middle") {
    const std::string m = lower(v);
    if (m == "e" || m == "excited") {
      spec.middle = Level::excited;
    } else if (m == "g" || m == "ground") {
      spec.middle = Level::ground;
    } else {
      throw DomainError("middle must be E or G, got '" + v + "'");
    }
  } else if (key == "site") {
    spec.excited_site = parse_int(key, v);
  } else if (key == "tcav-us") {
    spec.t_cav_us = parse_double(key, v);
  } else if (key == "j-over-g") {
    spec.j_over_g = parse_double(key, v);
  } else if (key == "g") {
    spec.g = parse_double(key, v);
  } else if (key == "dt") {
    spec.dt = parse_double(key, v);
  } else if (key == "tmax") {
    spec.t_max = parse_double(key, v);
  } else if (key == "stride") {
    spec.sample_stride = parse_int(key, v);
  } else if (key == "crossing-tol") {
    spec.crossing_tol = parse_double(key, v);
  } else if (key == "starts") {
    spec.optimization.n_starts = parse_int(key, v);
  } else if (key == "grid") {
    spec.optimization.grid_resolution = parse_int(key, v);
  } else if (key == "seed") {
    const long long s = parse_integer(key, v);
    if (s < 0) throw DomainError("seed must be non-negative");
    spec.optimization.seed = static_cast<std::uint64_t>(s);
  } else if (key == "out") {
    spec.output_path = v;
  } else {
    throw DomainError("unknown setting '" + std::string(raw_key) + "'");
  }
}

void apply_config(ScenarioSpec& spec, std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(spec, std::string_view(line).substr(0, eq),
                  std::string_view(line).substr(eq + 1));
  }
}

void apply_config_file(ScenarioSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  apply_config(spec, in);
}

ScenarioOutput run_scenario(const ScenarioSpec& input) {
  input.validate();
  const ScenarioSpec spec = input.resolved();
  const OptimizationConfig& opt = spec.optimization;
  ScenarioOutput out;

  if (spec.kind == ScenarioKind::alpha_sweep) {
    for (int k = 0; k < spec.alpha_points; ++k) {
      const double alpha = spec.alpha_points == 1
                               ? spec.alpha
                               : static_cast<double>(k) / (spec.alpha_points - 1);
      const DensityMatrix rho = state_mixture_alpha(alpha);
      OutputRecord r = with_probabilities(0.0, excitation_probabilities(rho));
      r.alpha = alpha;
      fill_tripartite(r, tripartite_correlations(rho, opt));
      out.records.push_back(r);
    }
    return out;
  }

  const NetworkParams params = spec.network();
  const Operator h = build_hamiltonian(params);
  const auto channels = davies_channels(h, params, flat_rate(params));
  const Operator h_frame = rotating_frame(h, mean_site_frequency(params));

  EvolutionConfig cfg;
  cfg.dt = spec.dt ? *spec.dt : default_time_step(h_frame, channels);
  cfg.t_max = *spec.t_max;
  cfg.sample_stride = *spec.sample_stride;

  const DensityMatrix rho0 = [&] {
    switch (spec.kind) {
      case ScenarioKind::mgqd_trajectory:
        return state_mixture_alpha(spec.alpha);
      case ScenarioKind::single_excitation:
        return state_single_excitation(spec.excited_site);
      default:
        return state_sudden_transition(spec.bell_diag[0], spec.bell_diag[1], spec.bell_diag[2],
                                       spec.middle);
    }
  }();

  const Trajectory traj = evolve(rho0, h_frame, channels, cfg);
  out.diagnostics = traj.diagnostics;
  out.crossing_times = find_probability_crossings(traj, spec.crossing_tol);

  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const DensityMatrix& rho = traj.states[k];
    OutputRecord r = with_probabilities(traj.times[k], traj.probabilities[k]);
    switch (spec.kind) {
      case ScenarioKind::mgqd_trajectory:
        fill_tripartite(r, tripartite_correlations(rho, opt));
        break;
      case ScenarioKind::single_excitation:
        r.gqd_123 = minimize_gqd(rho, opt).value;
        break;
      default:
        r.gqd_13 = bipartite_gqd(rho, {1, 3}, opt).value;
        break;
    }
    out.records.push_back(r);
  }
  out.first_gqd_maximum = first_local_maximum(out.records);
  return out;
}

std::optional<double> first_local_maximum(std::span<const OutputRecord> records) {
  for (std::size_t k = 1; k + 1 < records.size(); ++k) {
    const auto& prev = records[k - 1].gqd_123;
    const auto& cur = records[k].gqd_123;
    const auto& next = records[k + 1].gqd_123;
    if (!prev || !cur || !next) continue;
    if (*cur > *prev && *cur >= *next) return records[k].tau;
  }
  return std::nullopt;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, ScenarioKind kind, std::span<const OutputRecord> records) {
  const bool with_alpha = kind == ScenarioKind::alpha_sweep;
  if (with_alpha) out << "alpha,";
  out << "tau,gqd_123,gqd_12,gqd_13,gqd_23,mgqd,d_r1,d_r2,d_r3,p_e1,p_e2,p_e3\n";
  auto cell = [&out](const std::optional<double>& v) {
    out << ',';
    if (v) out << format_number(*v);
  };
  for (const auto& r : records) {
    if (with_alpha) out << (r.alpha ? format_number(*r.alpha) : std::string()) << ',';
    out << format_number(r.tau);
    for (const auto* v : {&r.gqd_123, &r.gqd_12, &r.gqd_13, &r.gqd_23, &r.mgqd, &r.d_r1,
                          &r.d_r2, &r.d_r3, &r.p_e1, &r.p_e2, &r.p_e3}) {
      cell(*v);
    }
    out << '\n';
  }
}

}  // namespace polqd
