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

#include "polqd/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace polqd {

namespace {

constexpr double kGroupingRelTol = 1e-9;
constexpr double kAmplitudeFloor = 1e-14;
constexpr double kJumpFloor = 1e-12;

// Eigenpair with energy split as offset + local so that gaps between sectors
// keep the precision of the small local part.
struct Level {
  double offset;
  double local;
  double energy() const { return offset + local; }
};

struct Eigenbasis {
  std::vector<Level> levels;
  Operator vectors;  // columns, aligned with levels
};

Eigenbasis sector_eigenbasis(const Operator& h, int n_sites) {
  const Eigen::Index dim = h.rows();
  const Operator n_op = excitation_number(n_sites);
  const double scale = std::max(1.0, max_abs(h));
  const bool conserving = max_abs(h * n_op - n_op * h) <= 1e-12 * scale;

  Eigenbasis out;
  out.vectors = Operator::Zero(dim, dim);
  if (!conserving) {
    const Spectrum sp = hermitian_eig(h);
    for (Eigen::Index k = 0; k < dim; ++k) out.levels.push_back({0.0, sp.eigenvalues(k)});
    out.vectors = sp.eigenvectors;
    return out;
  }

  Eigen::Index column = 0;
  for (int n = 0; n <= n_sites; ++n) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (std::lround(n_op(i, i).real()) == n) idx.push_back(i);
    }
    const auto m = static_cast<Eigen::Index>(idx.size());
    Operator block(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) block(a, b) = h(idx[a], idx[b]);
    }
    const double offset = block.diagonal().real().mean();
    block -= offset * Operator::Identity(m, m);
    const Spectrum sp = hermitian_eig(block);
    for (Eigen::Index k = 0; k < m; ++k) {
      out.levels.push_back({offset, sp.eigenvalues(k)});
      for (Eigen::Index a = 0; a < m; ++a) out.vectors(idx[a], column) = sp.eigenvectors(a, k);
      ++column;
    }
  }
  return out;
}

struct Transition {
  double frequency;
  Eigen::Index from;  // |a><a| L |b><b| has from = a
  Eigen::Index to;
};

std::vector<std::vector<Transition>> group_by_frequency(std::vector<Transition> ts,
                                                        double tol) {
  std::sort(ts.begin(), ts.end(), [](const Transition& x, const Transition& y) {
    if (x.frequency != y.frequency) return x.frequency < y.frequency;
    if (x.from != y.from) return x.from < y.from;
    return x.to < y.to;
  });
  std::vector<std::vector<Transition>> groups;
  for (const auto& t : ts) {
    if (groups.empty() || t.frequency - groups.back().back().frequency > tol) {
      groups.emplace_back();
    }
    groups.back().push_back(t);
  }
  return groups;
}

}  // namespace

NetworkParams NetworkParams::uniform(int n_sites, double j_over_g, double g) {
  NetworkParams p;
  p.n_sites = n_sites;
  const double transition = 2.0 * std::numbers::pi * 51.1e9;
  p.g.assign(n_sites, g);
  p.omega.assign(n_sites, transition + g);
  p.hopping.assign(std::max(0, n_sites - 1), j_over_g * g);
  return p;
}

void NetworkParams::validate() const {
  if (n_sites < 2) throw DomainError("n_sites must be at least 2");
  if (static_cast<int>(omega.size()) != n_sites || static_cast<int>(g.size()) != n_sites) {
    throw DomainError("omega and g need one entry per site");
  }
  if (static_cast<int>(hopping.size()) != n_sites - 1) {
    throw DomainError("hopping needs n_sites - 1 entries");
  }
  for (double j : hopping) {
    if (!(j >= 0.0)) throw DomainError("hopping must be non-negative");
  }
  if (!(t_cav > 0.0)) throw DomainError("t_cav must be positive");
  if (!(gamma_scale > 0.0)) throw DomainError("gamma_scale must be positive");
  if (!(rate_multiplier >= 0.0)) throw DomainError("rate_multiplier must be non-negative");
}

SiteOperators polariton_ops(int site, int n_sites) {
  if (n_sites < 1) throw DomainError("n_sites must be positive");
  if (site < 1 || site > n_sites) {
    throw DomainError("site " + std::to_string(site) + " out of range 1.." +
                      std::to_string(n_sites));
  }
  Operator lower = Operator::Zero(2, 2);
  lower(1, 0) = 1.0;  // |G><E| with E -> 0, G -> 1
  const Operator raise = lower.adjoint();
  SiteOperators ops;
  ops.lower = embed_site_operator(lower, site, n_sites);
  ops.raise = embed_site_operator(raise, site, n_sites);
  ops.excited_projector = embed_site_operator(raise * lower, site, n_sites);
  return ops;
}

Operator excitation_number(int n_sites) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Operator n = Operator::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    // a zero bit is an excited site
    n(i, i) = static_cast<double>(n_sites - std::popcount(static_cast<unsigned long>(i)));
  }
  return n;
}

Operator build_hamiltonian(const NetworkParams& p) {
  p.validate();
  const Eigen::Index dim = Eigen::Index{1} << p.n_sites;
  Operator h = Operator::Zero(dim, dim);
  std::vector<SiteOperators> ops;
  for (int s = 1; s <= p.n_sites; ++s) ops.push_back(polariton_ops(s, p.n_sites));

  for (int s = 0; s < p.n_sites; ++s) {
    h += ((p.omega[s] - p.g[s]) / p.gamma_scale) * ops[s].excited_projector;
  }
  for (int s = 0; s + 1 < p.n_sites; ++s) {
    const double half_j = 0.5 * p.hopping[s] / p.gamma_scale;
    h += half_j * (ops[s].raise * ops[s + 1].lower + ops[s].lower * ops[s + 1].raise);
  }
  return h;
}

double mean_site_frequency(const NetworkParams& p) {
  p.validate();
  double sum = 0.0;
  for (int s = 0; s < p.n_sites; ++s) sum += p.omega[s] - p.g[s];
  return sum / p.n_sites / p.gamma_scale;
}

Operator rotating_frame(const Operator& h, double reference) {
  return h - reference * excitation_number(sites_for_dimension(h.rows()));
}

RateFunction flat_rate(const NetworkParams& p) {
  const double rate = p.rate_multiplier / (p.t_cav * p.gamma_scale);
  return [rate](double) { return rate; };
}

std::vector<DaviesChannel> davies_channels(const Operator& h, const NetworkParams& p,
                                           const RateFunction& rate_fn) {
  p.validate();
  if (sites_for_dimension(h.rows()) != p.n_sites) {
    throw DomainError("Hamiltonian dimension does not match n_sites");
  }
  const Eigenbasis basis = sector_eigenbasis(h, p.n_sites);
  const auto dim = static_cast<Eigen::Index>(basis.levels.size());

  double max_energy = 0.0;
  for (const auto& l : basis.levels) max_energy = std::max(max_energy, std::abs(l.energy()));
  const double tol = std::max(kGroupingRelTol * max_energy, 1e-14);

  std::vector<DaviesChannel> channels;
  for (int site = 1; site <= p.n_sites; ++site) {
    const Operator lower = polariton_ops(site, p.n_sites).lower;
    const Operator in_basis = basis.vectors.adjoint() * lower * basis.vectors;

    std::vector<Transition> transitions;
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (std::abs(in_basis(a, b)) <= kAmplitudeFloor) continue;
        const Level& la = basis.levels[a];
        const Level& lb = basis.levels[b];
        const double w = (lb.offset - la.offset) + (lb.local - la.local);
        if (w > tol) transitions.push_back({w, a, b});
      }
    }

    const auto groups = group_by_frequency(transitions, tol);
    if (group_by_frequency(transitions, 10.0 * tol).size() != groups.size()) {
      throw GroupingAmbiguity("Bohr-frequency grouping for site " + std::to_string(site) +
                              " changes between tolerance and ten times tolerance");
    }

    for (const auto& group : groups) {
      Operator masked = Operator::Zero(dim, dim);
      double w_sum = 0.0;
      for (const auto& t : group) {
        masked(t.from, t.to) = in_basis(t.from, t.to);
        w_sum += t.frequency;
      }
      Operator jump = basis.vectors * masked * basis.vectors.adjoint();
      if (max_abs(jump) < kJumpFloor) continue;
      const double w = w_sum / static_cast<double>(group.size());
      const double rate = rate_fn(w);
      if (!(rate >= 0.0)) throw DomainError("rate function returned a negative rate");
      channels.push_back({site, w, rate, std::move(jump)});
    }
  }
  return channels;
}

}  // namespace polqd
