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

#include "polqd/measures.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "polqd/optimize.hpp"

namespace polqd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOutcomeFloor = 1e-12;
constexpr double kAgreement = 1e-5;
constexpr double kInitialStep = 0.25;

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

Eigen::Matrix2cd site_unitary(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  Eigen::Matrix2cd u;
  u(0, 0) = c;
  u(1, 0) = e * s;
  u(0, 1) = -std::conj(e) * s;
  u(1, 1) = c;
  return u;
}

// Entropy in bits of a 2x2 Hermitian PSD matrix divided by its trace.
double normalized_entropy_2x2(const Eigen::Matrix2cd& m, double trace) {
  const double a = m(0, 0).real() / trace;
  const double d = m(1, 1).real() / trace;
  const double b = std::abs(m(0, 1)) / trace;
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * b * b);
  const std::array<double, 2> ev{0.5 * (a + d + disc), 0.5 * (a + d - disc)};
  return shannon_entropy(ev);
}

// Uniform draw in [0, 1) from the raw 64-bit engine output so that seeding is
// reproducible across standard library implementations.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Start points for a search over `n_pairs` (theta, phi) pairs.
std::vector<std::vector<double>> seed_points(int n_pairs, const OptimizationConfig& opt) {
  const int dim = 2 * n_pairs;
  std::vector<std::vector<double>> seeds;
  seeds.push_back(std::vector<double>(dim, 0.0));
  if (opt.n_starts > 1) {
    std::vector<double> x(dim, 0.0);
    for (int j = 0; j < n_pairs; ++j) x[2 * j] = kPi / 2.0;
    seeds.push_back(std::move(x));
  }
  const int rest = opt.n_starts - static_cast<int>(seeds.size());
  if (rest <= 0) return seeds;

  std::mt19937_64 rng(opt.seed);
  std::vector<std::vector<int>> perms(dim);
  for (auto& perm : perms) {
    perm.resize(rest);
    for (int i = 0; i < rest; ++i) perm[i] = i;
    for (int i = rest - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng() % static_cast<std::uint64_t>(i + 1)]);
    }
  }
  for (int s = 0; s < rest; ++s) {
    std::vector<double> x(dim);
    for (int d = 0; d < dim; ++d) {
      const double range = (d % 2 == 0) ? kPi : 2.0 * kPi;
      const int cell = perms[d][s] % opt.grid_resolution;
      x[d] = (cell + unit_draw(rng)) / opt.grid_resolution * range;
    }
    seeds.push_back(std::move(x));
  }
  return seeds;
}

MeasurementBasis basis_from(std::span<const double> x) {
  MeasurementBasis b;
  for (std::size_t j = 0; 2 * j + 1 < x.size(); ++j) b.angles.push_back({x[2 * j], x[2 * j + 1]});
  return b.canonical();
}

struct MultiStartResult {
  std::vector<double> x;
  double value;
  int agreeing;
  int failed;
};

// Minimizes `f` from every seed, running starts on a small worker pool. The
// best converged start wins; ties go to the lowest start index.
MultiStartResult multistart(const Objective& f, int n_pairs, const OptimizationConfig& opt) {
  const auto seeds = seed_points(n_pairs, opt);
  std::vector<SimplexResult> results(seeds.size());

  SimplexOptions so;
  so.max_iterations = opt.max_iterations;
  so.f_tol = opt.f_tol;
  so.initial_step = kInitialStep;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      results[i] = nelder_mead(f, seeds[i], so);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto n_workers = static_cast<unsigned>(std::min<std::size_t>(hw, seeds.size()));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  int failed = 0;
  for (const auto& r : results) failed += r.converged ? 0 : 1;
  const bool any_converged = failed < static_cast<int>(results.size());

  std::size_t best = results.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (any_converged && !results[i].converged) continue;
    if (best == results.size() || results[i].value < results[best].value) best = i;
  }
  int agreeing = 0;
  for (const auto& r : results) {
    if (r.converged && std::abs(r.value - results[best].value) <= kAgreement) ++agreeing;
  }
  return {results[best].x, results[best].value, agreeing, failed};
}

}  // namespace

MeasurementBasis MeasurementBasis::computational(int n_sites) {
  MeasurementBasis b;
  b.angles.assign(n_sites, BlochAngles{});
  return b;
}

MeasurementBasis MeasurementBasis::canonical() const {
  MeasurementBasis out;
  for (auto a : angles) {
    double theta = wrap(a.theta, 2.0 * kPi);
    double phi = a.phi;
    if (theta > kPi) {
      theta = 2.0 * kPi - theta;
      phi += kPi;
    }
    out.angles.push_back({theta, wrap(phi, 2.0 * kPi)});
  }
  return out;
}

ProjectorPair local_projectors(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw DomainError("measurement angles must be finite");
  }
  const Eigen::Matrix2cd u = site_unitary(theta, phi);
  const Eigen::Vector2cd v = u.col(0);
  const Eigen::Vector2cd w = u.col(1);
  return {v * v.adjoint(), w * w.adjoint()};
}

Operator measurement_unitary(const MeasurementBasis& basis) {
  Operator u = Operator::Identity(1, 1);
  for (const auto& a : basis.angles) {
    u = tensor_product(u, Operator(site_unitary(a.theta, a.phi)));
  }
  return u;
}

DensityMatrix dephase(const DensityMatrix& rho, const MeasurementBasis& basis) {
  const int n = rho.n_sites();
  if (basis.n_sites() != n) throw DomainError("measurement basis does not match site count");

  std::vector<ProjectorPair> local;
  for (const auto& a : basis.angles) local.push_back(local_projectors(a.theta, a.phi));

  Operator out = Operator::Zero(rho.dim(), rho.dim());
  std::vector<Operator> factors(n);
  for (Eigen::Index k = 0; k < rho.dim(); ++k) {
    for (int j = 0; j < n; ++j) {
      factors[j] = ((k >> (n - 1 - j)) & 1) ? local[j].minus : local[j].plus;
    }
    const Operator proj = tensor_product(factors);
    out += proj * rho.matrix() * proj;
  }
  StateTolerance tol;
  tol.hermiticity = 1e-9;
  tol.trace = 1e-9;
  return DensityMatrix(hermitize(out), tol);
}

double mutual_information(const DensityMatrix& rho, const Bipartition& cut) {
  if (cut.a.empty() || cut.b.empty()) throw DomainError("bipartition groups must be non-empty");
  if (static_cast<int>(cut.a.size() + cut.b.size()) != rho.n_sites()) {
    throw DomainError("bipartition must cover every site exactly once");
  }
  const double s_a = von_neumann_entropy(partial_trace(rho, cut.a));
  const double s_b = von_neumann_entropy(partial_trace(rho, cut.b));
  return s_a + s_b - von_neumann_entropy(rho);
}

void OptimizationConfig::validate() const {
  if (n_starts < 1) throw DomainError("n_starts must be at least 1");
  if (grid_resolution < 1) throw DomainError("grid_resolution must be at least 1");
  if (max_iterations < 1) throw DomainError("max_iterations must be at least 1");
  if (!(f_tol > 0.0)) throw DomainError("f_tol must be positive");
}

CorrelationReport qd_asymmetric(const DensityMatrix& rho_ab, MeasuredSide side,
                                const OptimizationConfig& opt) {
  opt.validate();
  if (rho_ab.n_sites() != 2) throw DomainError("asymmetric discord needs a two-site state");

  const int measured = side == MeasuredSide::second ? 2 : 1;
  const int other = 3 - measured;
  const std::array<int, 1> keep_other{other};
  const double s_other = von_neumann_entropy(partial_trace(rho_ab, keep_other));
  const double info = mutual_information(rho_ab, Bipartition{{1}, {2}});

  // Reorder so the measured site is the second tensor factor.
  const std::array<int, 2> order{other, measured};
  const Operator rho = partial_trace(rho_ab.matrix(), 2, order);

  // Negative classical correlation for a measurement with the given angles.
  auto neg_classical = [&](std::span<const double> x) {
    const Eigen::Matrix2cd u = site_unitary(x[0], x[1]);
    double conditional = 0.0;
    for (int k = 0; k < 2; ++k) {
      const Eigen::Vector2cd v = u.col(k);
      // Tr_B[(I (x) |v><v|) rho] = sum_{b,b'} conj(v_b) v_b' rho_{(a,b),(a',b')}
      Eigen::Matrix2cd cond = Eigen::Matrix2cd::Zero();
      for (int a = 0; a < 2; ++a) {
        for (int ap = 0; ap < 2; ++ap) {
          Complex acc = 0.0;
          for (int b = 0; b < 2; ++b) {
            for (int bp = 0; bp < 2; ++bp) {
              acc += std::conj(v(b)) * rho(2 * a + b, 2 * ap + bp) * v(bp);
            }
          }
          cond(a, ap) = acc;
        }
      }
      const double p = cond.trace().real();
      if (p < kOutcomeFloor) continue;
      conditional += p * normalized_entropy_2x2(cond, p);
    }
    return -(s_other - conditional);
  };

  const MultiStartResult best = multistart(neg_classical, 1, opt);
  CorrelationReport report;
  report.value = std::max(0.0, info + best.value);
  report.optimal_basis = basis_from(best.x);
  report.starts_agreeing = best.agreeing;
  report.starts_failed = best.failed;
  return report;
}

double gqd_objective(const DensityMatrix& rho, const MeasurementBasis& basis) {
  const int n = rho.n_sites();
  if (basis.n_sites() != n) throw DomainError("measurement basis does not match site count");

  double value = relative_entropy(rho, dephase(rho, basis));
  for (int j = 1; j <= n; ++j) {
    const std::array<int, 1> keep{j};
    const DensityMatrix local = partial_trace(rho, keep);
    MeasurementBasis local_basis;
    local_basis.angles.push_back(basis.angles[j - 1]);
    value -= relative_entropy(local, dephase(local, local_basis));
  }
  if (!std::isfinite(value)) {
    throw std::logic_error("GQD objective hit a support violation in its own dephasing");
  }
  return value;
}

GqdEvaluator::GqdEvaluator(const DensityMatrix& rho)
    : rho_(rho.matrix()), n_sites_(rho.n_sites()) {
  entropy_offset_ = von_neumann_entropy(rho);
  for (int j = 1; j <= n_sites_; ++j) {
    const std::array<int, 1> keep{j};
    entropy_offset_ -= von_neumann_entropy(partial_trace(rho, keep));
  }
}

double GqdEvaluator::operator()(const MeasurementBasis& basis) const {
  std::vector<double> x;
  for (const auto& a : basis.angles) {
    x.push_back(a.theta);
    x.push_back(a.phi);
  }
  return (*this)(x);
}

double GqdEvaluator::operator()(std::span<const double> angles) const {
  if (static_cast<int>(angles.size()) != 2 * n_sites_) {
    throw DomainError("angle vector does not match site count");
  }
  Operator u = Operator::Identity(1, 1);
  for (int j = 0; j < n_sites_; ++j) {
    u = tensor_product(u, Operator(site_unitary(angles[2 * j], angles[2 * j + 1])));
  }
  const Operator m = rho_ * u;
  const Eigen::Index dim = rho_.rows();
  std::vector<double> p(dim);
  std::vector<double> marginals(2 * n_sites_, 0.0);
  for (Eigen::Index k = 0; k < dim; ++k) {
    p[k] = (u.col(k).adjoint() * m.col(k))(0, 0).real();
    for (int j = 0; j < n_sites_; ++j) {
      marginals[2 * j + ((k >> (n_sites_ - 1 - j)) & 1)] += p[k];
    }
  }
  double value = shannon_entropy(p) - entropy_offset_;
  for (int j = 0; j < n_sites_; ++j) {
    value -= shannon_entropy(std::span<const double>(marginals).subspan(2 * j, 2));
  }
  return value;
}

CorrelationReport minimize_gqd(const DensityMatrix& rho, const OptimizationConfig& opt) {
  opt.validate();
  const GqdEvaluator evaluator(rho);
  const MultiStartResult best =
      multistart([&](std::span<const double> x) { return evaluator(x); }, rho.n_sites(), opt);

  CorrelationReport report;
  report.optimal_basis = basis_from(best.x);
  report.value = std::max(0.0, gqd_objective(rho, report.optimal_basis));
  report.starts_agreeing = best.agreeing;
  report.starts_failed = best.failed;
  return report;
}

CorrelationReport bipartite_gqd(const DensityMatrix& rho, std::pair<int, int> sites,
                                const OptimizationConfig& opt) {
  if (sites.first == sites.second) throw DomainError("bipartite GQD needs two distinct sites");
  const std::array<int, 2> keep{sites.first, sites.second};
  return minimize_gqd(partial_trace(rho, keep), opt);
}

double TripartiteCorrelations::mgqd() const {
  return gqd_123.value - gqd_12.value - gqd_13.value - gqd_23.value;
}

ResidualDiscords TripartiteCorrelations::residuals() const {
  const double whole = gqd_123.value;
  return {whole - gqd_12.value - gqd_13.value, whole - gqd_12.value - gqd_23.value,
          whole - (2.0 / 3.0) * (gqd_12.value + gqd_13.value + gqd_23.value)};
}

TripartiteCorrelations tripartite_correlations(const DensityMatrix& rho,
                                               const OptimizationConfig& opt) {
  if (rho.n_sites() != 3) throw DomainError("tripartite measures need a three-site state");
  return {minimize_gqd(rho, opt), bipartite_gqd(rho, {1, 2}, opt),
          bipartite_gqd(rho, {1, 3}, opt), bipartite_gqd(rho, {2, 3}, opt)};
}

double mgqd(const DensityMatrix& rho, const OptimizationConfig& opt) {
  return tripartite_correlations(rho, opt).mgqd();
}

ResidualDiscords residual_discords(const DensityMatrix& rho, const OptimizationConfig& opt) {
  return tripartite_correlations(rho, opt).residuals();
}

Operator bell_diagonal_state(double c1, double c2, double c3) {
  const std::array<double, 4> weights{(1.0 + c1 - c2 + c3) / 4.0, (1.0 - c1 + c2 + c3) / 4.0,
                                      (1.0 + c1 + c2 - c3) / 4.0, (1.0 - c1 - c2 - c3) / 4.0};
  for (double w : weights) {
    if (w < -1e-12) throw DomainError("correlation triple gives a negative Bell weight");
  }
  Operator rho = Operator::Zero(4, 4);
  rho(0, 0) = rho(3, 3) = (1.0 + c3) / 4.0;
  rho(1, 1) = rho(2, 2) = (1.0 - c3) / 4.0;
  rho(0, 3) = rho(3, 0) = (c1 - c2) / 4.0;
  rho(1, 2) = rho(2, 1) = (c1 + c2) / 4.0;
  return rho;
}

double bell_diagonal_qd_oracle(double c1, double c2, double c3) {
  const std::array<double, 4> weights{(1.0 + c1 - c2 + c3) / 4.0, (1.0 - c1 + c2 + c3) / 4.0,
                                      (1.0 + c1 + c2 - c3) / 4.0, (1.0 - c1 - c2 - c3) / 4.0};
  for (double w : weights) {
    if (w < -1e-12) throw DomainError("correlation triple gives a negative Bell weight");
  }
  const double info = 2.0 - shannon_entropy(weights);
  const double c = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
  auto term = [](double x) { return x <= 0.0 ? 0.0 : 0.5 * x * std::log2(x); };
  const double classical = term(1.0 - c) + term(1.0 + c);
  return info - classical;
}

}  // namespace polqd
