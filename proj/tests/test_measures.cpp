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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "polqd/measures.hpp"
#include "polqd/scenarios.hpp"
#include "test_support.hpp"

using namespace polqd;
using namespace polqd::testing;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix pure(std::initializer_list<std::pair<Eigen::Index, double>> amplitudes, int dim) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  for (auto [i, a] : amplitudes) psi(i) = a;
  psi.normalize();
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix bell_phi_plus() { return pure({{0, 1.0}, {3, 1.0}}, 4); }
DensityMatrix ghz() { return pure({{0, 1.0}, {7, 1.0}}, 8); }

MeasurementBasis random_basis(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MeasurementBasis b;
  for (int i = 0; i < n; ++i) b.angles.push_back({kPi * u(rng), 2.0 * kPi * u(rng)});
  return b;
}

DensityMatrix random_product_state(std::mt19937_64& rng, int n) {
  Operator m = random_state(rng, 1).matrix();
  for (int i = 1; i < n; ++i) m = tensor_product(m, random_state(rng, 1).matrix());
  return DensityMatrix(m);
}

DensityMatrix rotate_locally(const DensityMatrix& rho, std::mt19937_64& rng) {
  Operator u = random_unitary(rng, 2);
  for (int i = 1; i < rho.n_sites(); ++i) u = tensor_product(u, random_unitary(rng, 2));
  return DensityMatrix(hermitize(u * rho.matrix() * u.adjoint()));
}

OptimizationConfig quick() {
  OptimizationConfig c;
  c.n_starts = 8;
  return c;
}

}  // namespace

TEST_CASE("local projectors") {
  const ProjectorPair z = local_projectors(0.0, 0.0);
  CHECK(max_abs(z.plus - diag({1.0, 0.0})) < 1e-15);
  CHECK(max_abs(z.minus - diag({0.0, 1.0})) < 1e-15);

  const ProjectorPair x = local_projectors(kPi / 2, 0.0);
  CHECK(max_abs(x.plus - 0.5 * (Operator::Identity(2, 2) + pauli_x())) < 1e-15);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const ProjectorPair p = local_projectors(u(rng), u(rng));
    CHECK(max_abs(p.plus + p.minus - Operator::Identity(2, 2)) < 1e-14);
    CHECK(max_abs(p.plus * p.minus) < 1e-14);
    CHECK(max_abs(p.plus * p.plus - p.plus) < 1e-14);
    CHECK(max_abs(p.plus - p.plus.adjoint()) < 1e-15);
  }
  CHECK_THROWS_AS(local_projectors(std::nan(""), 0.0), DomainError);
  CHECK_THROWS_AS(local_projectors(0.0, INFINITY), DomainError);
}

TEST_CASE("measurement unitary columns are the projector eigenvectors") {
  std::mt19937_64 rng(2);
  const MeasurementBasis b = random_basis(rng, 3);
  const Operator u = measurement_unitary(b);
  CHECK(max_abs(u.adjoint() * u - Operator::Identity(8, 8)) < 1e-14);
  const ProjectorPair p1 = local_projectors(b.angles[0].theta, b.angles[0].phi);
  const ProjectorPair p2 = local_projectors(b.angles[1].theta, b.angles[1].phi);
  const ProjectorPair p3 = local_projectors(b.angles[2].theta, b.angles[2].phi);
  const Operator first = tensor_product(tensor_product(p1.plus, p2.plus), p3.plus);
  CHECK(max_abs(first - u.col(0) * u.col(0).adjoint()) < 1e-14);
  const Operator last = tensor_product(tensor_product(p1.minus, p2.minus), p3.minus);
  CHECK(max_abs(last - u.col(7) * u.col(7).adjoint()) < 1e-14);
}

TEST_CASE("canonical basis folding") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int trial = 0; trial < 50; ++trial) {
    const MeasurementBasis b{{{u(rng), u(rng)}, {u(rng), u(rng)}}};
    const MeasurementBasis c = b.canonical();
    for (int i = 0; i < 2; ++i) {
      CHECK(c.angles[i].theta >= 0.0);
      CHECK(c.angles[i].theta <= kPi);
      CHECK(c.angles[i].phi >= 0.0);
      CHECK(c.angles[i].phi < 2.0 * kPi);
      const auto pb = local_projectors(b.angles[i].theta, b.angles[i].phi);
      const auto pc = local_projectors(c.angles[i].theta, c.angles[i].phi);
      CHECK(max_abs(pb.plus - pc.plus) < 1e-12);
    }
  }
}

TEST_CASE("dephase") {
  std::mt19937_64 rng(4);
  SUBCASE("Bell state in the computational basis") {
    const DensityMatrix d = dephase(bell_phi_plus(), MeasurementBasis::computational(2));
    CHECK(max_abs(d.matrix() - diag({0.5, 0.0, 0.0, 0.5})) < 1e-15);
  }
  SUBCASE("idempotent and trace preserving") {
    for (int trial = 0; trial < 20; ++trial) {
      const DensityMatrix rho = random_state(rng, 3);
      const MeasurementBasis b = random_basis(rng, 3);
      const DensityMatrix once = dephase(rho, b);
      const DensityMatrix twice = dephase(once, b);
      CHECK(std::abs(once.matrix().trace() - Complex(1.0)) < 1e-12);
      CHECK(max_abs(once.matrix() - twice.matrix()) < 1e-12);
      CHECK(von_neumann_entropy(once) >= von_neumann_entropy(rho) - 1e-10);
    }
  }
  SUBCASE("basis site count must match") {
    CHECK_THROWS_AS(dephase(random_state(rng, 3), MeasurementBasis::computational(2)),
                    DomainError);
  }
}

TEST_CASE("mutual information") {
  std::mt19937_64 rng(5);
  const Bipartition cut{{1}, {2}};
  CHECK(mutual_information(random_product_state(rng, 2), cut) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(mutual_information(bell_phi_plus(), cut) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mutual_information(DensityMatrix(diag({0.5, 0.0, 0.0, 0.5})), cut) ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_state(rng, 3);
    CHECK(mutual_information(rho, {{1}, {2, 3}}) >= -1e-10);
    const std::array<int, 2> keep{1, 2};
    const DensityMatrix rho_12 = partial_trace(rho, keep);
    CHECK(mutual_information(rho, {{1}, {2, 3}}) >= mutual_information(rho_12, cut) - 1e-10);
  }
}

TEST_CASE("two-site quantum discord") {
  std::mt19937_64 rng(6);
  CHECK(qd_asymmetric(random_product_state(rng, 2)).value < 1e-6);
  CHECK(qd_asymmetric(bell_phi_plus()).value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(qd_asymmetric(DensityMatrix(diag({0.5, 0.0, 0.0, 0.5}))).value < 1e-6);
  CHECK_THROWS_AS(qd_asymmetric(random_state(rng, 3)), DomainError);
}

TEST_CASE("Bell-diagonal oracle") {
  CHECK(bell_diagonal_qd_oracle(0.0, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(bell_diagonal_qd_oracle(1.0, -1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // Independent brute force: 200 x 200 (theta, phi) grid over the measurement axis.
  CHECK(bell_diagonal_qd_oracle(1.0, -0.8, 0.8) ==
        doctest::Approx(0.5310044064107189).epsilon(1e-12));
  CHECK_THROWS_AS(bell_diagonal_state(1.0, 1.0, 1.0), DomainError);

  const Operator rho = bell_diagonal_state(1.0, -0.8, 0.8);
  const Spectrum sp = hermitian_eig(rho);
  CHECK(std::abs(sp.eigenvalues(0)) < 1e-15);
  CHECK(std::abs(sp.eigenvalues(1)) < 1e-15);
  CHECK(sp.eigenvalues(2) == doctest::Approx(0.1));
  CHECK(sp.eigenvalues(3) == doctest::Approx(0.9));
}

TEST_CASE("numerical discord agrees with the Bell-diagonal closed form") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  while (checked < 20) {
    const double c1 = u(rng), c2 = u(rng), c3 = u(rng);
    Operator rho;
    try {
      rho = bell_diagonal_state(c1, c2, c3);
    } catch (const DomainError&) {
      continue;
    }
    const double expected = bell_diagonal_qd_oracle(c1, c2, c3);
    for (MeasuredSide side : {MeasuredSide::first, MeasuredSide::second}) {
      CHECK(qd_asymmetric(DensityMatrix(rho), side).value == doctest::Approx(expected).epsilon(1e-6));
    }
    ++checked;
  }
}

TEST_CASE("GQD objective: reference and fast routes agree") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 2;
    const DensityMatrix rho = random_state(rng, n);
    const MeasurementBasis b = random_basis(rng, n);
    const GqdEvaluator fast(rho);
    CHECK(std::abs(gqd_objective(rho, b) - fast(b)) < 1e-10);
    CHECK(gqd_objective(rho, b) >= -1e-10);
  }
}

TEST_CASE("GQD objective examples and symmetries") {
  CHECK(gqd_objective(ghz(), MeasurementBasis::computational(3)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gqd_objective(bell_phi_plus(), MeasurementBasis::computational(2)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_state(rng, 3);
    const MeasurementBasis b = random_basis(rng, 3);
    MeasurementBasis flipped = b;
    for (auto& a : flipped.angles) {
      a.theta = kPi - a.theta;
      a.phi += kPi;
    }
    CHECK(std::abs(gqd_objective(rho, b) - gqd_objective(rho, flipped)) < 1e-10);
  }
}

TEST_CASE("minimize_gqd on known states") {
  std::mt19937_64 rng(10);
  SUBCASE("product states carry no discord") {
    for (int trial = 0; trial < 3; ++trial) {
      CHECK(minimize_gqd(random_product_state(rng, 3), quick()).value < 1e-6);
    }
  }
  SUBCASE("GHZ") {
    const CorrelationReport r = minimize_gqd(ghz());
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.starts_agreeing >= 1);
    CHECK(r.starts_failed == 0);
  }
  SUBCASE("alpha mixtures stay at one bit") {
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      CHECK(minimize_gqd(state_mixture_alpha(alpha)).value == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  SUBCASE("report basis reproduces the value") {
    const DensityMatrix rho = random_state(rng, 3);
    const CorrelationReport r = minimize_gqd(rho, quick());
    CHECK(r.value == doctest::Approx(std::max(0.0, gqd_objective(rho, r.optimal_basis))));
    for (const auto& a : r.optimal_basis.angles) {
      CHECK(a.theta >= 0.0);
      CHECK(a.theta <= kPi);
      CHECK(a.phi >= 0.0);
      CHECK(a.phi < 2.0 * kPi);
    }
    for (int trial = 0; trial < 50; ++trial) {
      CHECK(r.value <= gqd_objective(rho, random_basis(rng, 3)) + 1e-9);
    }
  }
}

TEST_CASE("minimize_gqd is invariant under local unitaries") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const DensityMatrix rho = random_state(rng, 3);
    const double before = minimize_gqd(rho).value;
    const double after = minimize_gqd(rotate_locally(rho, rng)).value;
    CHECK(std::abs(before - after) <= 2e-3);
  }
}

TEST_CASE("minimize_gqd is deterministic") {
  std::mt19937_64 rng(12);
  const DensityMatrix rho = random_state(rng, 3);
  const CorrelationReport a = minimize_gqd(rho);
  const CorrelationReport b = minimize_gqd(rho);
  CHECK(a.value == b.value);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.optimal_basis.angles[i].theta == b.optimal_basis.angles[i].theta);
    CHECK(a.optimal_basis.angles[i].phi == b.optimal_basis.angles[i].phi);
  }
}

TEST_CASE("pairwise GQD of the alpha family") {
  // Site pair (1, 3) is Bell-diagonal with c = (1 - alpha, 1 - alpha, 2 alpha - 1).
  const std::vector<std::pair<double, double>> expected{
      {0.0, 1.0}, {0.25, 0.48228631874046346}, {0.5, 0.31127812445913283}, {0.75, 0.25}, {1.0, 0.0}};
  for (auto [alpha, gqd13] : expected) {
    const DensityMatrix rho = state_mixture_alpha(alpha);
    CHECK(bipartite_gqd(rho, {1, 3}).value == doctest::Approx(gqd13).epsilon(1e-6));
    CHECK(bipartite_gqd(rho, {1, 2}).value < 1e-6);
    CHECK(bipartite_gqd(rho, {2, 3}).value < 1e-6);
    CHECK(mgqd(rho) == doctest::Approx(1.0 - gqd13).epsilon(1e-6));
  }
  CHECK_THROWS_AS(bipartite_gqd(ghz(), {2, 2}), DomainError);
  CHECK_THROWS_AS(bipartite_gqd(ghz(), {1, 4}), DomainError);
}

TEST_CASE("residual discords") {
  SUBCASE("Bell pair on the outer sites") {
    const ResidualDiscords r = residual_discords(state_bell_pair({1, 3}));
    CHECK(r.d_r1 == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(r.d_r2 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.d_r3 == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  }
  SUBCASE("Bell pair on the last two sites") {
    const TripartiteCorrelations t = tripartite_correlations(state_bell_pair({2, 3}));
    CHECK(t.gqd_23.value == doctest::Approx(1.0).epsilon(1e-6));
    const ResidualDiscords r = t.residuals();
    CHECK(r.d_r1 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.d_r2 == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(r.d_r3 == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  }
  SUBCASE("GHZ") {
    const TripartiteCorrelations t = tripartite_correlations(ghz());
    const ResidualDiscords r = t.residuals();
    CHECK(t.mgqd() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.d_r1 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.d_r2 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.d_r3 == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("OptimizationConfig validation") {
  OptimizationConfig c;
  c.n_starts = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.grid_resolution = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.max_iterations = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.f_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
}
