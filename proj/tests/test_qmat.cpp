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

#include <array>
#include <cmath>
#include <limits>

#include "polqd/qmat.hpp"
#include "test_support.hpp"

using namespace polqd;
using namespace polqd::testing;

namespace {

DensityMatrix bell_phi_plus() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix(psi * psi.adjoint());
}

}  // namespace

TEST_CASE("tensor_product ordering and identities") {
  const Operator i2 = Operator::Identity(2, 2);
  CHECK(max_abs(tensor_product(i2, i2) - Operator::Identity(4, 4)) == 0.0);
  CHECK(max_abs(tensor_product(pauli_z(), i2) - diag({1, 1, -1, -1})) == 0.0);
}

TEST_CASE("tensor_product mixed-product rule on random inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator a = random_matrix(rng, 2), b = random_matrix(rng, 2);
    const Operator c = random_matrix(rng, 2), d = random_matrix(rng, 2);
    const Operator lhs = tensor_product(a, b) * tensor_product(c, d);
    const Operator rhs = tensor_product(Operator(a * c), Operator(b * d));
    CHECK(max_abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("tensor_product is associative") {
  std::mt19937_64 rng(8);
  const Operator a = random_matrix(rng, 2), b = random_matrix(rng, 4), c = random_matrix(rng, 2);
  const Operator left = tensor_product(tensor_product(a, b), c);
  const Operator right = tensor_product(a, tensor_product(b, c));
  CHECK(max_abs(left - right) <= 1e-12);
}

TEST_CASE("partial_trace examples") {
  std::mt19937_64 rng(11);
  SUBCASE("product state factorizes") {
    const DensityMatrix a = random_state(rng, 1), b = random_state(rng, 2);
    const DensityMatrix ab(tensor_product(a.matrix(), b.matrix()));
    const std::array<int, 1> keep_a{1};
    const std::array<int, 2> keep_b{2, 3};
    CHECK(max_abs(partial_trace(ab, keep_a).matrix() - a.matrix()) < 1e-12);
    CHECK(max_abs(partial_trace(ab, keep_b).matrix() - b.matrix()) < 1e-12);
  }
  SUBCASE("Bell state reduces to I/2") {
    const std::array<int, 1> keep{1};
    const Operator reduced = partial_trace(bell_phi_plus(), keep).matrix();
    CHECK(max_abs(reduced - 0.5 * Operator::Identity(2, 2)) < 1e-15);
  }
  SUBCASE("trace preserved on random three-site states") {
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = random_state(rng, 3);
      for (auto keep : {std::vector<int>{1}, std::vector<int>{2, 3}, std::vector<int>{3, 1}}) {
        const Operator r = partial_trace(rho.matrix(), 3, keep);
        CHECK(std::abs(r.trace() - Complex(1.0)) < 1e-12);
        CHECK(max_abs(r - r.adjoint()) < 1e-12);
      }
    }
  }
  SUBCASE("keep order sets the output factor order") {
    const DensityMatrix a = random_state(rng, 1), b = random_state(rng, 1);
    const DensityMatrix ab(tensor_product(a.matrix(), b.matrix()));
    const std::array<int, 2> swapped{2, 1};
    CHECK(max_abs(partial_trace(ab, swapped).matrix() -
                  tensor_product(b.matrix(), a.matrix())) < 1e-14);
  }
}

TEST_CASE("partial_trace composition") {
  std::mt19937_64 rng(12);
  const DensityMatrix rho = random_state(rng, 3);
  const std::array<int, 0> none{};
  const Operator scalar = partial_trace(rho.matrix(), 3, none);
  CHECK(scalar.rows() == 1);
  CHECK(std::abs(scalar(0, 0) - rho.matrix().trace()) < 1e-12);

  const std::array<int, 2> drop3{1, 2};
  const std::array<int, 1> then_drop2{1};
  const std::array<int, 1> at_once{1};
  const Operator iterated = partial_trace(partial_trace(rho.matrix(), 3, drop3), 2, then_drop2);
  CHECK(max_abs(iterated - partial_trace(rho.matrix(), 3, at_once)) <= 1e-12);
}

TEST_CASE("partial_trace rejects bad sites") {
  std::mt19937_64 rng(13);
  const DensityMatrix rho = random_state(rng, 2);
  const std::array<int, 1> out_of_range{3};
  const std::array<int, 2> duplicate{1, 1};
  const std::array<int, 1> zero{0};
  CHECK_THROWS_AS(partial_trace(rho, out_of_range), DomainError);
  CHECK_THROWS_AS(partial_trace(rho, duplicate), DomainError);
  CHECK_THROWS_AS(partial_trace(rho, zero), DomainError);
}

TEST_CASE("hermitian_eig") {
  const Spectrum sx = hermitian_eig(pauli_x());
  CHECK(sx.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sx.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));

  const Spectrum d = hermitian_eig(diag({0.3, -2.0, 5.0, 1.0}));
  CHECK(d.eigenvalues(0) == doctest::Approx(-2.0));
  CHECK(d.eigenvalues(1) == doctest::Approx(0.3));
  CHECK(d.eigenvalues(2) == doctest::Approx(1.0));
  CHECK(d.eigenvalues(3) == doctest::Approx(5.0));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator m = random_hermitian(rng, 8);
    const Spectrum sp = hermitian_eig(m);
    const Operator v = sp.eigenvectors;
    const Operator rebuilt =
        v * sp.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    CHECK(max_abs(rebuilt - m) <= 1e-9);
    CHECK(max_abs(v.adjoint() * v - Operator::Identity(8, 8)) <= 1e-10);
    for (Eigen::Index k = 1; k < 8; ++k) CHECK(sp.eigenvalues(k - 1) <= sp.eigenvalues(k));
  }

  Operator non_hermitian = Operator::Zero(2, 2);
  non_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(non_hermitian), DomainError);
}

TEST_CASE("von_neumann_entropy") {
  CHECK(von_neumann_entropy(DensityMatrix(0.5 * Operator::Identity(2, 2))) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(von_neumann_entropy(bell_phi_plus()) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix(diag({0.75, 0.25}))) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-14));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_state(rng, 3);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= 0.0);
    CHECK(s <= 3.0 + 1e-12);
    const Operator u = random_unitary(rng, 8);
    const DensityMatrix rotated(hermitize(u * rho.matrix() * u.adjoint()));
    CHECK(std::abs(von_neumann_entropy(rotated) - s) <= 1e-9);
  }
}

TEST_CASE("entropy clamping window") {
  const std::array<double, 3> tiny_negative{0.5, 0.5 + 5e-9, -5e-9};
  CHECK(shannon_entropy(tiny_negative) == doctest::Approx(1.0).epsilon(1e-7));
  const std::array<double, 2> too_negative{1.0 + 1e-6, -1e-6};
  CHECK_THROWS_AS(shannon_entropy(too_negative), DomainError);
}

TEST_CASE("relative_entropy") {
  std::mt19937_64 rng(41);
  SUBCASE("self divergence vanishes") {
    const DensityMatrix rho = random_state(rng, 2);
    CHECK(std::abs(relative_entropy(rho, rho)) < 1e-12);
  }
  SUBCASE("qubit example") {
    const DensityMatrix mixed(0.5 * Operator::Identity(2, 2));
    const DensityMatrix biased(diag({0.75, 0.25}));
    CHECK(relative_entropy(mixed, biased) == doctest::Approx(0.20751874963942196).epsilon(1e-13));
  }
  SUBCASE("equals mutual information against the product of marginals") {
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = random_state(rng, 2);
      const std::array<int, 1> a{1}, b{2};
      const DensityMatrix ra = partial_trace(rho, a), rb = partial_trace(rho, b);
      const double info =
          von_neumann_entropy(ra) + von_neumann_entropy(rb) - von_neumann_entropy(rho);
      const DensityMatrix product(tensor_product(ra.matrix(), rb.matrix()));
      CHECK(std::abs(relative_entropy(rho, product) - info) < 1e-10);
    }
  }
  SUBCASE("Klein inequality") {
    for (int trial = 0; trial < 50; ++trial) {
      const DensityMatrix rho = random_state(rng, 2);
      const DensityMatrix sigma = random_state(rng, 2);
      CHECK(relative_entropy(rho, sigma) >= -1e-9);
    }
  }
  SUBCASE("support violation is infinite, not an error") {
    const DensityMatrix excited(diag({1.0, 0.0}));
    const DensityMatrix ground(diag({0.0, 1.0}));
    const double d = relative_entropy(excited, ground);
    CHECK(std::isinf(d));
    CHECK(d > 0.0);
    // pure state against a state containing its support is finite
    const DensityMatrix mixed(0.5 * Operator::Identity(2, 2));
    CHECK(relative_entropy(excited, mixed) == doctest::Approx(1.0));
  }
}

TEST_CASE("DensityMatrix guards") {
  CHECK_THROWS_AS(DensityMatrix(diag({0.6, 0.6})), DomainError);
  CHECK_THROWS_AS(DensityMatrix(diag({1.1, -0.1})), DomainError);
  Operator skew = 0.5 * Operator::Identity(2, 2);
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{skew}, DomainError);
  CHECK_THROWS_AS(DensityMatrix(Operator::Identity(3, 3) / 3.0), DomainError);
  CHECK_NOTHROW(DensityMatrix(diag({1.0 + 5e-9, -5e-9})));
}
