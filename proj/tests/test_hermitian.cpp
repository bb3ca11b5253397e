/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <algorithm>
#include <cmath>
#include <numbers>

#include <catch2/catch_amalgamated.hpp>

#include "brb/error.hpp"
#include "brb/hermitian.hpp"
#include "test_support.hpp"

using namespace brb;
using Catch::Approx;

namespace {

ComplexMatrix chsh_c4() {
  const double s = 1.0 / std::sqrt(2.0);
  const ComplexMatrix a1 = pauli::z();
  const ComplexMatrix a2 = pauli::x();
  const ComplexMatrix b1 = complex(s) * (pauli::z() + pauli::x());
  const ComplexMatrix b2 = complex(s) * (pauli::z() - pauli::x());
  return tensor(a1, b1) + tensor(a1, b2) + tensor(a2, b1) - tensor(a2, b2);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("eig_hermitian on fixed inputs", "[hermitian]") {
  SECTION("pauli z") {
    const Spectrum s = eig_hermitian(pauli::z());
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == Approx(1.0).margin(1e-15));
    CHECK(s.values[1] == Approx(-1.0).margin(1e-15));
  }
  SECTION("CHSH operator with Tsirelson settings") {
    const Spectrum s = eig_hermitian(chsh_c4());
    const double t = 2.0 * std::numbers::sqrt2;
    CHECK(s.values[0] == Approx(t).margin(1e-12));
    CHECK(s.values[1] == Approx(0.0).margin(1e-12));
    CHECK(s.values[2] == Approx(0.0).margin(1e-12));
    CHECK(s.values[3] == Approx(-t).margin(1e-12));
  }
  SECTION("non-Hermitian input is rejected") {
    ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
    try {
      eig_hermitian(m);
      FAIL("expected NotHermitian");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotHermitian);
    }
  }
}

TEST_CASE("eig_hermitian spectrum invariants on random matrices",
          "[hermitian][property]") {
  std::mt19937_64 rng(0xB311);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 6;
    const ComplexMatrix a = testing::random_hermitian(d, rng);
    const Spectrum s = eig_hermitian(a);

    for (std::size_t i = 0; i + 1 < d; ++i) {
      REQUIRE(s.values[i] >= s.values[i + 1]);
    }
    const Eigen::MatrixXcd gram = s.vectors.adjoint() * s.vectors;
    REQUIRE((gram - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() <=
            1e-10);
    REQUIRE(max_abs_diff(a, s.reconstruct()) <= 1e-10 * (1.0 + a.max_abs()));

    // Independent solver agrees on the values.
    const Eigen::VectorXd ref = testing::reference_eigenvalues(a);
    for (std::size_t i = 0; i < d; ++i) {
      REQUIRE(s.values[i] ==
              Approx(ref[Eigen::Index(d - 1 - i)]).margin(1e-10));
    }
  }
}

TEST_CASE("eig_hermitian is shift covariant and deterministic",
          "[hermitian][property]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + std::size_t(trial % 7);
    const ComplexMatrix a = testing::random_hermitian(d, rng);
    const double c = shift(rng);
    const Spectrum s0 = eig_hermitian(a);
    const Spectrum s1 = eig_hermitian(a + complex(c) * ComplexMatrix::identity(d));
    for (std::size_t i = 0; i < d; ++i) {
      REQUIRE(std::abs(s1.values[i] - s0.values[i] - c) <= 1e-10);
    }
    const Spectrum again = eig_hermitian(a);
    REQUIRE(again.values == s0.values);
    REQUIRE(again.vectors == s0.vectors);
  }
}

TEST_CASE("degenerate eigenvectors are ordered deterministically",
          "[hermitian]") {
  // Identity has a fully degenerate spectrum: vectors must come out as the
  // canonical basis in lexicographic order.
  const Spectrum s = eig_hermitian(ComplexMatrix::identity(3));
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK((s.vector(k) - testing::basis_vector(3, k)).norm() < 1e-14);
  }
  // Phase normalization: first significant entry is real positive.
  std::mt19937_64 rng(3);
  const Spectrum r = eig_hermitian(testing::random_hermitian(5, rng));
  for (std::size_t k = 0; k < 5; ++k) {
    const ComplexVector v = r.vector(k);
    Eigen::Index first = 0;
    while (std::abs(v[first]) <= 1e-8) ++first;
    CHECK(v[first].real() > 0.0);
    CHECK(std::abs(v[first].imag()) < 1e-14);
  }
}

TEST_CASE("tensor product", "[hermitian]") {
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(tensor(id2, id2), ComplexMatrix::identity(4)) == 0.0);

  const ComplexMatrix zz = tensor(pauli::z(), pauli::z());
  const double expected[4] = {1, -1, -1, 1};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(zz(i, j) == complex(i == j ? expected[i] : 0.0));

  const ComplexMatrix xx = tensor(pauli::x(), pauli::x());
  const ComplexVector ket00 = testing::basis_vector(4, 0);
  const ComplexVector out = xx.eigen() * ket00;
  CHECK((out - testing::basis_vector(4, 3)).norm() == 0.0);

  SECTION("dimension cap") {
    try {
      tensor(ComplexMatrix::identity(16), ComplexMatrix::identity(17));
      FAIL("expected DimensionOverflow");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionOverflow);
    }
    CHECK(tensor(ComplexMatrix::identity(16), ComplexMatrix::identity(16))
              .dim() == 256);
  }
}

TEST_CASE("tensor spectrum is the product of spectra", "[hermitian][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = testing::random_hermitian(3, rng);
    const ComplexMatrix b = testing::random_hermitian(2, rng);
    const Spectrum sa = eig_hermitian(a);
    const Spectrum sb = eig_hermitian(b);
    std::vector<double> products;
    for (double x : sa.values)
      for (double y : sb.values) products.push_back(x * y);
    std::sort(products.rbegin(), products.rend());
    const Spectrum sab = eig_hermitian(tensor(a, b));
    for (std::size_t i = 0; i < products.size(); ++i) {
      REQUIRE(sab.values[i] == Approx(products[i]).margin(1e-9));
    }
  }
}

TEST_CASE("commutator_norm", "[hermitian]") {
  CHECK(commutator_norm(pauli::z(), pauli::x()) == Approx(2.0).margin(1e-14));
  CHECK(commutator_norm(pauli::z(), pauli::z()) == Approx(0.0).margin(1e-14));

  const double theta = std::numbers::pi / 6.0;
  const ComplexMatrix rotated =
      complex(std::cos(theta)) * pauli::z() + complex(std::sin(theta)) * pauli::x();
  const double value = commutator_norm(pauli::z(), rotated);
  CHECK(value == Approx(2.0 * std::sin(theta)).margin(1e-12));

  // Oracle: largest singular value of the dense commutator.
  const Eigen::MatrixXcd comm = pauli::z().eigen() * rotated.eigen() -
                                rotated.eigen() * pauli::z().eigen();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(comm);
  CHECK(value == Approx(svd.singularValues()[0]).margin(1e-12));

  try {
    commutator_norm(pauli::z(), ComplexMatrix::identity(3));
    FAIL("expected DimMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimMismatch);
  }
}

TEST_CASE("partial transpose", "[hermitian]") {
  const std::vector<std::size_t> dims{2, 2};

  SECTION("product state unchanged") {
    const DensityState rho(ComplexMatrix::projector(testing::basis_vector(4, 0)),
                           dims);
    CHECK(max_abs_diff(partial_transpose(rho, 1), rho.matrix()) == 0.0);
    CHECK(max_abs_diff(partial_transpose(rho, 0), rho.matrix()) == 0.0);
  }
  SECTION("maximally entangled state") {
    ComplexVector phi = ComplexVector::Zero(4);
    phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
    const DensityState rho(ComplexMatrix::projector(phi), dims);
    const Spectrum s = eig_hermitian(partial_transpose(rho, 1));
    CHECK(s.values.back() == Approx(-0.5).margin(1e-14));
  }
  SECTION("Bell-diagonal state with lambda = (0.6, 0.4, 0, 0)") {
    ComplexVector phi_plus = ComplexVector::Zero(4);
    ComplexVector phi_minus = ComplexVector::Zero(4);
    phi_plus[0] = phi_plus[3] = 1.0 / std::sqrt(2.0);
    phi_minus[0] = 1.0 / std::sqrt(2.0);
    phi_minus[3] = -1.0 / std::sqrt(2.0);
    const DensityState rho(complex(0.6) * ComplexMatrix::projector(phi_plus) +
                               complex(0.4) * ComplexMatrix::projector(phi_minus),
                           dims);
    const Spectrum s = eig_hermitian(partial_transpose(rho, 1));
    CHECK(s.values.back() == Approx(0.5 - 0.6).margin(1e-12));
  }
  SECTION("involution on random states") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const DensityState rho(testing::random_density(6, rng), {2, 3});
      for (std::size_t sub : {0u, 1u}) {
        const ComplexMatrix once = partial_transpose(rho, sub);
        REQUIRE(once.is_hermitian());
        const ComplexMatrix twice = partial_transpose(once, rho.dims(), sub);
        REQUIRE(max_abs_diff(twice, rho.matrix()) == 0.0);
      }
    }
  }
  SECTION("bad subsystem") {
    const DensityState rho = DensityState::maximally_mixed({2, 2});
    try {
      partial_transpose(rho, 2);
      FAIL("expected BadSubsystem");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadSubsystem);
    }
    const DensityState single = DensityState::maximally_mixed({4});
    CHECK_THROWS_AS(partial_transpose(single, 0), Error);
  }
}

TEST_CASE("herm_exp", "[hermitian]") {
  std::mt19937_64 rng(9);
  const ComplexMatrix a = testing::random_hermitian(4, rng);
  CHECK(max_abs_diff(herm_exp(a, 0.0), ComplexMatrix::identity(4)) < 1e-14);

  const ComplexMatrix ez = herm_exp(pauli::z(), 1.0);
  CHECK(ez(0, 0).real() == Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(ez(1, 1).real() == Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(std::abs(ez(0, 1)) < 1e-15);

  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix h = testing::random_hermitian(5, rng);
    const ComplexMatrix prod = herm_exp(h, 1.0) * herm_exp(h, -1.0);
    REQUIRE(max_abs_diff(prod, ComplexMatrix::identity(5)) < 1e-9);
    REQUIRE(eig_hermitian(herm_exp(h, 1.0)).values.back() > 0.0);
  }
}

TEST_CASE("state_functionals", "[hermitian]") {
  SECTION("maximally mixed") {
    const auto f = state_functionals(DensityState::maximally_mixed({4}));
    CHECK(f.linear_purity == Approx(0.25).margin(1e-15));
    CHECK(f.renyi2_purity == Approx(0.0).margin(1e-14));
    CHECK(f.entropy == Approx(std::log(4.0)).margin(1e-14));
    CHECK(f.lambda1 == Approx(0.25).margin(1e-14));
  }
  SECTION("pure") {
    std::mt19937_64 rng(1);
    const Eigen::MatrixXcd u = testing::random_unitary(3, rng);
    const DensityState rho(ComplexMatrix::projector(u.col(0)));
    const auto f = state_functionals(rho);
    CHECK(f.linear_purity == Approx(1.0).margin(1e-12));
    CHECK(f.renyi2_purity == Approx(std::log2(3.0)).margin(1e-12));
    CHECK(f.entropy == Approx(0.0).margin(1e-10));
    CHECK(f.lambda1 == Approx(1.0).margin(1e-12));
  }
  SECTION("diag(0.75, 0.25)") {
    const DensityState rho(ComplexMatrix{{0.75, 0.0}, {0.0, 0.25}});
    const auto f = state_functionals(rho);
    // 0.75^2 + 0.25^2 = 0.5625 + 0.0625
    CHECK(f.linear_purity == Approx(0.625).margin(1e-15));
    CHECK(f.renyi2_purity == Approx(std::log2(1.25)).margin(1e-15));
    CHECK(f.lambda1 == Approx(0.75).margin(1e-15));
  }
  SECTION("Tr rho^2 equals the sum of squared eigenvalues") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      const DensityState rho(testing::random_density(5, rng));
      const Spectrum s = eig_hermitian(rho.matrix());
      double sum = 0.0;
      for (double l : s.values) sum += l * l;
      REQUIRE(state_functionals(rho).linear_purity == Approx(sum).margin(1e-10));
    }
  }
}

TEST_CASE("DensityState validation", "[hermitian]") {
  CHECK_THROWS_AS(DensityState(ComplexMatrix{{0.5, 0.0}, {0.0, 0.6}}), Error);
  CHECK_THROWS_AS(DensityState(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), Error);
  CHECK_THROWS_AS(DensityState(ComplexMatrix::identity(4) * complex(0.25), {2, 3}),
                  Error);
  CHECK_NOTHROW(DensityState(ComplexMatrix::identity(4) * complex(0.25), {2, 2}));
}
