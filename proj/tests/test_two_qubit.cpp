/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "brb/bell.hpp"
#include "brb/error.hpp"
#include "brb/lmi.hpp"
#include "brb/oracle.hpp"
#include "brb/spectral_bounds.hpp"
#include "brb/two_qubit.hpp"
#include "test_support.hpp"

using namespace brb;
using Catch::Approx;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected brb::Error");
  return ErrorCode::InvalidInput;
}

constexpr double kSqrt2 = std::numbers::sqrt2;

/// CHSH with A = (z, x) and B = (z, sin b x + cos b z), C = 4 sin b.
ComplexMatrix chsh_operator(double c) {
  const double sb = c / 4.0;
  CorrelationScenario s;
  s.g = {{1.0, 1.0}, {1.0, -1.0}};
  s.bloch_a = {BlochVector{0.0, 0.0, 1.0}, BlochVector{1.0, 0.0, 0.0}};
  s.bloch_b = {BlochVector{0.0, 0.0, 1.0}, BlochVector{sb, 0.0, std::sqrt(1 - sb * sb)}};
  return build_correlation_operator(s);
}

double off_diagonal(const ComplexMatrix& rho, const ProductBasis& b) {
  Eigen::MatrixXcd m = b.vectors.adjoint() * rho.eigen() * b.vectors;
  m.diagonal().setZero();
  return m.cwiseAbs().maxCoeff();
}

ComplexMatrix random_local_unitary_conjugate(const ComplexMatrix& op, std::mt19937_64& rng) {
  const ComplexMatrix u(Eigen::MatrixXcd(
      tensor(ComplexMatrix(testing::random_unitary(2, rng)),
             ComplexMatrix(testing::random_unitary(2, rng)))
          .eigen()));
  return u * op * u.adjoint();
}

BdsState random_bds(std::mt19937_64& rng) {
  std::exponential_distribution<double> e;
  std::array<double, 4> l{e(rng), e(rng), e(rng), e(rng)};
  const double s = l[0] + l[1] + l[2] + l[3];
  for (double& x : l) x /= s;
  std::sort(l.begin(), l.end(), std::greater<>());
  BdsState b{l};
  std::shuffle(b.basis_perm.begin(), b.basis_perm.end(), rng);
  return b;
}

}  // namespace

TEST_CASE("Hermitian coordinates", "[lmi]") {
  std::mt19937_64 rng(3);
  for (std::size_t d : {1u, 2u, 4u}) {
    const Eigen::MatrixXcd h = testing::random_hermitian(d, rng).eigen();
    const Eigen::VectorXd x = hermitian_coordinates(h);
    CHECK((hermitian_from(x, 0, d) - h).cwiseAbs().maxCoeff() <= 1e-15);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(Eigen::Index(d), Eigen::Index(d));
    const auto basis = hermitian_basis(d);
    for (std::size_t k = 0; k < basis.size(); ++k) sum += x(Eigen::Index(k)) * basis[k];
    CHECK((sum - h).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("barrier LMI solver", "[lmi]") {
  SECTION("smallest eigenvalue as an SDP") {
    // max t s.t. A - t 1 >= 0, i.e. minimize -t.
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix a = testing::random_hermitian(4, rng);
      LmiProblem p;
      p.n = 1;
      p.c = Eigen::VectorXd::Constant(1, -1.0);
      p.blocks = {LmiBlock{a.eigen(), {-Eigen::MatrixXcd::Identity(4, 4)}}};
      const double lo = testing::reference_eigenvalues(a)(0);
      const LmiResult r = solve_lmi(p, Eigen::VectorXd::Constant(1, lo - 1.0));
      CHECK(r.x(0) == Approx(lo).margin(1e-7));
      CHECK(r.gap <= 1e-8);
    }
  }

  SECTION("equality constraints") {
    // min x0 + 2 x1 with x0 + x1 = 1, x >= 0 (diagonal blocks).
    LmiProblem p;
    p.n = 2;
    p.c = Eigen::Vector2d(1.0, 2.0);
    Eigen::MatrixXcd e0 = Eigen::MatrixXcd::Zero(2, 2), e1 = e0;
    e0(0, 0) = 1.0;
    e1(1, 1) = 1.0;
    p.blocks = {LmiBlock{Eigen::MatrixXcd::Zero(2, 2), {e0, e1}}};
    p.a_eq = Eigen::RowVector2d(1.0, 1.0);
    p.b_eq = Eigen::VectorXd::Constant(1, 1.0);
    const LmiResult r = solve_lmi(p, Eigen::Vector2d(0.5, 0.5));
    CHECK(r.objective == Approx(1.0).margin(1e-7));
  }

  SECTION("infeasible start") {
    LmiProblem p;
    p.n = 1;
    p.c = Eigen::VectorXd::Constant(1, 1.0);
    p.blocks = {LmiBlock{Eigen::MatrixXcd::Zero(1, 1), {Eigen::MatrixXcd::Ones(1, 1)}}};
    CHECK(code_of([&] { solve_lmi(p, Eigen::VectorXd::Constant(1, -1.0)); }) ==
          ErrorCode::SolverFailure);
  }
}

TEST_CASE("Bell-diagonal detection", "[two-qubit]") {
  CHECK(is_bell_diagonal(build_correlation_operator(chsh_c4_fixture())).bell_diagonal);
  CHECK_FALSE(is_bell_diagonal(tensor(pauli::z(), ComplexMatrix::identity(2))).bell_diagonal);
  CHECK(is_bell_diagonal(steering_operator_f2(pauli::z(), pauli::x())).bell_diagonal);
  CHECK(is_bell_diagonal(ComplexMatrix::identity(4)).bell_diagonal);
  CHECK(code_of([] { is_bell_diagonal(ComplexMatrix::identity(2)); }) ==
        ErrorCode::DimMismatch);

  SECTION("random projective CHSH settings") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 1000; ++k) {
      CorrelationScenario s;
      s.g = {{1.0, 1.0}, {1.0, -1.0}};
      s.bloch_a = {testing::random_bloch(rng), testing::random_bloch(rng)};
      s.bloch_b = {testing::random_bloch(rng), testing::random_bloch(rng)};
      const auto check = is_bell_diagonal(build_correlation_operator(s));
      REQUIRE(check.bell_diagonal);
    }
  }

  SECTION("degenerate eigenspaces are rotated") {
    // Mixing Phi+ and Phi- with Psi+ in a degenerate pair gives product
    // eigenvectors from the solver.
    const auto b = bell_basis();
    const ComplexMatrix op = ComplexMatrix::projector(b[0]) + ComplexMatrix::projector(b[1]) -
                             ComplexMatrix::projector(b[3]);
    const auto check = is_bell_diagonal(op);
    REQUIRE(check.bell_diagonal);
    for (std::size_t i = 0; i < 4; ++i) {
      const ComplexVector v = check.spectrum.vector(i);
      const ComplexMatrix reduced =
          partial_trace(ComplexMatrix::projector(v), {2, 2}, 0);
      CHECK((reduced - complex(0.5) * ComplexMatrix::identity(2)).max_abs() <= 1e-8);
      CHECK(((op * ComplexMatrix::projector(v)).eigen() -
             check.spectrum.values[i] * ComplexMatrix::projector(v).eigen())
                .cwiseAbs()
                .maxCoeff() <= 1e-9);
    }
    // Three-fold degenerate case.
    const ComplexMatrix triple = ComplexMatrix::projector(b[2]);
    CHECK(is_bell_diagonal(triple).bell_diagonal);
    // A degenerate pair spanned by |00>, |01> has no entangled vectors.
    const ComplexMatrix product_pair =
        ComplexMatrix::projector(testing::basis_vector(4, 0)) +
        ComplexMatrix::projector(testing::basis_vector(4, 1)) -
        ComplexMatrix::projector(b[3]);
    CHECK_FALSE(is_bell_diagonal(product_pair).bell_diagonal);
  }
}

TEST_CASE("simultaneous resource minimum", "[two-qubit]") {
  const ComplexMatrix chsh = build_correlation_operator(chsh_c4_fixture());

  SECTION("Tsirelson endpoint") {
    const ResourceReport r = min_resources_for_value(chsh, 2.0, 2 * kSqrt2 - 2);
    CHECK(r.lambda1 == Approx(1.0).margin(1e-12));
    CHECK(r.e_r == Approx(1.0).margin(1e-12));
    CHECK(r.p_r == Approx(3.0).margin(1e-12));
  }

  SECTION("v = 0.2") {
    const ResourceReport r = min_resources_for_value(chsh, 2.0, 0.2);
    CHECK(r.lambda1 == Approx(0.77782).margin(1e-5));
    CHECK(r.e_r == Approx(0.55563).margin(1e-5));
    CHECK(r.p_r == Approx(2.11127).margin(1e-5));
    CHECK(r.c_r == r.e_r);
    CHECK(r.d_r == r.e_r);
    CHECK(r.p_r == Approx(2 * r.e_r + 1).margin(1e-12));
    CHECK(r.satisfies_hierarchy());
    CHECK(expectation(chsh, r.witness_state.matrix()) == Approx(2.2).margin(1e-10));
    // Independent verifiers.
    CHECK(er_ppt_solver(r.witness_state) == Approx(r.e_r).margin(1e-6));
    CHECK(cr_fixed_basis(r.witness_state, r.coherence_basis) == Approx(r.e_r).margin(1e-6));
    CHECK(off_diagonal(r.void_state.matrix(), r.coherence_basis) <= 1e-10);
    CHECK(er_ppt_solver(r.void_state) <= 1e-6);
  }

  SECTION("coherence basis table") {
    const auto b = bell_basis();
    struct Case {
      std::size_t first, second;
      const char* label;
    };
    const Case cases[] = {{0, 1, "computational"}, {2, 3, "computational"},
                          {0, 2, "sigma_x"},       {1, 3, "sigma_x"},
                          {0, 3, "sigma_y"},       {1, 2, "sigma_y"}};
    for (const auto& c : cases) {
      const ComplexMatrix op = complex(3.0) * ComplexMatrix::projector(b[c.first]) +
                               complex(1.0) * ComplexMatrix::projector(b[c.second]);
      const ResourceReport r = min_resources_for_value(op, 1.0, 1.0);
      INFO(c.label);
      CHECK(r.coherence_basis.label == c.label);
      CHECK(off_diagonal(r.void_state.matrix(), r.coherence_basis) <= 1e-12);
      CHECK(cr_fixed_basis(r.witness_state, r.coherence_basis) ==
            Approx(r.e_r).margin(1e-6));
    }
    // sigma_x basis vector order |++>, |+->, |-+>, |-->.
    const Eigen::MatrixXcd x = sigma_x_basis().vectors;
    CHECK(std::abs(x(0, 0) - 0.5) <= 1e-15);
    CHECK(std::abs(x(3, 3) - 0.5) <= 1e-15);
  }

  SECTION("rotated operators get an explicit basis") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 50; ++k) {
      const ComplexMatrix op = random_local_unitary_conjugate(chsh, rng);
      const ResourceReport r = min_resources_for_value(op, 2.0, 0.2);
      CHECK(r.e_r == Approx(0.55563).margin(1e-5));
      CHECK(off_diagonal(r.void_state.matrix(), r.coherence_basis) <= 1e-9);
      CHECK(cr_fixed_basis(r.witness_state, r.coherence_basis) ==
            Approx(r.e_r).margin(1e-6));
    }
  }

  SECTION("errors") {
    CHECK(code_of([&] { min_resources_for_value(chsh, 2.0, 1.0); }) == ErrorCode::Infeasible);
    CHECK(code_of([&] {
            min_resources_for_value(tensor(pauli::z(), ComplexMatrix::identity(2)), 0.5, 0.1);
          }) == ErrorCode::NotBellDiagonal);
    CHECK(code_of([&] { min_resources_for_value(chsh, 2.0, 0.0); }) == ErrorCode::OutOfRange);
  }

  SECTION("audit tallies reports") {
    const HierarchyAudit before = hierarchy_audit();
    min_resources_for_value(chsh, 2.0, 0.5);
    const HierarchyAudit after = hierarchy_audit();
    CHECK(after.reports == before.reports + 1);
    CHECK(after.violations == 0);
  }
}

TEST_CASE("CHSH closed forms", "[two-qubit]") {
  const auto e4 = chsh_eigenvalues(4.0);
  CHECK(e4[0] == Approx(2 * kSqrt2).margin(1e-15));
  CHECK(e4[1] == 0.0);
  CHECK(e4[3] == Approx(-2 * kSqrt2).margin(1e-15));
  const auto e0 = chsh_eigenvalues(0.0);
  CHECK(e0 == std::array<double, 4>{2.0, 2.0, -2.0, -2.0});
  CHECK(code_of([] { chsh_eigenvalues(4.5); }) == ErrorCode::OutOfRange);

  SECTION("eigenvalues against the built operator") {
    for (double c : {0.3, 1.0, 2.5, 3.2, 4.0}) {
      const auto mu = chsh_eigenvalues(c);
      const auto sp = eig_hermitian(chsh_operator(c)).values;
      for (std::size_t i = 0; i < 4; ++i) CHECK(sp[i] == Approx(mu[i]).margin(1e-12));
    }
    const auto mu = chsh_eigenvalues(3.2);
    CHECK(mu[0] == Approx(std::sqrt(7.2)).margin(1e-15));
    CHECK(mu[1] == Approx(std::sqrt(0.8)).margin(1e-15));
  }

  SECTION("maximum value") {
    CHECK(chsh_max_value(1.0, 4.0) == Approx(2 * kSqrt2).margin(1e-12));
    CHECK(chsh_max_value(0.75, 3.2) == Approx(std::sqrt(5.0)).margin(1e-12));
    CHECK(chsh_max_value(0.5, 0.0) == Approx(2.0).margin(1e-15));
    CHECK(code_of([] { chsh_max_value(0.4, 1.0); }) == ErrorCode::OutOfRange);
  }

  SECTION("c_max") {
    CHECK(c_max(1.0) == Approx(4.0).margin(1e-15));
    CHECK(c_max(0.5) == Approx(0.0).margin(1e-15));
    CHECK(c_max(0.75) == Approx(3.2).margin(1e-12));
    for (int i = 0; i <= 20; ++i) {
      const double l = 0.5 + 0.5 * i / 20.0;
      const double c = c_max(l);
      const double best = chsh_max_value(l, c);
      for (int k = 0; k < 100; ++k) {
        CHECK(best >= chsh_max_value(l, 4.0 * k / 99.0) - 1e-12);
      }
      if (c > 1e-3 && c < 4.0 - 1e-2) {
        // Fourth-order central stencil.
        const double h = 1e-4;
        auto f = [&](double x) { return chsh_max_value(l, x); };
        const double deriv =
            (f(c - 2 * h) - 8 * f(c - h) + 8 * f(c + h) - f(c + 2 * h)) / (12 * h);
        CHECK(std::abs(deriv) <= 1e-9);
      }
    }
    CHECK(code_of([] { c_max(1.2); }) == ErrorCode::OutOfRange);
  }

  SECTION("c_max by Nelder-Mead") {
    NelderMeadConfig cfg;
    cfg.lower = {0.0};
    cfg.upper = {4.0};
    const auto res = nelder_mead_max(
        [](std::span<const double> c) { return chsh_max_value(0.75, c[0]); }, {1.0}, cfg);
    CHECK(res.x[0] == Approx(3.2).margin(1e-6));
  }
}

TEST_CASE("entanglement versus incompatibility curves", "[two-qubit]") {
  SECTION("v = 0.001 values and dip") {
    const auto pts = min_er_vs_c_curve(0.001, {0.5, 4.0});
    REQUIRE(pts[0].feasible);
    REQUIRE(pts[1].feasible);
    // Frozen from the closed form; see the curve oracle below.
    CHECK(pts[0].e_r == Approx(0.0393264).margin(1e-6));
    CHECK(pts[1].e_r == Approx(0.4149205).margin(1e-6));
    CHECK(pts[0].e_r < pts[1].e_r);
  }

  SECTION("feasibility threshold") {
    const double threshold = 2.001 * 2.001 - 4.0;
    const auto pts = min_er_vs_c_curve(0.001, {threshold - 1e-4, threshold + 1e-4});
    CHECK_FALSE(pts[0].feasible);
    CHECK(pts[1].feasible);
    CHECK(std::isnan(pts[0].e_r));
  }

  SECTION("Tsirelson point") {
    const auto pts = min_er_vs_c_curve(2 * kSqrt2 - 2, {3.9, 4.0});
    CHECK_FALSE(pts[0].feasible);
    REQUIRE(pts[1].feasible);
    CHECK(pts[1].e_r == Approx(1.0).margin(1e-12));
  }

  SECTION("curve against sampled states at fixed settings") {
    // Random states with the curve's lambda1 never exceed L + v.
    for (double c : {0.5, 2.0, 4.0}) {
      const auto pt = min_er_vs_c_curve(0.001, {c})[0];
      const ComplexMatrix op = chsh_operator(c);
      SamplerConfig cfg{kDefaultSeed, 20000, Constraint::FixedLambda1, pt.lambda1, 0.5};
      StateSampler sampler(cfg, 4, eig_hermitian(op).vectors);
      double best = -1e9;
      while (!sampler.done()) best = std::max(best, sampler.next().expectation(op));
      CHECK(best <= 2.001 + 1e-9);
    }
  }

  SECTION("non-monotone over a fine grid") {
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(4.0 * i / 400.0);
    const auto pts = min_er_vs_c_curve(0.001, grid);
    double min_er = 2.0;
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].feasible && pts[i].e_r < min_er) {
        min_er = pts[i].e_r;
        argmin = i;
      }
    }
    CHECK(argmin < pts.size() - 1);
    CHECK(pts.back().e_r > min_er + 0.3);
  }

  SECTION("steering curve") {
    const auto e2 = steering_eigenvalues(2.0);
    CHECK(e2 == std::array<double, 4>{2.0, 0.0, -0.0, -2.0});
    CHECK(steering_eigenvalues(0.0)[0] == Approx(kSqrt2).margin(1e-15));
    CHECK(code_of([] { steering_eigenvalues(2.1); }) == ErrorCode::OutOfRange);

    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(2.0 * i / 200.0);
    const auto pts = min_er_vs_ca_curve(0.01, grid);
    CHECK_FALSE(pts.front().feasible);
    double min_er = 2.0;
    for (const auto& p : pts)
      if (p.feasible) min_er = std::min(min_er, p.e_r);
    CHECK(pts.back().e_r > min_er + 0.1);
  }

  SECTION("steering eigenvalues match the operator") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
      const ComplexMatrix a1 = observable_from_bloch(testing::random_bloch(rng));
      const ComplexMatrix a2 = observable_from_bloch(testing::random_bloch(rng));
      const double ca = commutator_norm(a1, a2);
      const auto mu = steering_eigenvalues(std::min(ca, 2.0));
      const auto sp = eig_hermitian(steering_operator_f2(a1, a2)).values;
      for (std::size_t i = 0; i < 4; ++i) CHECK(sp[i] == Approx(mu[i]).margin(1e-9));
    }
  }

  SECTION("heatmap") {
    const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0};
    const auto map = lambda1_heatmap(0.001, grid, grid);
    const auto column = min_er_vs_c_curve(0.001, {4.0})[0];
    CHECK(map[4][4].lambda1 == Approx(column.lambda1).margin(1e-12));
    CHECK_FALSE(map[4][0].feasible);
    CHECK_FALSE(map[0][4].feasible);
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto direct = min_er_vs_c_curve(0.001, {grid[i] * grid[j]})[0];
        CHECK(map[i][j].feasible == direct.feasible);
        if (direct.feasible) {
          CHECK(map[i][j].lambda1 == Approx(direct.lambda1).margin(1e-12));
        }
      }
  }
}

TEST_CASE("entanglement robustness SDP", "[two-qubit][sdp]") {
  const auto b = bell_basis();
  CHECK(er_ppt_solver(DensityState(ComplexMatrix::projector(b[0]), {2, 2})) ==
        Approx(1.0).margin(1e-6));
  CHECK(er_ppt_solver(DensityState::maximally_mixed({2, 2})) <= 1e-6);
  CHECK(er_ppt_solver(BdsState{{0.75, 0.25, 0.0, 0.0}}.state()) == Approx(0.5).margin(1e-6));
  const ComplexMatrix product =
      tensor(ComplexMatrix::projector(testing::basis_vector(2, 0)),
             complex(0.5) * ComplexMatrix::identity(2));
  CHECK(er_ppt_solver(DensityState(product, {2, 2})) <= 1e-6);

  SECTION("random Bell-diagonal states") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 60; ++k) {
      const BdsState s = random_bds(rng);
      CHECK(er_ppt_solver(s.state()) ==
            Approx(std::max(0.0, 2 * s.lambdas[0] - 1)).margin(1e-5));
    }
  }
}

TEST_CASE("coherence robustness SDP", "[two-qubit][sdp]") {
  const ComplexVector plus = ComplexVector::Constant(2, 1.0 / kSqrt2);
  const ProductBasis qubit{"computational", Eigen::MatrixXcd::Identity(2, 2)};
  CHECK(cr_fixed_basis(DensityState(ComplexMatrix::projector(plus)), qubit) ==
        Approx(1.0).margin(1e-6));
  CHECK(cr_fixed_basis(DensityState::maximally_mixed({2, 2}), computational_basis()) <= 1e-6);

  SECTION("rank-2 Phi mixture is optimal in the computational basis") {
    const DensityState rho = BdsState{{0.8, 0.2, 0.0, 0.0}}.state();
    CHECK(cr_fixed_basis(rho, computational_basis()) == Approx(0.6).margin(1e-6));
    BasisSearchConfig cfg;
    cfg.restarts = 8;
    const auto best = cr_min_over_product_bases(rho, cfg);
    CHECK(best.value == Approx(0.6).margin(1e-5));
  }

  SECTION("product pure state") {
    const ComplexVector a = ComplexVector::Constant(2, 1.0 / kSqrt2);
    ComplexVector b(2);
    b << std::cos(0.3), complex(0.0, std::sin(0.3));
    const DensityState rho(tensor(ComplexMatrix::projector(a), ComplexMatrix::projector(b)),
                           {2, 2});
    BasisSearchConfig cfg;
    cfg.restarts = 8;
    CHECK(cr_min_over_product_bases(rho, cfg).value <= 1e-5);
  }

  SECTION("non-orthonormal basis is rejected") {
    ProductBasis bad{"custom", Eigen::MatrixXcd::Ones(4, 4)};
    CHECK(code_of([&] { cr_fixed_basis(DensityState::maximally_mixed({2, 2}), bad); }) ==
          ErrorCode::InvalidInput);
  }
}

TEST_CASE("joint minima over states", "[two-qubit][sdp]") {
  SECTION("CHSH agrees with the closed form") {
    const ComplexMatrix chsh = build_correlation_operator(chsh_c4_fixture());
    const ResourceReport r = min_resources_for_value(chsh, 2.0, 0.2);
    const JointMinimum er = min_er_for_value(chsh, 2.2);
    CHECK(er.value == Approx(r.e_r).margin(1e-6));
    CHECK(expectation(chsh, er.state.matrix()) == Approx(2.2).margin(1e-6));
    const JointMinimum cr = min_cr_for_value(chsh, 2.2, r.coherence_basis);
    CHECK(cr.value == Approx(r.c_r).margin(1e-6));
  }

  SECTION("I3322 entanglement") {
    const ComplexMatrix op = build_bell_operator(i3322_fixture());
    const Spectrum sp = eig_hermitian(op);
    const RankSolution pr = min_lambda1_for_value(sp.values, 4.001);
    CHECK(pr.resource == Approx(2.6756).margin(5e-4));
    const JointMinimum er = min_er_for_value(op, 4.001);
    CHECK(er.value == Approx(0.8291).margin(1e-3));
    CHECK(er.value < pr.resource);
    // The purity-optimal state itself needs more entanglement.
    const DensityState rho_p = construct_optimal_state(pr, sp, std::vector<std::size_t>{2, 2});
    CHECK(er_ppt_solver(rho_p) > er.value + 1e-3);
  }
}
