#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "focklab/bargmann.hpp"
#include "focklab/quadrature.hpp"

using namespace focklab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("hermite function values") {
  CHECK(hermite_function(0, 0.0) ==
        doctest::Approx(0.7511255444649425).epsilon(1e-14));
  CHECK(hermite_function(1, 0.0) == doctest::Approx(0.0));
  // bounded for large index (stable recurrence)
  for (double x : {-3.0, 0.4, 7.5})
    CHECK(std::abs(hermite_function(60, x)) < 1.0);
}

TEST_CASE("hermite functions are orthonormal under the quadrature oracle") {
  const QuadratureRule rule = hermite_rule(30);
  for (int k = 0; k <= 8; ++k)
    for (int j = k; j <= 8; ++j) {
      double got = 0.0;
      for (Eigen::Index i = 0; i < rule.size(); ++i) {
        const double x = rule.nodes(i, 0);
        // the e^{x^2} undoes the rule's weight; the integrand h_k h_j is
        // then integrated against plain Lebesgue measure
        got += rule.weights(i) * std::exp(x * x) * hermite_function(k, x) *
               hermite_function(j, x);
      }
      CHECK(got == doctest::Approx(k == j ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("transform of the ground state is constant 1") {
  HermiteExpansion h0;
  h0.set(0, cplx{1.0, 0.0});
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const cplx z{u(rng), u(rng)};
    CHECK(std::abs(bargmann_transform(h0, z) - cplx{1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("transform sends h_k to z^k / sqrt(k!)") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k : {1, 2, 5}) {
    HermiteExpansion hk;
    hk.set(k, cplx{1.0, 0.0});
    for (int trial = 0; trial < 5; ++trial) {
      const cplx z{u(rng), u(rng)};
      const cplx expected = std::pow(z, k) / std::sqrt(std::tgamma(k + 1.0));
      CHECK(std::abs(bargmann_transform(hk, z) - expected) < 1e-11);
    }
  }
}

TEST_CASE("transform of zero is zero") {
  HermiteExpansion zero;
  CHECK(bargmann_transform(zero, cplx{0.7, -0.3}) == cplx{0.0, 0.0});
}

TEST_CASE("position and momentum matrices") {
  auto [X, D] = xd_matrices(8);

  SUBCASE("first position matrix element against the moment oracle") {
    const QuadratureRule rule = hermite_rule(30);
    double got = 0.0;
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
      const double x = rule.nodes(i, 0);
      got += rule.weights(i) * std::exp(x * x) * x * hermite_function(0, x) *
             hermite_function(1, x);
    }
    CHECK(X.matrix.coeff(1, 0).real() == doctest::Approx(got).epsilon(1e-12));
    CHECK(X.matrix.coeff(1, 0).real() ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  }

  SUBCASE("momentum expectation vanishes by parity") {
    CHECK(std::abs(D.matrix.coeff(0, 0)) == 0.0);
  }

  SUBCASE("self-adjoint on the interior block") {
    const Eigen::MatrixXcd Xd(X.matrix);
    const Eigen::MatrixXcd Dd(D.matrix);
    CHECK((Xd - Xd.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((Dd - Dd.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("canonical commutation relation on interior vectors") {
    const Eigen::MatrixXcd comm =
        Eigen::MatrixXcd(X.matrix * D.matrix) - Eigen::MatrixXcd(D.matrix * X.matrix);
    Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(9);
    e2(2) = cplx{1.0, 0.0};
    CHECK(std::abs((comm * e2 - cplx{0.0, 1.0} * e2).lpNorm<Eigen::Infinity>()) <
          1e-14);
  }

  SUBCASE("commutation relation against a finite-difference model") {
    // apply X and D pointwise (D by a fourth-order difference quotient) and
    // integrate ( [X,D] u, u ) by quadrature
    std::mt19937_64 rng(61);
    HermiteExpansion u = random_hermite_expansion(8, 2, rng);
    auto eval_u = [&u](double x) {
      cplx s{0.0, 0.0};
      for (const auto& [k, c] : u.coeffs) s += c * hermite_function(k, x);
      return s;
    };
    const double h = 1e-2;
    auto du = [&](double x) {
      return (-eval_u(x + 2 * h) + 8.0 * eval_u(x + h) - 8.0 * eval_u(x - h) +
              eval_u(x - 2 * h)) /
             (12.0 * h);
    };
    // [X, D]u = -i (x u' - (x u)') = i u
    const QuadratureRule rule = hermite_rule(40);
    cplx got{0.0, 0.0};
    double usq = 0.0;
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
      const double x = rule.nodes(i, 0);
      const cplx ux = eval_u(x);
      const cplx xdu = x * du(x);
      // (xu)' = u + x u'
      const cplx dxu = ux + xdu;
      const cplx comm_u = cplx{0.0, -1.0} * (xdu - dxu);
      got += rule.weights(i) * std::exp(x * x) * comm_u * std::conj(ux);
      usq += rule.weights(i) * std::exp(x * x) * std::norm(ux);
    }
    CHECK(std::abs(got - cplx{0.0, 1.0} * usq) < 1e-6 * usq);
  }
}

TEST_CASE("uncertainty slacks") {
  SUBCASE("ground state saturates both inequalities") {
    HermiteExpansion h0;
    h0.set(0, cplx{1.0, 0.0});
    const UncertaintyReport rep = verify_uncertainty(h0, 0.0, 0.0, 8);
    CHECK(std::abs(rep.product_slack) < 1e-14);
    CHECK(std::abs(rep.sum_slack) < 1e-14);
    CHECK(rep.x_norm_sq == doctest::Approx(0.5));
  }
  SUBCASE("first excited state") {
    HermiteExpansion h1;
    h1.set(1, cplx{1.0, 0.0});
    const UncertaintyReport rep = verify_uncertainty(h1, 0.0, 0.0, 8);
    CHECK(rep.x_norm_sq + rep.d_norm_sq == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("random states satisfy both inequalities, shifts included") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const HermiteExpansion u = random_hermite_expansion(12, 2, rng);
      const UncertaintyReport rep =
          verify_uncertainty(u, shift(rng), shift(rng), 12);
      CHECK(rep.product_slack >= -1e-12);
      CHECK(rep.sum_slack >= -1e-12);
    }
  }
  SUBCASE("sum slack decomposes into product slack plus a square") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
      const HermiteExpansion u = random_hermite_expansion(12, 2, rng);
      const UncertaintyReport rep = verify_uncertainty(u, 0.0, 0.0, 12);
      const double xn = std::sqrt(rep.x_norm_sq);
      const double dn = std::sqrt(rep.d_norm_sq);
      const double recomposed =
          2.0 * (xn * dn - 0.5 * u.norm_sq()) + (xn - dn) * (xn - dn);
      CHECK(rep.sum_slack == doctest::Approx(recomposed).epsilon(1e-12));
    }
  }
  SUBCASE("support touching the top is rejected") {
    HermiteExpansion u;
    u.set(7, cplx{1.0, 0.0});
    CHECK_THROWS_AS(verify_uncertainty(u, 0.0, 0.0, 8), std::invalid_argument);
  }
}

TEST_CASE("conjugation of the ladder pair through the transform") {
  const ConjugationReport rep = verify_conjugation(10);
  CHECK(rep.matrix_residual < 1e-12);
  CHECK(rep.equivalence_rel_error < 1e-10);
  CHECK(rep.equality_case_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("measured unitarity constant of the transform") {
  const UnitarityReport rep = bargmann_unitarity_constant();
  CHECK(rep.constant == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(rep.diagonal_spread / rep.constant < 1e-9);
  CHECK(rep.max_offdiagonal / rep.constant < 1e-9);
}
