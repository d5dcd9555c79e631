#include <doctest.h>

#include <cmath>
#include <random>

#include "focklab/basis.hpp"
#include "focklab/operators.hpp"

using namespace focklab;

namespace {

CoeffVector unit_at(int i, int j) {
  CoeffVector f(2);
  f.set(MultiIndex::of(i, j), cplx{1.0, 0.0});
  return f;
}

}  // namespace

TEST_CASE("raising operator on basis vectors") {
  const TruncatedOperator b1 = matrix_b(1, 4);
  const CoeffVector out = b1.apply(unit_at(0, 0));
  CHECK(out.at(MultiIndex::of(1, 0)) == cplx{1.0, 0.0});
  CHECK(out.entries.size() == 1);

  const TruncatedOperator b2 = matrix_b(2, 4);
  const CoeffVector out2 = b2.apply(unit_at(1, 1));
  CHECK(std::abs(out2.at(MultiIndex::of(1, 2)) - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("lowering operator annihilates the bottom face") {
  const TruncatedOperator b1s = matrix_b_star(1, 4);
  for (int a2 = 0; a2 <= 4; ++a2)
    CHECK(b1s.apply(unit_at(0, a2)).entries.empty());
}

TEST_CASE("annihilation matrix per parameter regime") {
  SUBCASE("flat case is the plain lowering operator") {
    const TruncatedOperator a1 = matrix_a(1, 4, 0.0, 0.0, 0.0);
    const CoeffVector out = a1.apply(unit_at(1, 0));
    CHECK(out.at(MultiIndex::of(0, 0)) == cplx{1.0, 0.0});
    CHECK(out.entries.size() == 1);
  }
  SUBCASE("diagonal weight adds the raising term") {
    const double beta1 = 0.7;
    const TruncatedOperator a1 = matrix_a(1, 4, beta1, 0.0, 0.0);
    const CoeffVector out = a1.apply(unit_at(1, 0));
    CHECK(std::abs(out.at(MultiIndex::of(0, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(out.at(MultiIndex::of(2, 0)) - beta1 * std::sqrt(2.0)) <
          1e-15);
  }
  SUBCASE("skew weight couples the coordinates") {
    const TruncatedOperator a1 = matrix_a(1, 4, 0.0, 0.0, 0.5);
    const CoeffVector out = a1.apply(unit_at(0, 0));
    CHECK(std::abs(out.at(MultiIndex::of(0, 1)) - 0.5) < 1e-15);
    CHECK(out.entries.size() == 1);
  }
}

TEST_CASE("closed-form adjoint in the diagonal case") {
  SUBCASE("beta = 1 collapses a and its adjoint") {
    const Eigen::MatrixXcd a = matrix_a(1, 5, 1.0, 0.0, 0.0).matrix;
    const Eigen::MatrixXcd as = matrix_a_star(1, 5, 1.0).matrix;
    CHECK((a - as).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("beta = 0 gives the raising operator") {
    const Eigen::MatrixXcd as = matrix_a_star(1, 5, 0.0).matrix;
    const Eigen::MatrixXcd b = matrix_b(1, 5).matrix;
    CHECK((as - b).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("action on the vacuum") {
    for (double beta : {0.0, 0.5, 1.0, -0.7}) {
      const CoeffVector out = matrix_a_star(1, 4, beta).apply(unit_at(0, 0));
      CHECK(out.at(MultiIndex::of(1, 0)) == cplx{1.0, 0.0});
      CHECK(out.entries.size() == 1);
    }
  }
  SUBCASE("nonzero kappa is refused with a pointer to the adjoint") {
    CHECK_THROWS_WITH_AS(matrix_a_star(1, 4, 0.5, 0.3),
                         doctest::Contains("adjoint"), std::invalid_argument);
  }
}

TEST_CASE("adjoint equals the conjugate transpose everywhere") {
  for (double beta : {0.0, 0.5, -0.7}) {
    const TruncatedOperator a = matrix_a(1, 6, beta, 0.2, 0.0);
    const Eigen::MatrixXcd as = matrix_a_star(1, 6, beta).matrix;
    const Eigen::MatrixXcd at = a.adjoint().matrix;
    CHECK((as - at).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("commutators act as scalars on interior vectors") {
  const int N = 8;
  std::mt19937_64 rng(19);
  const CoeffVector f = random_interior_coeffs(2, N, 2, rng);
  const Eigen::VectorXcd fv = matrix_b(1, N).to_dense(f);

  SUBCASE("[a1, b1] = I") {
    const TruncatedOperator a1 = matrix_a(1, N, 0.5, 0.3, 0.0);
    const TruncatedOperator c = commutator(a1, matrix_b(1, N));
    CHECK((c.matrix * fv - fv).lpNorm<Eigen::Infinity>() < 1e-12);
  }
  SUBCASE("[a1, a1*] = (1 - beta^2) I") {
    const double beta = 0.5;
    const TruncatedOperator a1 = matrix_a(1, N, beta, 0.3, 0.0);
    const TruncatedOperator c = commutator(a1, matrix_a_star(1, N, beta));
    CHECK((c.matrix * fv - 0.75 * fv).lpNorm<Eigen::Infinity>() < 1e-12);
  }
  SUBCASE("[a1, a2] = 0") {
    const TruncatedOperator c = commutator(matrix_a(1, N, 0.5, 0.3, 0.0),
                                           matrix_a(2, N, 0.5, 0.3, 0.0));
    CHECK((c.matrix * fv).lpNorm<Eigen::Infinity>() < 1e-12);
  }
  SUBCASE("basis mismatch is rejected") {
    CHECK_THROWS_AS(commutator(matrix_b(1, 4), matrix_b(1, 5)),
                    std::invalid_argument);
  }
}

TEST_CASE("norm identities on a basis vector, by hand") {
  // a1 psi_00 = 0.5 psi_10 and a1* psi_00 = psi_10 at beta1 = 0.5, so the
  // norm difference is 1 - 0.25 = 0.75 = (1 - beta1^2) ||f||^2
  const DiagonalIdentityReport rep = verify_diagonal_identities(unit_at(0, 0), 0.5, 0.3, 6);
  CHECK(rep.norm_identity_a[0] < 1e-15);
  CHECK(rep.norm_identity_b[0] < 1e-15);
  CHECK(rep.a_star_relation[0] < 1e-15);
}

TEST_CASE("norm identities for random interior vectors") {
  std::mt19937_64 rng(37);
  for (double beta1 : {0.0, 0.5, 1.0, -0.7})
    for (double beta2 : {0.0, 0.3}) {
      for (int trial = 0; trial < 25; ++trial) {
        const CoeffVector f = random_interior_coeffs(2, 10, 1, rng);
        const DiagonalIdentityReport rep = verify_diagonal_identities(f, beta1, beta2, 10);
        CHECK(rep.max_residual() < 1e-12);
      }
    }
}

TEST_CASE("margin violations are rejected") {
  CHECK_THROWS_AS(verify_diagonal_identities(unit_at(6, 0), 0.5, 0.3, 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_skew(unit_at(5, 5), 0.5, 6), std::invalid_argument);
  // two-sided interior predicate from the type definition
  CHECK(is_interior(unit_at(2, 2), 6, 2));
  CHECK_FALSE(is_interior(unit_at(0, 0), 6, 1));
  CHECK(is_truncation_interior(unit_at(0, 0), 6, 1));
}

TEST_CASE("skew relations") {
  std::mt19937_64 rng(43);
  SUBCASE("kappa = 0 reduces a1 to the lowering operator") {
    const Eigen::MatrixXcd a1 = matrix_a(1, 5, 0.0, 0.0, 0.0).matrix;
    const Eigen::MatrixXcd b1s = matrix_b_star(1, 5).matrix;
    CHECK((a1 - b1s).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("residuals vanish for random interior vectors") {
    for (double kappa : {0.0, 0.5, 1.0, -1.0}) {
      for (int trial = 0; trial < 25; ++trial) {
        const CoeffVector f = random_interior_coeffs(2, 10, 2, rng);
        const SkewReport rep = verify_skew(f, kappa, 10);
        CHECK(rep.max_residual() < 1e-12);
      }
    }
  }
  SUBCASE("degeneration at |kappa| = 1") {
    const CoeffVector f = random_interior_coeffs(2, 10, 2, rng);
    CHECK(verify_skew(f, 1.0, 10).degeneration < 1e-12);
    CHECK(verify_skew(f, -1.0, 10).degeneration < 1e-12);
  }
}

TEST_CASE("shift profiles constrain every stored entry") {
  for (int j : {1, 2}) {
    CHECK(matrix_b(j, 5).respects_shift_profile());
    CHECK(matrix_b_star(j, 5).respects_shift_profile());
    CHECK(matrix_a(j, 5, 0.4, -0.2, 0.3).respects_shift_profile());
    CHECK(matrix_a_star(j, 5, 0.4).respects_shift_profile());
  }
  TruncatedOperator bad = matrix_b(1, 5);
  bad.shift_profile = {{0, 1}};  // wrong direction
  CHECK_FALSE(bad.respects_shift_profile());
}

TEST_CASE("matrix entries agree with the quadrature inner products") {
  // coefficient-space model vs the integral model on a mixed weight
  const SpaceParams space{HA{0.3, 0.0, 0.2}};
  REQUIRE(validate_for_quadrature(space));
  const int L = 2;
  for (int j : {1, 2}) {
    const Eigen::MatrixXcd integral = derivative_gram_matrix(space, j, L, 20);
    const TruncatedOperator a = matrix_a(j, L + 2, 0.3, 0.0, 0.2);
    for (const auto& alpha : enumerate_box(2, L))
      for (const auto& alphap : enumerate_box(2, L)) {
        const cplx entry =
            a.matrix.coeff(box_index(alphap, L + 2), box_index(alpha, L + 2));
        const cplx num = integral(box_index(alphap, L), box_index(alpha, L));
        CHECK(std::abs(entry - num) < 1e-8);
      }
  }
}
