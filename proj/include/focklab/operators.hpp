#pragma once

#include <random>

#include <Eigen/SparseCore>

#include "focklab/core.hpp"

namespace focklab {

// ---------------------------------------------------------------------------
// Truncated ladder operators on the box basis of H_A
//
// On basis functions:
//   b_j psi_alpha  = sqrt(a_j + 1) psi_{alpha + e_j}
//   b_j* psi_alpha = sqrt(a_j)     psi_{alpha - e_j}
//   a_j psi_alpha  = sqrt(a_j) psi_{alpha-e_j} + beta_j sqrt(a_j+1) psi_{alpha+e_j}
//                    + kappa sqrt(a_k+1) psi_{alpha+e_k}   (k the other index)
//
// Truncation drops images leaving the box. Lowering never leaves the box, so
// only the raising side (indices at the top face) is corrupted; a vector
// whose support keeps distance `margin` from the top face is mapped exactly
// by any product of `margin` shift-one operators.
// ---------------------------------------------------------------------------

struct TruncatedOperator {
  int n = 2;
  int N = 0;
  Eigen::SparseMatrix<cplx> matrix;           // (N+1)^n square
  std::vector<std::array<int, 2>> shift_profile;
  std::string name;

  Eigen::Index dim() const { return matrix.rows(); }

  CoeffVector apply(const CoeffVector& f) const;
  Eigen::VectorXcd to_dense(const CoeffVector& f) const;
  CoeffVector from_dense(const Eigen::VectorXcd& v) const;

  /// Conjugate transpose; shift profile negated.
  TruncatedOperator adjoint() const;

  /// Every nonzero entry (alpha', alpha) satisfies alpha' - alpha in
  /// shift_profile.
  bool respects_shift_profile() const;
};

TruncatedOperator matrix_b(int j, int N);
TruncatedOperator matrix_b_star(int j, int N);
TruncatedOperator matrix_a(int j, int N, double beta1, double beta2,
                           double kappa);

/// a_j* = b_j + beta_j b_j*, valid for diagonal A (kappa = 0) only; a
/// nonzero kappa is refused with a pointer to the conjugate-transpose
/// construction (TruncatedOperator::adjoint).
TruncatedOperator matrix_a_star(int j, int N, double beta_j,
                                double kappa = 0.0);

/// PQ - QP. Throws std::invalid_argument when the operators live on
/// different boxes. Assertions should be restricted to vectors that are
/// interior with margin 2.
TruncatedOperator commutator(const TruncatedOperator& P,
                             const TruncatedOperator& Q);

/// Two-sided interior predicate: every nonzero index alpha has
/// margin <= alpha_j <= N - margin.
bool is_interior(const CoeffVector& f, int N, int margin);

/// Truncation-exactness predicate: alpha_j <= N - margin (the bottom face is
/// exact for all ladder operators, so only the top matters).
bool is_truncation_interior(const CoeffVector& f, int N, int margin);

/// Random coefficients supported on the margin-interior sub-box,
/// real/imaginary parts uniform in [-1, 1].
CoeffVector random_interior_coeffs(int n, int N, int margin,
                                   std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Identity verification
// ---------------------------------------------------------------------------

/// Residuals of the diagonal-A identities, per coordinate j in {1,2}:
///   norm_identity_a:   | ||a_j* f||^2 - ||a_j f||^2 - (1-beta_j^2) ||f||^2 |
///   norm_identity_b:   | ||b_j f||^2 - ||b_j* f||^2 - ||f||^2 |
///   a_star_relation:   || a_j* f - beta_j a_j f - (1-beta_j^2) b_j f ||
///   basic_estimate_slack:
///       max(0, ||f||^2 - (||a_j* f||^2 + ||a_j f||^2)/|1-beta_j^2|),
///       0 when beta_j = 1 (the estimate is vacuous there).
struct DiagonalIdentityReport {
  std::array<double, 2> norm_identity_a{};
  std::array<double, 2> norm_identity_b{};
  std::array<double, 2> a_star_relation{};
  std::array<double, 2> basic_estimate_slack{};
  double max_residual() const;
};

/// Requires f supported at truncation margin 1 (norms of one-shift images
/// would otherwise be corrupted); throws std::invalid_argument on violation.
DiagonalIdentityReport verify_diagonal_identities(const CoeffVector& f, double beta1,
                               double beta2, int N);

/// Residuals of the antidiagonal-A (skew) identities on f, with the adjoints
/// built as conjugate transposes:
///   relation[j]:             || a_j f - kappa a_k* f - (1-kappa^2) b_j* f ||
///   commutator_residual(j,k): max |[a_j, a_k*] f - delta_jk (1-kappa^2) f|
///   star_commutator:          max_jk ||[a_j*, a_k*] f||
///   plain_commutator:         ||[a_1, a_2] f||
///   degeneration:             || a_1 f -+ a_2* f || at kappa = +-1, else 0
struct SkewReport {
  std::array<double, 2> relation{};
  Eigen::Matrix2d commutator_residual = Eigen::Matrix2d::Zero();
  double star_commutator = 0.0;
  double plain_commutator = 0.0;
  double degeneration = 0.0;
  double max_residual() const;
};

/// Requires truncation margin 2 (commutators stack two shifts).
SkewReport verify_skew(const CoeffVector& f, double kappa, int N);

}  // namespace focklab
