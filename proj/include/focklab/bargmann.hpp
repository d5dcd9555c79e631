#pragma once

#include <map>
#include <random>

#include "focklab/core.hpp"
#include "focklab/operators.hpp"

namespace focklab {

// ---------------------------------------------------------------------------
// Hermite functions, the Bargmann transform, and the position/momentum
// uncertainty inequalities at n = 1.
// ---------------------------------------------------------------------------

/// Finite expansion u = sum_k c_k h_k in the orthonormal Hermite functions.
struct HermiteExpansion {
  std::map<int, cplx> coeffs;

  void set(int k, cplx value);
  cplx at(int k) const;
  int max_index() const;  // -1 when empty
  double norm_sq() const;
  double norm() const;
};

/// Orthonormal Hermite function
/// h_k(x) = pi^{-1/4} (2^k k!)^{-1/2} H_k(x) e^{-x^2/2},
/// by the stable three-term recurrence.
double hermite_function(int k, double x);

/// B(u)(z) = pi^{-1/4} int u(x) exp(-z^2/2 + sqrt(2) z x - x^2/2) dx,
/// evaluated by Gauss-Hermite after factoring out e^{-x^2}. Sends h_k to
/// z^k / sqrt(k!).
cplx bargmann_transform(const HermiteExpansion& u, cplx z, int m = 30);

/// Position X (multiplication by x) and momentum D = -i d/dx on the Hermite
/// index box [0, N]; both tridiagonal and conjugate-symmetric on the
/// interior, with X + iD = sqrt(2) (lowering) and X - iD = sqrt(2) (raising).
std::pair<TruncatedOperator, TruncatedOperator> xd_matrices(int N);

/// Slacks of the two uncertainty inequalities; both must be >= 0:
///   product_slack = ||(X-a)u|| ||(D-b)u|| - ||u||^2 / 2
///   sum_slack     = ||Xu||^2 + ||Du||^2 - ||u||^2
/// Requires u supported at truncation margin 2.
struct UncertaintyReport {
  double product_slack = 0.0;
  double sum_slack = 0.0;
  double x_norm_sq = 0.0;
  double d_norm_sq = 0.0;
};

UncertaintyReport verify_uncertainty(const HermiteExpansion& u, double a,
                                     double b, int N);

/// Checks that conjugating the Fock-space ladder pair with the Bargmann
/// transform produces (X + iD)/sqrt(2) and (X - iD)/sqrt(2), and that
/// ||Xu||^2 + ||Du||^2 = ||a Bu||^2 + ||a* Bu||^2 with the Fock side
/// evaluated by quadrature (normalized by the measured constant below).
struct ConjugationReport {
  double matrix_residual = 0.0;       // interior block, against quadrature
  double equivalence_rel_error = 0.0; // worst case over the random sample
  double equality_case_value = 0.0;   // both sides at u = h_0 (should be 1)
};

ConjugationReport verify_conjugation(int N, int m = 30, int samples = 20,
                                     unsigned seed = 20250808);

/// Measured Gram constant of the transformed Hermite functions in the
/// quadrature model: (B h_k, B h_j) = c delta_kj. The displayed transform
/// normalization gives c = pi rather than 1; the constant is reported, never
/// silently rescaled.
struct UnitarityReport {
  double constant = 0.0;      // mean diagonal
  double diagonal_spread = 0.0;
  double max_offdiagonal = 0.0;
};

/// The outer rule stays small: the transform's quadrature error grows like
/// exp(|z|^2/2) far out, which squared would cancel the outer Gaussian, so
/// the inner rule must stay converged over the whole outer node range.
UnitarityReport bargmann_unitarity_constant(int kmax = 6, int m_outer = 8,
                                            int m_inner = 96);

/// Random expansion supported on [margin, N - margin].
HermiteExpansion random_hermite_expansion(int N, int margin,
                                          std::mt19937_64& rng);

}  // namespace focklab
