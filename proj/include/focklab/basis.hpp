#pragma once

#include "focklab/core.hpp"
#include "focklab/quadrature.hpp"

namespace focklab {

// ---------------------------------------------------------------------------
// Orthonormal basis functions
//
// SegalBargmann:  phi_alpha(z) = prod_j z_j^{a_j} / sqrt(pi a_j!)
// HA:             psi_alpha(z) = phi_alpha(z) exp(<Az,z>/2)
// HBeta:          psi_k(z)     = z^k / sqrt(pi k!) exp(beta z^2 / 2)
// HKappaL:        psi_j(z)     = (sqrt(kappa) z)^j / sqrt(pi j!) exp(-l z^2/2)
// HTauKappaL:     the HKappaL functions rescaled to the 4 pi tau weight,
//                 i.e. HKappaL(4 pi tau kappa, 4 pi tau l).
//
// The HKappaL family integrates to 1/kappa on the diagonal, not 1; passing
// unit_normalized multiplies by sqrt(kappa) (sqrt of the measured Gram
// correction) so the Gram matrix becomes the identity. Default is the
// literal convention.
// ---------------------------------------------------------------------------

/// z^k / sqrt(pi k!), evaluated directly for k <= 20 and in log space above.
cplx normalized_monomial(cplx z, int k);

cplx eval_basis(const SpaceParams& space, const MultiIndex& alpha, cplx z1,
                cplx z2 = cplx{0.0, 0.0}, bool unit_normalized = false);

/// d/dz_j of the basis function, j in {1, 2}. Closed form, no differencing.
cplx eval_basis_dz(const SpaceParams& space, const MultiIndex& alpha, int j,
                   cplx z1, cplx z2 = cplx{0.0, 0.0},
                   bool unit_normalized = false);

/// Matrix of gaussian_inner_product(psi_alpha, psi_alpha') over
/// enumerate_box(n, N); entry (box_index(alpha), box_index(alpha')).
Eigen::MatrixXcd gram_matrix(const SpaceParams& space, int N, int m,
                             bool unit_normalized = false);

/// Exact closed-form value of the Gram diagonal in the literal convention:
/// 1 for SegalBargmann / HA / HBeta, 1/kappa for HKappaL,
/// 1/(4 pi tau kappa) for HTauKappaL. For HTauKappaL the constant refers to
/// the twist-matched weight (the one whose kernel is the displayed
/// tau-family closed form); the family's displayed weight carries the
/// opposite twist sign, against which these basis functions are not
/// orthogonal when l != 0.
double gram_diagonal_constant(const SpaceParams& space);

/// Phi(f)(z) = (sum_alpha f_alpha phi_alpha(z)) exp(<Az,z>/2); the isometry
/// of the plain Segal-Bargmann space onto H_A, mapping phi_alpha to
/// psi_alpha exactly.
cplx apply_isometry(const CoeffVector& f, const HA& params, cplx z1, cplx z2);

/// Pointwise evaluation of f = sum_alpha f_alpha psi_alpha.
struct SynthesizedFunction {
  CoeffVector coeffs;
  SpaceParams space;
  bool unit_normalized = false;

  cplx operator()(cplx z) const;
  cplx operator()(cplx z1, cplx z2) const;
};

SynthesizedFunction synthesize(const CoeffVector& f, const SpaceParams& space,
                               bool unit_normalized = false);

/// Coefficients f_alpha = (g, psi_alpha) over the box, by quadrature.
CoeffVector analyze(const Fn1& g, const SpaceParams& space, int N, int m,
                    bool unit_normalized = false);
CoeffVector analyze(const Fn2& g, const SpaceParams& space, int N, int m,
                    bool unit_normalized = false);

/// Matrix of (d/dz_j psi_alpha, psi_alpha') over enumerate_box(n, N), by
/// quadrature; entry (box_index(alpha'), box_index(alpha)). Against an
/// orthonormal basis these are exactly the ladder-matrix entries, which is
/// the integral-model cross-check of the coefficient-space construction.
Eigen::MatrixXcd derivative_gram_matrix(const SpaceParams& space, int j, int N,
                                        int m);

}  // namespace focklab
