#pragma once

#include "focklab/core.hpp"

namespace focklab {

// ---------------------------------------------------------------------------
// Reproducing kernels and Berezin transforms on the one-variable spaces
// H_beta and H_{kappa,l}.
//
// Kernels (literal convention, 1/pi prefactor):
//   K_beta(z,w)    = (1/pi) exp(beta (z^2 + wbar^2)/2) exp(z wbar)
//   K_{k,l}(z,w)   = (1/pi) exp(-l z^2/2 - conj(l) wbar^2/2) exp(k z wbar)
//
// The conj(l) on the wbar^2 factor keeps K Hermitian with K(w,w) > 0; for
// real l it is the usual display. In the literal convention the H_{kappa,l}
// kernel reproduces only up to the Gram constant 1/kappa; unit_norm = true
// multiplies the kernel by kappa (so k_w has exact unit norm).
// ---------------------------------------------------------------------------

enum class BerezinOp { A, AStar, AB, BA };

BerezinOp parse_berezin_op(const std::string& name);  // "a","a*","ab","ba"
std::string to_string(BerezinOp op);

struct KernelSpec {
  SpaceParams space;       // HBeta or HKappaL
  bool unit_norm = false;  // apply the measured Gram-diagonal correction
};

/// Function of the form (sum_k c_k z^k) exp(q z^2 + p z + r). Closed under
/// d/dz and multiplication by z, which is how the ladder operators act on
/// normalized kernels without any numerical differentiation.
struct GaussianPoly {
  std::vector<cplx> coeff{cplx{1.0, 0.0}};
  cplx quad{0.0, 0.0};
  cplx lin{0.0, 0.0};
  cplx log_const{0.0, 0.0};

  cplx operator()(cplx z) const;
  GaussianPoly derivative() const;
  GaussianPoly times_z() const;
  GaussianPoly scaled(cplx s) const;
  /// Requires identical exponents.
  GaussianPoly plus(const GaussianPoly& other) const;
};

/// The reproducing kernel K(z, w) of the selected space.
cplx kernel(const KernelSpec& spec, cplx z, cplx w);

/// k_w = K(., w) / sqrt(K(w, w)); unit norm under unit_norm, else norm
/// sqrt(gram_diagonal_constant).
GaussianPoly normalized_kernel(const KernelSpec& spec, cplx w);

/// Closed-form Berezin transforms (T k_w, k_w):
///   H_beta:      a  -> beta w + wbar          a* -> conj of that
///                ab -> 1 + beta w^2 + |w|^2   ba -> beta w^2 + |w|^2
///   H_{kappa,l}: a  -> wbar - l w / kappa     a* -> conj of that
///                (times kappa under unit_norm; ab/ba not available)
/// Throws std::invalid_argument for unsupported (op, space) pairs.
cplx berezin_closed(BerezinOp op, const KernelSpec& spec, cplx w);

/// (T k_w, k_w) by Gauss-Hermite quadrature, with T k_w computed by exact
/// symbolic differentiation of the Gaussian-times-polynomial form of k_w.
/// Refuses degenerate weights (beta = 1) with a pointer to the closed form.
cplx berezin_numeric(BerezinOp op, const KernelSpec& spec, cplx w, int m = 24);

}  // namespace focklab
