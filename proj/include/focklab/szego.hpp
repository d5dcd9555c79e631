#pragma once

#include "focklab/core.hpp"

namespace focklab {

// ---------------------------------------------------------------------------
// Szego kernel of the model hypersurface
//   Im(z2) = kappa |z1|^2 + Re(l z1^2)
// obtained from the tau-family of weighted Bergman kernels
//   K_tau(z, w) = 4 tau exp(-2 pi tau l (z^2 + wbar^2) + 4 pi tau kappa z wbar)
// through  S(p, q) = int_0^inf K_tau(z', w') e^{-2 pi i tau (wbar - z)} dtau.
// ---------------------------------------------------------------------------

struct SurfacePoint {
  cplx zprime{0.0, 0.0};  // first coordinate
  cplx z{0.0, 0.0};       // second coordinate
};

struct ModelDomain {
  double kappa = 1.0;  // > 0
  cplx l{0.0, 0.0};
};

struct DomainMargin {
  double margin = 0.0;  // Im(z) - kappa |z'|^2 - Re(l z'^2)
  bool inside = false;  // margin > 0
};

DomainMargin in_domain(const SurfacePoint& p, const ModelDomain& d);

/// The displayed closed form above; times_kappa applies the measured
/// normalization correction shared with the basis module.
cplx kernel_tau(double tau, double kappa, cplx l, cplx z, cplx w,
                bool times_kappa = false);

/// Bracket of the closed form: i (wbar - z) - 2 kappa z' wbar' + l (z'^2 + wbar'^2).
cplx szego_bracket(const SurfacePoint& p, const SurfacePoint& q,
                   const ModelDomain& d);

/// (kappa / pi^2) bracket^{-2}. Throws std::domain_error when the bracket
/// vanishes (boundary diagonal).
cplx szego_closed(const SurfacePoint& p, const SurfacePoint& q,
                  const ModelDomain& d);

/// The tau-integral evaluated by Gauss-Laguerre with the decay rate
/// 2 pi (margin(p) + margin(q)). Refuses point pairs with nonpositive
/// margins, and pairs whose integrand does not actually decay (the domain
/// margin controls the decay only up to the z'-dependent terms).
cplx szego_numeric(const SurfacePoint& p, const SurfacePoint& q,
                   const ModelDomain& d, int nodes = 64);

}  // namespace focklab
