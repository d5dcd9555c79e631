// Test-only oracles, independent of the library's quadrature path:
//  - analytic Gaussian moments of complex monomials against exp(-x.Qx),
//    via real-monomial moment formulas after an orthogonal rotation
//  - the weight exponents evaluated directly from their displayed complex
//    forms (no quadratic-form matrix involved)
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>

#include <Eigen/Dense>

#include "focklab/core.hpp"

namespace focklab::testing {

using RealPoly = std::map<std::array<int, 4>, cplx>;  // exponents -> coeff

inline RealPoly poly_const(cplx c) { return {{{0, 0, 0, 0}, c}}; }

inline RealPoly poly_mul(const RealPoly& a, const RealPoly& b) {
  RealPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::array<int, 4> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2],
                           ea[3] + eb[3]};
      out[e] += ca * cb;
    }
  return out;
}

inline RealPoly poly_pow(const RealPoly& a, int p) {
  RealPoly out = poly_const(cplx{1.0, 0.0});
  for (int i = 0; i < p; ++i) out = poly_mul(out, a);
  return out;
}

// z_j = x_{2j} + i x_{2j+1} as a linear polynomial (conjugated on request)
inline RealPoly poly_z(int j, bool conj) {
  RealPoly out;
  std::array<int, 4> e{0, 0, 0, 0};
  e[static_cast<size_t>(2 * j)] = 1;
  out[e] = cplx{1.0, 0.0};
  e[static_cast<size_t>(2 * j)] = 0;
  e[static_cast<size_t>(2 * j + 1)] = 1;
  out[e] = conj ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
  return out;
}

// int y^p exp(-lambda y^2) dy over R
inline double gaussian_1d_moment(int p, double lambda) {
  if (p % 2 == 1) return 0.0;
  return std::tgamma((p + 1) / 2.0) / std::pow(lambda, (p + 1) / 2.0);
}

/// int z^alpha conj(z)^alphabar exp(-x.Qx) dlambda, computed from closed
/// 1-d moments after rotating Q to principal axes.
inline cplx analytic_gaussian_moment(const Eigen::MatrixXd& Q,
                                     const MultiIndex& alpha,
                                     const MultiIndex& alphabar) {
  const int d = static_cast<int>(Q.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
  const Eigen::MatrixXd V = es.eigenvectors();
  const Eigen::VectorXd lambda = es.eigenvalues();

  // the monomial as a real polynomial in x
  RealPoly mono = poly_const(cplx{1.0, 0.0});
  for (int j = 0; j < alpha.n; ++j) {
    mono = poly_mul(mono, poly_pow(poly_z(j, false), alpha[j]));
    mono = poly_mul(mono, poly_pow(poly_z(j, true), alphabar[j]));
  }

  // substitute x_k = sum_i V(k,i) y_i
  std::array<RealPoly, 4> x_in_y;
  for (int k = 0; k < d; ++k) {
    RealPoly lin;
    for (int i = 0; i < d; ++i) {
      std::array<int, 4> e{0, 0, 0, 0};
      e[static_cast<size_t>(i)] = 1;
      lin[e] += cplx{V(k, i), 0.0};
    }
    x_in_y[static_cast<size_t>(k)] = lin;
  }
  RealPoly rotated;
  for (const auto& [e, c] : mono) {
    RealPoly term = poly_const(c);
    for (int k = 0; k < d; ++k)
      if (e[static_cast<size_t>(k)] > 0)
        term = poly_mul(term, poly_pow(x_in_y[static_cast<size_t>(k)],
                                       e[static_cast<size_t>(k)]));
    for (const auto& [et, ct] : term) rotated[et] += ct;
  }

  cplx total{0.0, 0.0};
  for (const auto& [e, c] : rotated) {
    double factor = 1.0;
    for (int i = 0; i < d; ++i)
      factor *= gaussian_1d_moment(e[static_cast<size_t>(i)], lambda(i));
    for (int i = d; i < 4; ++i)
      if (e[static_cast<size_t>(i)] != 0) factor = 0.0;
    total += c * factor;
  }
  return total;
}

/// The weight exponent evaluated straight from the displayed complex form,
/// so that x.Qx can be checked against it.
inline double direct_weight_exponent(const SpaceParams& params, cplx z1,
                                     cplx z2 = cplx{0.0, 0.0}) {
  if (const auto* sb = std::get_if<SegalBargmann>(&params))
    return std::norm(z1) + (sb->n == 2 ? std::norm(z2) : 0.0);
  if (const auto* ha = std::get_if<HA>(&params)) {
    const cplx azz = ha->beta1 * z1 * z1 + 2.0 * ha->kappa * z1 * z2 +
                     ha->beta2 * z2 * z2;
    return azz.real() + std::norm(z1) + std::norm(z2);
  }
  if (const auto* hb = std::get_if<HBeta>(&params)) {
    const double x = z1.real(), y = z1.imag();
    return (1.0 + hb->beta) * x * x + (1.0 - hb->beta) * y * y;
  }
  if (const auto* hk = std::get_if<HKappaL>(&params))
    return hk->kappa * std::norm(z1) - (hk->l * z1 * z1).real();
  const auto& ht = std::get<HTauKappaL>(params);
  return 4.0 * M_PI * ht.tau *
         (ht.kappa * std::norm(z1) + (ht.l * z1 * z1).real());
}

}  // namespace focklab::testing
