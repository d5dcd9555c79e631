#pragma once

#include <array>
#include <functional>

#include "focklab/core.hpp"

namespace focklab {

// ---------------------------------------------------------------------------
// Gaussian quadrature rules
// ---------------------------------------------------------------------------

/// Node/weight list for an integral over R^d. For rules built from a
/// WeightForm the weights already contain the Jacobian of the diagonalizing
/// change of variables, so  integral f = sum_i w_i f(x_i)  approximates
/// int f(x) exp(-x.Qx) dx. Rules are immutable once built; integrand
/// evaluation over distinct nodes is safe to run concurrently.
struct QuadratureRule {
  int dim = 1;
  Eigen::MatrixXd nodes;    // size() x dim
  Eigen::VectorXd weights;  // all > 0
  WeightForm form;

  Eigen::Index size() const { return nodes.rows(); }

  /// Complex coordinates of node i: z_j = x_{2j} + i x_{2j+1}.
  std::array<cplx, 2> complex_node(Eigen::Index i) const;
};

/// Gauss-Hermite rule for the weight exp(-t^2) on R. Exact for polynomials
/// of degree <= 2m-1; weights sum to sqrt(pi).
QuadratureRule hermite_rule(int m);

/// Gauss-Legendre rule on [a, b].
QuadratureRule legendre_rule(int m, double a, double b);

/// Gauss-Laguerre rule for the weight exp(-s) on [0, inf).
QuadratureRule laguerre_rule(int m);

/// Tensor Gauss-Hermite rule for exp(-x.Qx) on R^d, built by orthogonal
/// eigendecomposition of Q with nodes scaled to the principal axes; exact
/// for polynomials of degree <= 2m-1 per axis. Throws std::domain_error
/// naming the offending eigenvalue when Q is not positive definite.
QuadratureRule gaussian_rule(const WeightForm& form, int m_per_axis);

/// Variant with all axes scaled to the mean eigenvalue c = tr(Q)/d and the
/// per-axis Gaussian mismatch folded into the weights. Exact (instead of
/// merely convergent) for integrands whose product with the weight is a
/// polynomial times exp(-c |x|^2 + linear) -- the basis-pair and
/// coherent-state integrands of this toolkit, whose own exponentials cancel
/// the non-radial part of the weight.
QuadratureRule balanced_gaussian_rule(const WeightForm& form, int m_per_axis);

// ---------------------------------------------------------------------------
// Inner products and bounds
// ---------------------------------------------------------------------------

using Fn1 = std::function<cplx(cplx)>;
using Fn2 = std::function<cplx(cplx, cplx)>;

/// int f(z) conj(g(z)) exp(-x.Qx) dlambda(z) for a one-variable space.
/// Evaluates both rule variants at m points per axis; when they disagree
/// beyond roundoff, each is refined and the one stable under refinement
/// wins. Polynomial integrands and weight-cancelling integrands are both
/// integrated to machine precision this way.
cplx gaussian_inner_product(const Fn1& f, const Fn1& g,
                            const SpaceParams& params, int m = 20);

/// Same for a two-variable space.
cplx gaussian_inner_product(const Fn2& f, const Fn2& g,
                            const SpaceParams& params, int m = 20);

/// The pointwise-evaluation constant of the compact-open bound
/// |f(z)| <= C ||f||:  C = (1/(pi r^2)) (int_{D(z,r)} e^{phi(w)} dl(w))^{1/2}
/// with phi the weight exponent. Computed by tensor Gauss-Legendre in polar
/// coordinates (m x m nodes).
double pointwise_bound_constant(const SpaceParams& params, cplx center,
                                double radius, int m = 64);

/// int_0^inf h(tau) dtau for integrands decaying like exp(-decay * tau),
/// via Gauss-Laguerre after substituting the decay rate. Verifies its own
/// convergence (n vs. n+32 nodes) and throws std::domain_error when the
/// integrand does not decay as declared.
cplx semi_infinite_integral(const std::function<cplx(double)>& h, double decay,
                            int nodes = 64);

}  // namespace focklab
