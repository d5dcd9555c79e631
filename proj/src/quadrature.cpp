#include "focklab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace focklab {

namespace {

constexpr double kPi = std::numbers::pi;

// Golub-Welsch nodes (eigenvalues of the symmetric tridiagonal Jacobi
// matrix) with Christoffel-function weights w_i = 1 / sum_k p_k(x_i)^2 over
// the orthonormal polynomials. The eigenvector-component formula
// mu0 * v0^2 bottoms out at squared eigensolver noise (~1e-32) in the far
// tail, which integrands with exponential growth then amplify; the
// Christoffel sums stay accurate at every node.
void golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                  double mu0, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  const Eigen::Index m = diag.size();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    J(i, i) = diag(i);
    if (i + 1 < m) J(i, i + 1) = J(i + 1, i) = offdiag(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  nodes = es.eigenvalues();
  weights.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = nodes(i);
    double prev = 0.0;
    double cur = 1.0 / std::sqrt(mu0);
    double sum = cur * cur;
    for (Eigen::Index k = 0; k + 1 < m; ++k) {
      const double next =
          ((x - diag(k)) * cur - (k > 0 ? offdiag(k - 1) : 0.0) * prev) /
          offdiag(k);
      prev = cur;
      cur = next;
      sum += cur * cur;
    }
    weights(i) = 1.0 / sum;
  }
}

}  // namespace

std::array<cplx, 2> QuadratureRule::complex_node(Eigen::Index i) const {
  std::array<cplx, 2> z{cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  z[0] = cplx{nodes(i, 0), nodes(i, 1)};
  if (dim == 4) z[1] = cplx{nodes(i, 2), nodes(i, 3)};
  return z;
}

QuadratureRule hermite_rule(int m) {
  if (m < 1) throw std::invalid_argument("hermite_rule: need m >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd off(m > 1 ? m - 1 : 0);
  for (int k = 1; k < m; ++k) off(k - 1) = std::sqrt(k / 2.0);
  QuadratureRule rule;
  rule.dim = 1;
  Eigen::VectorXd nodes, weights;
  golub_welsch(diag, off, std::sqrt(kPi), nodes, weights);
  rule.nodes = nodes;
  rule.weights = weights;
  return rule;
}

QuadratureRule legendre_rule(int m, double a, double b) {
  if (m < 1) throw std::invalid_argument("legendre_rule: need m >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd off(m > 1 ? m - 1 : 0);
  for (int k = 1; k < m; ++k) off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::VectorXd nodes, weights;
  golub_welsch(diag, off, 2.0, nodes, weights);
  // map [-1,1] -> [a,b]
  QuadratureRule rule;
  rule.dim = 1;
  rule.nodes = (0.5 * (b - a) * nodes.array() + 0.5 * (a + b)).matrix();
  rule.weights = 0.5 * (b - a) * weights;
  return rule;
}

QuadratureRule laguerre_rule(int m) {
  if (m < 1) throw std::invalid_argument("laguerre_rule: need m >= 1");
  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(m > 1 ? m - 1 : 0);
  for (int k = 0; k < m; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < m; ++k) off(k - 1) = static_cast<double>(k);
  Eigen::VectorXd nodes, weights;
  golub_welsch(diag, off, 1.0, nodes, weights);
  QuadratureRule rule;
  rule.dim = 1;
  rule.nodes = nodes;
  rule.weights = weights;
  return rule;
}

namespace {

// Shared skeleton of the two rule variants: nodes at x = V (t / sqrt(s_j)),
// weights adjusted by exp((1 - lambda_j / s_j) t_j^2) / sqrt(prod s_j).
// With s_j = lambda_j the adjustment is 1 and the rule is the classical
// Gauss rule for the weight (polynomial-exact); with s_j = c = tr(Q)/d the
// rule is exact on integrands that cancel the non-radial weight part.
QuadratureRule scaled_rule(const WeightForm& form, int m_per_axis,
                           bool balanced) {
  if (m_per_axis < 1)
    throw std::invalid_argument("gaussian_rule: need m >= 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form.Q);
  const Eigen::VectorXd lambda = es.eigenvalues();
  if (lambda.minCoeff() <= kPositiveDefiniteTol) {
    std::ostringstream os;
    os << "gaussian_rule: weight form is not positive definite "
       << "(smallest eigenvalue " << lambda.minCoeff() << ")";
    throw std::domain_error(os.str());
  }
  const Eigen::MatrixXd& V = es.eigenvectors();
  const int d = form.dim;

  const QuadratureRule base = hermite_rule(m_per_axis);
  const Eigen::Index m = base.size();
  Eigen::Index count = 1;
  for (int j = 0; j < d; ++j) count *= m;

  Eigen::VectorXd scale(d);
  if (balanced)
    scale.setConstant(form.Q.trace() / d);
  else
    scale = lambda;

  QuadratureRule rule;
  rule.dim = d;
  rule.form = form;
  rule.nodes.resize(count, d);
  rule.weights.resize(count);

  const double jacobian = 1.0 / std::sqrt(scale.prod());
  Eigen::VectorXd t(d);
  for (Eigen::Index idx = 0; idx < count; ++idx) {
    Eigen::Index rest = idx;
    double logw = 0.0;
    double wprod = jacobian;
    for (int j = d - 1; j >= 0; --j) {
      const Eigen::Index i = rest % m;
      rest /= m;
      const double tj = base.nodes(i, 0);
      t(j) = tj / std::sqrt(scale(j));
      wprod *= base.weights(i);
      logw += (1.0 - lambda(j) / scale(j)) * tj * tj;
    }
    rule.nodes.row(idx) = (V * t).transpose();
    rule.weights(idx) = wprod * std::exp(logw);
  }
  return rule;
}

}  // namespace

QuadratureRule gaussian_rule(const WeightForm& form, int m_per_axis) {
  return scaled_rule(form, m_per_axis, false);
}

QuadratureRule balanced_gaussian_rule(const WeightForm& form, int m_per_axis) {
  return scaled_rule(form, m_per_axis, true);
}

namespace {

template <typename Eval>
cplx apply_rule(const QuadratureRule& rule, const Eval& eval) {
  cplx s{0.0, 0.0};
  for (Eigen::Index i = 0; i < rule.size(); ++i)
    s += rule.weights(i) * eval(rule.complex_node(i));
  return s;
}

// Both rule variants at m points, reconciled: agreement within roundoff
// accepts the balanced value; otherwise each variant is refined and the one
// stable under refinement wins (the other is still converging on an
// integrand outside its exactness class).
template <typename Eval>
cplx reconciled_integral(const WeightForm& form, int m, const Eval& eval) {
  const cplx classical = apply_rule(gaussian_rule(form, m), eval);
  const cplx balanced = apply_rule(balanced_gaussian_rule(form, m), eval);
  const double scale =
      std::max({std::abs(classical), std::abs(balanced), 1.0});
  if (std::abs(classical - balanced) <= 1e-12 * scale) return balanced;

  const int finer = m + 6;
  const cplx classical_f = apply_rule(gaussian_rule(form, finer), eval);
  const cplx balanced_f = apply_rule(balanced_gaussian_rule(form, finer), eval);
  return std::abs(classical_f - classical) <= std::abs(balanced_f - balanced)
             ? classical_f
             : balanced_f;
}

WeightForm form_for(const SpaceParams& params, int expect_dim) {
  if (space_dim(params) != expect_dim)
    throw std::invalid_argument(
        "gaussian_inner_product: integrand arity does not match the space "
        "dimension of " +
        space_name(params));
  return weight_form(params);
}

}  // namespace

cplx gaussian_inner_product(const Fn1& f, const Fn1& g,
                            const SpaceParams& params, int m) {
  const WeightForm form = form_for(params, 1);
  return reconciled_integral(form, m, [&](const std::array<cplx, 2>& z) {
    return f(z[0]) * std::conj(g(z[0]));
  });
}

cplx gaussian_inner_product(const Fn2& f, const Fn2& g,
                            const SpaceParams& params, int m) {
  const WeightForm form = form_for(params, 2);
  return reconciled_integral(form, m, [&](const std::array<cplx, 2>& z) {
    return f(z[0], z[1]) * std::conj(g(z[0], z[1]));
  });
}

double pointwise_bound_constant(const SpaceParams& params, cplx center,
                                double radius, int m) {
  if (!(radius > 0.0))
    throw std::invalid_argument("pointwise_bound_constant: radius must be > 0");
  const WeightForm form = weight_form(params);
  if (form.dim != 2)
    throw std::invalid_argument(
        "pointwise_bound_constant: one-variable spaces only");
  if (!form.positive_definite)
    throw std::domain_error(
        "pointwise_bound_constant: weight form is not positive definite");

  const QuadratureRule rad = legendre_rule(m, 0.0, radius);
  const QuadratureRule ang = legendre_rule(m, 0.0, 2.0 * kPi);

  // integrand e^{+phi}, phi(w) = w.Qw in real coordinates
  double integral = 0.0;
  for (Eigen::Index i = 0; i < rad.size(); ++i) {
    const double rho = rad.nodes(i, 0);
    double ring = 0.0;
    for (Eigen::Index j = 0; j < ang.size(); ++j) {
      const double theta = ang.nodes(j, 0);
      const double x = center.real() + rho * std::cos(theta);
      const double y = center.imag() + rho * std::sin(theta);
      const double phi = form.Q(0, 0) * x * x + 2.0 * form.Q(0, 1) * x * y +
                         form.Q(1, 1) * y * y;
      ring += ang.weights(j) * std::exp(phi);
    }
    integral += rad.weights(i) * rho * ring;
  }
  return std::sqrt(integral) / (kPi * radius * radius);
}

namespace {

cplx laguerre_value(const std::function<cplx(double)>& h, double decay,
                    int nodes) {
  const QuadratureRule rule = laguerre_rule(nodes);
  cplx s{0.0, 0.0};
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const double si = rule.nodes(i, 0);
    // modified weight w_i e^{s_i}; both factors stay inside double range
    // for nodes <= 128
    s += rule.weights(i) * std::exp(si) * h(si / decay);
  }
  return s / decay;
}

}  // namespace

cplx semi_infinite_integral(const std::function<cplx(double)>& h, double decay,
                            int nodes) {
  if (!(decay > 0.0))
    throw std::invalid_argument("semi_infinite_integral: decay must be > 0");
  if (nodes < 4 || nodes > 128)
    throw std::invalid_argument("semi_infinite_integral: nodes in [4, 128]");

  const cplx coarse = laguerre_value(h, decay, nodes);
  const cplx fine = laguerre_value(h, decay, nodes + 32);
  const double scale = std::max(std::abs(fine), 1e-300);
  if (std::abs(fine - coarse) > 1e-6 * std::max(scale, 1.0)) {
    std::ostringstream os;
    os << "semi_infinite_integral: no convergence at the declared decay rate "
       << decay << " (refinement changed the value by "
       << std::abs(fine - coarse) << ")";
    throw std::domain_error(os.str());
  }
  return fine;
}

}  // namespace focklab
