#include "focklab/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace focklab {

namespace {

constexpr double kPi = std::numbers::pi;

// Scale factor and rescaled parameters for the one-variable families.
struct Scalar1d {
  double root_kappa = 1.0;  // psi_j uses (root_kappa * z)^j
  cplx half_l{0.0, 0.0};    // exponent coefficient: exp(exp_coeff * z^2)
  cplx exp_coeff{0.0, 0.0};
  double unit_factor = 1.0;  // sqrt(kappa) under the unit-norm convention
};

Scalar1d scalar_family(const SpaceParams& space, bool unit_normalized) {
  Scalar1d s;
  if (const auto* hb = std::get_if<HBeta>(&space)) {
    s.exp_coeff = cplx{hb->beta / 2.0, 0.0};
  } else if (const auto* hk = std::get_if<HKappaL>(&space)) {
    s.root_kappa = std::sqrt(hk->kappa);
    s.exp_coeff = -hk->l / 2.0;
    if (unit_normalized) s.unit_factor = std::sqrt(hk->kappa);
  } else if (const auto* ht = std::get_if<HTauKappaL>(&space)) {
    const double scale = 4.0 * kPi * ht->tau;
    s.root_kappa = std::sqrt(scale * ht->kappa);
    s.exp_coeff = -(scale * ht->l) / 2.0;
    if (unit_normalized) s.unit_factor = std::sqrt(scale * ht->kappa);
  } else if (std::holds_alternative<SegalBargmann>(space)) {
    // exp_coeff stays 0
  } else {
    throw std::invalid_argument("scalar_family: not a one-variable space");
  }
  return s;
}

cplx ha_exponent(const HA& p, cplx z1, cplx z2) {
  // <Az,z>/2 = (b1 z1^2 + 2 k z1 z2 + b2 z2^2)/2
  return 0.5 * (p.beta1 * z1 * z1 + 2.0 * p.kappa * z1 * z2 +
                p.beta2 * z2 * z2);
}

}  // namespace

cplx normalized_monomial(cplx z, int k) {
  if (k < 0) throw std::invalid_argument("normalized_monomial: k >= 0");
  if (k <= 20) {
    cplx v{1.0 / std::sqrt(kPi), 0.0};
    for (int i = 1; i <= k; ++i) v *= z / std::sqrt(static_cast<double>(i));
    return v;
  }
  if (z == cplx{0.0, 0.0}) return cplx{0.0, 0.0};
  const double logmag = k * std::log(std::abs(z)) -
                        0.5 * std::lgamma(static_cast<double>(k) + 1.0) -
                        0.5 * std::log(kPi);
  return std::polar(std::exp(logmag), k * std::arg(z));
}

cplx eval_basis(const SpaceParams& space, const MultiIndex& alpha, cplx z1,
                cplx z2, bool unit_normalized) {
  validate_params(space);
  const int n = space_dim(space);
  if (alpha.n != n)
    throw std::invalid_argument("eval_basis: index dimension mismatch for " +
                                space_name(space));
  if (!alpha.valid()) throw std::invalid_argument("eval_basis: bad index");

  if (n == 2) {
    // phi_alpha = z1^a1 z2^a2 / sqrt(pi^2 a1! a2!), the product of the two
    // one-variable normalized monomials
    const cplx mono =
        normalized_monomial(z1, alpha[0]) * normalized_monomial(z2, alpha[1]);
    if (const auto* ha = std::get_if<HA>(&space))
      return mono * std::exp(ha_exponent(*ha, z1, z2));
    return mono;  // SegalBargmann(2)
  }

  const Scalar1d fam = scalar_family(space, unit_normalized);
  const cplx zz = fam.root_kappa * z1;
  cplx v = normalized_monomial(zz, alpha[0]);
  if (fam.exp_coeff != cplx{0.0, 0.0}) v *= std::exp(fam.exp_coeff * z1 * z1);
  return fam.unit_factor * v;
}

cplx eval_basis_dz(const SpaceParams& space, const MultiIndex& alpha, int j,
                   cplx z1, cplx z2, bool unit_normalized) {
  validate_params(space);
  const int n = space_dim(space);
  if (j < 1 || j > n)
    throw std::invalid_argument("eval_basis_dz: coordinate out of range");
  if (alpha.n != n)
    throw std::invalid_argument("eval_basis_dz: index dimension mismatch");

  if (n == 1) {
    const Scalar1d fam = scalar_family(space, unit_normalized);
    const cplx zz = fam.root_kappa * z1;
    const int k = alpha[0];
    cplx poly = k > 0 ? fam.root_kappa * std::sqrt(static_cast<double>(k)) *
                            normalized_monomial(zz, k - 1)
                      : cplx{0.0, 0.0};
    poly += 2.0 * fam.exp_coeff * z1 * normalized_monomial(zz, k);
    if (fam.exp_coeff != cplx{0.0, 0.0})
      return fam.unit_factor * poly * std::exp(fam.exp_coeff * z1 * z1);
    return fam.unit_factor * poly;
  }

  const int a1 = alpha[0], a2 = alpha[1];
  const cplx m1 = normalized_monomial(z1, a1);
  const cplx m2 = normalized_monomial(z2, a2);
  // derivative of the monomial part in coordinate j
  cplx dmono;
  if (j == 1) {
    dmono = a1 > 0 ? std::sqrt(static_cast<double>(a1)) *
                         normalized_monomial(z1, a1 - 1) * m2
                   : cplx{0.0, 0.0};
  } else {
    dmono = a2 > 0 ? std::sqrt(static_cast<double>(a2)) * m1 *
                         normalized_monomial(z2, a2 - 1)
                   : cplx{0.0, 0.0};
  }
  const cplx mono = m1 * m2;  // phi_alpha itself

  if (const auto* ha = std::get_if<HA>(&space)) {
    const cplx dexp = (j == 1) ? ha->beta1 * z1 + ha->kappa * z2
                               : ha->beta2 * z2 + ha->kappa * z1;
    return (dmono + mono * dexp) * std::exp(ha_exponent(*ha, z1, z2));
  }
  return dmono;  // SegalBargmann(2)
}

namespace {

// All basis values at one point, by monomial recurrence; avoids re-evaluating
// the exponential factor per index.
void basis_row_1d(const SpaceParams& space, int N, cplx z, bool unit_norm,
                  Eigen::VectorXcd& out) {
  const Scalar1d fam = scalar_family(space, unit_norm);
  const cplx zz = fam.root_kappa * z;
  cplx expf = fam.exp_coeff != cplx{0.0, 0.0} ? std::exp(fam.exp_coeff * z * z)
                                              : cplx{1.0, 0.0};
  expf *= fam.unit_factor;
  cplx mono{1.0 / std::sqrt(kPi), 0.0};
  for (int k = 0; k <= N; ++k) {
    out(k) = mono * expf;
    mono *= zz / std::sqrt(static_cast<double>(k + 1));
  }
}

void basis_row_2d(const SpaceParams& space, int N, cplx z1, cplx z2,
                  Eigen::VectorXcd& out) {
  cplx expf{1.0, 0.0};
  if (const auto* ha = std::get_if<HA>(&space))
    expf = std::exp(ha_exponent(*ha, z1, z2));
  std::vector<cplx> m1(static_cast<size_t>(N) + 1), m2(m1.size());
  cplx v{1.0 / std::sqrt(kPi), 0.0};
  for (int k = 0; k <= N; ++k) {
    m1[static_cast<size_t>(k)] = v;
    v *= z1 / std::sqrt(static_cast<double>(k + 1));
  }
  v = cplx{1.0 / std::sqrt(kPi), 0.0};
  for (int k = 0; k <= N; ++k) {
    m2[static_cast<size_t>(k)] = v;
    v *= z2 / std::sqrt(static_cast<double>(k + 1));
  }
  Eigen::Index idx = 0;
  for (int i = 0; i <= N; ++i)
    for (int k = 0; k <= N; ++k)
      out(idx++) = m1[static_cast<size_t>(i)] * m2[static_cast<size_t>(k)] * expf;
}

Eigen::MatrixXcd basis_at_nodes(const SpaceParams& space, int N,
                                const QuadratureRule& rule, bool unit_norm) {
  const int n = space_dim(space);
  const Eigen::Index count = rule.size();
  const Eigen::Index nb = n == 1 ? N + 1 : (N + 1) * (N + 1);
  Eigen::MatrixXcd psi(count, nb);
  Eigen::VectorXcd row(nb);
  for (Eigen::Index i = 0; i < count; ++i) {
    const auto z = rule.complex_node(i);
    if (n == 1)
      basis_row_1d(space, N, z[0], unit_norm, row);
    else
      basis_row_2d(space, N, z[0], z[1], row);
    psi.row(i) = row.transpose();
  }
  return psi;
}

}  // namespace

Eigen::MatrixXcd gram_matrix(const SpaceParams& space, int N, int m,
                             bool unit_normalized) {
  const QuadratureRule rule = balanced_gaussian_rule(weight_form(space), m);
  const Eigen::MatrixXcd psi = basis_at_nodes(space, N, rule, unit_normalized);
  const Eigen::MatrixXcd weighted = rule.weights.asDiagonal() * psi;
  // (psi_a, psi_b) = sum_i w_i psi_a(z_i) conj(psi_b(z_i))
  return (psi.adjoint() * weighted).transpose();
}

double gram_diagonal_constant(const SpaceParams& space) {
  validate_params(space);
  if (const auto* hk = std::get_if<HKappaL>(&space)) return 1.0 / hk->kappa;
  if (const auto* ht = std::get_if<HTauKappaL>(&space))
    return 1.0 / (4.0 * kPi * ht->tau * ht->kappa);
  return 1.0;
}

cplx apply_isometry(const CoeffVector& f, const HA& params, cplx z1, cplx z2) {
  if (f.n != 2)
    throw std::invalid_argument("apply_isometry: need a two-variable vector");
  cplx s{0.0, 0.0};
  for (const auto& [alpha, v] : f.entries)
    s += v * eval_basis(SpaceParams{SegalBargmann{2}}, alpha, z1, z2);
  return s * std::exp(ha_exponent(params, z1, z2));
}

cplx SynthesizedFunction::operator()(cplx z) const {
  cplx s{0.0, 0.0};
  for (const auto& [alpha, v] : coeffs.entries)
    s += v * eval_basis(space, alpha, z, cplx{0.0, 0.0}, unit_normalized);
  return s;
}

cplx SynthesizedFunction::operator()(cplx z1, cplx z2) const {
  cplx s{0.0, 0.0};
  for (const auto& [alpha, v] : coeffs.entries)
    s += v * eval_basis(space, alpha, z1, z2, unit_normalized);
  return s;
}

SynthesizedFunction synthesize(const CoeffVector& f, const SpaceParams& space,
                               bool unit_normalized) {
  if (f.n != space_dim(space))
    throw std::invalid_argument("synthesize: dimension mismatch");
  return SynthesizedFunction{f, space, unit_normalized};
}

namespace {

CoeffVector analyze_impl(const std::function<cplx(const std::array<cplx, 2>&)>& g,
                         const SpaceParams& space, int N, int m,
                         bool unit_norm) {
  const QuadratureRule rule = balanced_gaussian_rule(weight_form(space), m);
  const int n = space_dim(space);
  const Eigen::MatrixXcd psi = basis_at_nodes(space, N, rule, unit_norm);
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(psi.cols());
  for (Eigen::Index i = 0; i < rule.size(); ++i)
    acc += rule.weights(i) * g(rule.complex_node(i)) * psi.row(i).conjugate().transpose();

  CoeffVector out(n);
  const auto box = enumerate_box(n, N);
  for (size_t a = 0; a < box.size(); ++a) {
    const cplx v = acc(static_cast<Eigen::Index>(a));
    if (std::abs(v) > 0.0) out.set(box[a], v);
  }
  return out;
}

}  // namespace

CoeffVector analyze(const Fn1& g, const SpaceParams& space, int N, int m,
                    bool unit_normalized) {
  if (space_dim(space) != 1)
    throw std::invalid_argument("analyze: expected a one-variable space");
  return analyze_impl([&g](const std::array<cplx, 2>& z) { return g(z[0]); },
                      space, N, m, unit_normalized);
}

CoeffVector analyze(const Fn2& g, const SpaceParams& space, int N, int m,
                    bool unit_normalized) {
  if (space_dim(space) != 2)
    throw std::invalid_argument("analyze: expected a two-variable space");
  return analyze_impl(
      [&g](const std::array<cplx, 2>& z) { return g(z[0], z[1]); }, space, N,
      m, unit_normalized);
}

Eigen::MatrixXcd derivative_gram_matrix(const SpaceParams& space, int j, int N,
                                        int m) {
  const QuadratureRule rule = balanced_gaussian_rule(weight_form(space), m);
  const int n = space_dim(space);
  const auto box = enumerate_box(n, N);
  const Eigen::Index nb = static_cast<Eigen::Index>(box.size());

  const Eigen::MatrixXcd psi = basis_at_nodes(space, N, rule, false);
  Eigen::MatrixXcd dpsi(rule.size(), nb);
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const auto z = rule.complex_node(i);
    for (Eigen::Index a = 0; a < nb; ++a)
      dpsi(i, a) =
          eval_basis_dz(space, box[static_cast<size_t>(a)], j, z[0], z[1]);
  }
  const Eigen::MatrixXcd weighted = rule.weights.asDiagonal() * dpsi;
  // entry (a', a) = sum_i conj(psi_a'(z_i)) w_i dpsi_a(z_i)
  return psi.adjoint() * weighted;
}

}  // namespace focklab
