#include "focklab/bargmann.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "focklab/basis.hpp"
#include "focklab/quadrature.hpp"

namespace focklab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void HermiteExpansion::set(int k, cplx value) {
  if (k < 0) throw std::invalid_argument("HermiteExpansion: k >= 0");
  if (value == cplx{0.0, 0.0})
    coeffs.erase(k);
  else
    coeffs[k] = value;
}

cplx HermiteExpansion::at(int k) const {
  auto it = coeffs.find(k);
  return it == coeffs.end() ? cplx{0.0, 0.0} : it->second;
}

int HermiteExpansion::max_index() const {
  return coeffs.empty() ? -1 : coeffs.rbegin()->first;
}

double HermiteExpansion::norm_sq() const {
  double s = 0.0;
  for (const auto& [k, v] : coeffs) s += std::norm(v);
  return s;
}

double HermiteExpansion::norm() const { return std::sqrt(norm_sq()); }

double hermite_function(int k, double x) {
  if (k < 0) throw std::invalid_argument("hermite_function: k >= 0");
  const double h0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (k == 0) return h0;
  double prev = h0;
  double cur = std::sqrt(2.0) * x * h0;
  for (int j = 2; j <= k; ++j) {
    const double next = x * std::sqrt(2.0 / j) * cur -
                        std::sqrt((j - 1.0) / j) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx bargmann_transform(const HermiteExpansion& u, cplx z, int m) {
  if (u.coeffs.empty()) return cplx{0.0, 0.0};
  const QuadratureRule rule = hermite_rule(m);
  // kernel = e^{-x^2} * e^{x^2/2 - z^2/2 + sqrt(2) z x}; the first factor is
  // the rule's weight
  cplx s{0.0, 0.0};
  const cplx zhalf = -0.5 * z * z;
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes(i, 0);
    cplx ux{0.0, 0.0};
    for (const auto& [k, c] : u.coeffs) ux += c * hermite_function(k, x);
    s += rule.weights(i) * ux *
         std::exp(cplx{0.5 * x * x, 0.0} + zhalf + std::sqrt(2.0) * z * x);
  }
  return std::pow(kPi, -0.25) * s;
}

std::pair<TruncatedOperator, TruncatedOperator> xd_matrices(int N) {
  if (N < 1) throw std::invalid_argument("xd_matrices: need N >= 1");
  using Triplet = Eigen::Triplet<cplx>;
  std::vector<Triplet> xt, dt;
  for (int k = 0; k <= N; ++k) {
    // x h_k = sqrt((k+1)/2) h_{k+1} + sqrt(k/2) h_{k-1}
    // h_k'  = sqrt(k/2) h_{k-1} - sqrt((k+1)/2) h_{k+1},  D = -i d/dx
    if (k + 1 <= N) {
      const double up = std::sqrt((k + 1) / 2.0);
      xt.emplace_back(k + 1, k, cplx{up, 0.0});
      dt.emplace_back(k + 1, k, cplx{0.0, up});
    }
    if (k >= 1) {
      const double down = std::sqrt(k / 2.0);
      xt.emplace_back(k - 1, k, cplx{down, 0.0});
      dt.emplace_back(k - 1, k, cplx{0.0, -down});
    }
  }
  TruncatedOperator X, D;
  X.n = D.n = 1;
  X.N = D.N = N;
  X.matrix.resize(N + 1, N + 1);
  D.matrix.resize(N + 1, N + 1);
  X.matrix.setFromTriplets(xt.begin(), xt.end());
  D.matrix.setFromTriplets(dt.begin(), dt.end());
  X.shift_profile = {{1, 0}, {-1, 0}};
  D.shift_profile = {{1, 0}, {-1, 0}};
  X.name = "X";
  D.name = "D";
  return {std::move(X), std::move(D)};
}

namespace {

Eigen::VectorXcd to_dense_1d(const HermiteExpansion& u, int N) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N + 1);
  for (const auto& [k, c] : u.coeffs) {
    if (k > N) throw std::invalid_argument("expansion exceeds the box");
    v(k) = c;
  }
  return v;
}

}  // namespace

UncertaintyReport verify_uncertainty(const HermiteExpansion& u, double a,
                                     double b, int N) {
  if (u.coeffs.empty())
    throw std::invalid_argument("verify_uncertainty: empty expansion");
  if (u.max_index() > N - 2)
    throw std::invalid_argument(
        "verify_uncertainty: support must keep margin 2 from the top");

  auto [X, D] = xd_matrices(N);
  const Eigen::VectorXcd uv = to_dense_1d(u, N);
  const Eigen::VectorXcd xu = X.matrix * uv;
  const Eigen::VectorXcd du = D.matrix * uv;
  const Eigen::VectorXcd xau = xu - a * uv;
  const Eigen::VectorXcd dbu = du - b * uv;
  const double usq = uv.squaredNorm();

  UncertaintyReport rep;
  rep.x_norm_sq = xu.squaredNorm();
  rep.d_norm_sq = du.squaredNorm();
  rep.product_slack = xau.norm() * dbu.norm() - 0.5 * usq;
  rep.sum_slack = rep.x_norm_sq + rep.d_norm_sq - usq;
  return rep;
}

ConjugationReport verify_conjugation(int N, int m, int samples,
                                     unsigned seed) {
  if (N < 4) throw std::invalid_argument("verify_conjugation: need N >= 4");
  ConjugationReport rep;
  const SpaceParams fock{SegalBargmann{1}};

  // Fock annihilation matrix from quadrature: entries (d/dz e_k, e_j) / c
  // with e_k = z^k / sqrt(k!) and c the measured Gram constant.
  auto monomial = [](int k) {
    return [k](cplx z) {
      return normalized_monomial(z, k) * std::sqrt(kPi);  // z^k / sqrt(k!)
    };
  };
  auto monomial_d = [](int k) {
    return [k](cplx z) -> cplx {
      if (k == 0) return cplx{0.0, 0.0};
      return std::sqrt(static_cast<double>(k)) * normalized_monomial(z, k - 1) *
             std::sqrt(kPi);
    };
  };
  const cplx c_meas =
      gaussian_inner_product(Fn1(monomial(0)), Fn1(monomial(0)), fock, m);

  auto [X, D] = xd_matrices(N);
  const Eigen::MatrixXcd lowering =
      (Eigen::MatrixXcd(X.matrix) + cplx{0.0, 1.0} * Eigen::MatrixXcd(D.matrix)) /
      std::sqrt(2.0);
  // interior block: rows/cols 0 .. N-1 (only the top row of the box is
  // corrupted by truncation)
  double worst = 0.0;
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j) {
      const cplx num =
          gaussian_inner_product(Fn1(monomial_d(k)), Fn1(monomial(j)), fock, m) /
          c_meas;
      worst = std::max(worst, std::abs(lowering(j, k) - num));
    }
  rep.matrix_residual = worst;

  // ||Xu||^2 + ||Du||^2 versus ||a Bu||^2 + ||a* Bu||^2, the Fock side by
  // quadrature on the transformed polynomial
  std::mt19937_64 rng(seed);
  auto fock_side = [&](const HermiteExpansion& u) {
    // Bu = sum c_k z^k / sqrt(k!)
    Fn1 du = [&u](cplx z) {
      cplx s{0.0, 0.0};
      for (const auto& [k, c] : u.coeffs)
        if (k >= 1)
          s += c * std::sqrt(static_cast<double>(k)) *
               normalized_monomial(z, k - 1) * std::sqrt(kPi);
      return s;
    };
    Fn1 zu = [&u](cplx z) {
      cplx s{0.0, 0.0};
      for (const auto& [k, c] : u.coeffs)
        s += c * normalized_monomial(z, k) * std::sqrt(kPi) * z;
      return s;
    };
    const double lower =
        gaussian_inner_product(du, du, fock, m).real() / c_meas.real();
    const double raise =
        gaussian_inner_product(zu, zu, fock, m).real() / c_meas.real();
    return lower + raise;
  };

  for (int s = 0; s < samples; ++s) {
    const HermiteExpansion u = random_hermite_expansion(N, 2, rng);
    const UncertaintyReport unc = verify_uncertainty(u, 0.0, 0.0, N);
    const double lhs = unc.x_norm_sq + unc.d_norm_sq;
    const double rhs = fock_side(u);
    rep.equivalence_rel_error =
        std::max(rep.equivalence_rel_error, std::abs(lhs - rhs) / lhs);
  }

  HermiteExpansion h0;
  h0.set(0, cplx{1.0, 0.0});
  const UncertaintyReport unc0 = verify_uncertainty(h0, 0.0, 0.0, N);
  rep.equality_case_value = unc0.x_norm_sq + unc0.d_norm_sq;
  return rep;
}

UnitarityReport bargmann_unitarity_constant(int kmax, int m_outer,
                                            int m_inner) {
  const QuadratureRule outer =
      gaussian_rule(weight_form(SpaceParams{SegalBargmann{1}}), m_outer);
  const QuadratureRule inner = hermite_rule(m_inner);
  const int nb = kmax + 1;

  // transformed basis at the outer nodes: B(i, k) = (B h_k)(z_i)
  Eigen::MatrixXd hermite_vals(inner.size(), nb);
  for (Eigen::Index t = 0; t < inner.size(); ++t)
    for (int k = 0; k <= kmax; ++k)
      hermite_vals(t, k) = hermite_function(k, inner.nodes(t, 0));
  Eigen::MatrixXcd transformed(outer.size(), nb);
  Eigen::VectorXcd ker(inner.size());
  for (Eigen::Index i = 0; i < outer.size(); ++i) {
    const cplx z{outer.nodes(i, 0), outer.nodes(i, 1)};
    for (Eigen::Index t = 0; t < inner.size(); ++t) {
      const double x = inner.nodes(t, 0);
      ker(t) = inner.weights(t) * std::exp(cplx{0.5 * x * x, 0.0} -
                                           0.5 * z * z + std::sqrt(2.0) * z * x);
    }
    transformed.row(i) =
        std::pow(kPi, -0.25) * (ker.transpose() * hermite_vals);
  }
  const Eigen::MatrixXcd gram =
      transformed.adjoint() * (outer.weights.asDiagonal() * transformed);

  UnitarityReport rep;
  rep.constant = gram.diagonal().real().mean();
  for (int k = 0; k <= kmax; ++k)
    rep.diagonal_spread = std::max(
        rep.diagonal_spread, std::abs(gram(k, k).real() - rep.constant));
  for (int k = 0; k <= kmax; ++k)
    for (int j = 0; j <= kmax; ++j)
      if (j != k)
        rep.max_offdiagonal = std::max(rep.max_offdiagonal, std::abs(gram(k, j)));
  return rep;
}

HermiteExpansion random_hermite_expansion(int N, int margin,
                                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HermiteExpansion e;
  for (int k = margin; k <= N - margin; ++k) e.set(k, cplx{u(rng), u(rng)});
  return e;
}

}  // namespace focklab
