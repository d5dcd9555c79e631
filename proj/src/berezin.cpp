#include "focklab/berezin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "focklab/basis.hpp"
#include "focklab/quadrature.hpp"

namespace focklab {

namespace {
constexpr double kPi = std::numbers::pi;

void require_kernel_space(const KernelSpec& spec) {
  validate_params(spec.space);
  if (!std::holds_alternative<HBeta>(spec.space) &&
      !std::holds_alternative<HKappaL>(spec.space))
    throw std::invalid_argument(
        "kernel: closed forms cover HBeta and HKappaL only");
}

}  // namespace

BerezinOp parse_berezin_op(const std::string& name) {
  if (name == "a") return BerezinOp::A;
  if (name == "a*" || name == "a_star") return BerezinOp::AStar;
  if (name == "ab") return BerezinOp::AB;
  if (name == "ba") return BerezinOp::BA;
  throw std::invalid_argument("unknown Berezin operator: " + name);
}

std::string to_string(BerezinOp op) {
  switch (op) {
    case BerezinOp::A: return "a";
    case BerezinOp::AStar: return "a*";
    case BerezinOp::AB: return "ab";
    case BerezinOp::BA: return "ba";
  }
  return "?";
}

cplx GaussianPoly::operator()(cplx z) const {
  cplx p{0.0, 0.0};
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) p = p * z + *it;
  return p * std::exp(quad * z * z + lin * z + log_const);
}

GaussianPoly GaussianPoly::derivative() const {
  GaussianPoly out = *this;
  // (p e^q)' = (p' + p (2 quad z + lin)) e^q
  std::vector<cplx> dp(coeff.size() + 1, cplx{0.0, 0.0});
  for (size_t k = 1; k < coeff.size(); ++k)
    dp[k - 1] += static_cast<double>(k) * coeff[k];
  for (size_t k = 0; k < coeff.size(); ++k) {
    dp[k] += lin * coeff[k];
    dp[k + 1] += 2.0 * quad * coeff[k];
  }
  while (dp.size() > 1 && dp.back() == cplx{0.0, 0.0}) dp.pop_back();
  out.coeff = std::move(dp);
  return out;
}

GaussianPoly GaussianPoly::times_z() const {
  GaussianPoly out = *this;
  out.coeff.insert(out.coeff.begin(), cplx{0.0, 0.0});
  return out;
}

GaussianPoly GaussianPoly::scaled(cplx s) const {
  GaussianPoly out = *this;
  for (auto& c : out.coeff) c *= s;
  return out;
}

GaussianPoly GaussianPoly::plus(const GaussianPoly& other) const {
  if (quad != other.quad || lin != other.lin || log_const != other.log_const)
    throw std::invalid_argument("GaussianPoly::plus: exponent mismatch");
  GaussianPoly out = *this;
  out.coeff.resize(std::max(coeff.size(), other.coeff.size()),
                   cplx{0.0, 0.0});
  for (size_t k = 0; k < other.coeff.size(); ++k)
    out.coeff[k] += other.coeff[k];
  return out;
}

cplx kernel(const KernelSpec& spec, cplx z, cplx w) {
  require_kernel_space(spec);
  const cplx wb = std::conj(w);
  if (const auto* hb = std::get_if<HBeta>(&spec.space)) {
    return std::exp(0.5 * hb->beta * (z * z + wb * wb) + z * wb) / kPi;
  }
  const auto& hk = std::get<HKappaL>(spec.space);
  const double factor = spec.unit_norm ? hk.kappa / kPi : 1.0 / kPi;
  return factor * std::exp(-0.5 * hk.l * z * z -
                           0.5 * std::conj(hk.l) * wb * wb +
                           hk.kappa * z * wb);
}

GaussianPoly normalized_kernel(const KernelSpec& spec, cplx w) {
  require_kernel_space(spec);
  const cplx diag = kernel(spec, w, w);
  if (!(diag.real() > 0.0) || std::abs(diag.imag()) > 1e-14 * diag.real())
    throw std::domain_error("normalized_kernel: K(w,w) must be positive");

  GaussianPoly kw;
  const cplx wb = std::conj(w);
  if (const auto* hb = std::get_if<HBeta>(&spec.space)) {
    kw.quad = cplx{0.5 * hb->beta, 0.0};
    kw.lin = wb;
    kw.log_const = 0.5 * hb->beta * wb * wb - std::log(kPi);
  } else {
    const auto& hk = std::get<HKappaL>(spec.space);
    kw.quad = -0.5 * hk.l;
    kw.lin = hk.kappa * wb;
    kw.log_const = -0.5 * std::conj(hk.l) * wb * wb - std::log(kPi);
    if (spec.unit_norm) kw.log_const += std::log(hk.kappa);
  }
  kw.log_const -= 0.5 * std::log(diag.real());
  return kw;
}

namespace {

// The ladder operators act locally on Gaussian-times-polynomial functions:
//   a    = d/dz
//   b    = multiplication by z
//   b*   = (a + l b)/kappa on H_{kappa,l}, so
//   a*   = kappa b - conj(l) b*     (H_{kappa,l})
//   a*   = beta a + (1 - beta^2) b  (H_beta)
GaussianPoly apply_op(BerezinOp op, const KernelSpec& spec,
                      const GaussianPoly& f) {
  const auto* hb = std::get_if<HBeta>(&spec.space);
  switch (op) {
    case BerezinOp::A:
      return f.derivative();
    case BerezinOp::AStar: {
      if (hb) {
        return f.derivative().scaled(hb->beta).plus(
            f.times_z().scaled(1.0 - hb->beta * hb->beta));
      }
      const auto& hk = std::get<HKappaL>(spec.space);
      const GaussianPoly bstar =
          f.derivative().plus(f.times_z().scaled(hk.l)).scaled(1.0 / hk.kappa);
      return f.times_z().scaled(hk.kappa).plus(
          bstar.scaled(-std::conj(hk.l)));
    }
    case BerezinOp::AB:
      if (!hb)
        throw std::invalid_argument(
            "berezin: ab is available on HBeta only");
      return f.times_z().derivative();
    case BerezinOp::BA:
      if (!hb)
        throw std::invalid_argument(
            "berezin: ba is available on HBeta only");
      return f.derivative().times_z();
  }
  throw std::logic_error("unreachable");
}

}  // namespace

cplx berezin_closed(BerezinOp op, const KernelSpec& spec, cplx w) {
  require_kernel_space(spec);
  const cplx wb = std::conj(w);
  if (const auto* hb = std::get_if<HBeta>(&spec.space)) {
    const double beta = hb->beta;
    switch (op) {
      case BerezinOp::A: return beta * w + wb;
      case BerezinOp::AStar: return std::conj(beta * w + wb);
      case BerezinOp::AB: return 1.0 + beta * w * w + std::norm(w);
      case BerezinOp::BA: return beta * w * w + std::norm(w);
    }
  }
  const auto& hk = std::get<HKappaL>(spec.space);
  const double scale = spec.unit_norm ? hk.kappa : 1.0;
  switch (op) {
    case BerezinOp::A: return scale * (wb - hk.l * w / hk.kappa);
    case BerezinOp::AStar:
      return std::conj(scale * (wb - hk.l * w / hk.kappa));
    default:
      throw std::invalid_argument(
          "berezin_closed: ab/ba closed forms are available on HBeta only");
  }
}

cplx berezin_numeric(BerezinOp op, const KernelSpec& spec, cplx w, int m) {
  require_kernel_space(spec);
  if (const auto* hb = std::get_if<HBeta>(&spec.space)) {
    if (hb->beta >= 1.0)
      throw std::domain_error(
          "berezin_numeric: the beta = 1 weight is quadrature-degenerate; "
          "use berezin_closed");
  }
  if (!validate_for_quadrature(spec.space))
    throw std::domain_error("berezin_numeric: weight form is not positive "
                            "definite for " + space_name(spec.space));
  const GaussianPoly kw = normalized_kernel(spec, w);
  const GaussianPoly op_kw = apply_op(op, spec, kw);
  return gaussian_inner_product(
      Fn1([&op_kw](cplx z) { return op_kw(z); }),
      Fn1([&kw](cplx z) { return kw(z); }), spec.space, m);
}

}  // namespace focklab
