#include "focklab/szego.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "focklab/quadrature.hpp"

namespace focklab {

namespace {
constexpr double kPi = std::numbers::pi;

void require_domain(const ModelDomain& d) {
  if (!(d.kappa > 0.0))
    throw std::invalid_argument("ModelDomain: kappa must be positive");
}

}  // namespace

DomainMargin in_domain(const SurfacePoint& p, const ModelDomain& d) {
  require_domain(d);
  const double margin = p.z.imag() - d.kappa * std::norm(p.zprime) -
                        (d.l * p.zprime * p.zprime).real();
  return DomainMargin{margin, margin > 0.0};
}

cplx kernel_tau(double tau, double kappa, cplx l, cplx z, cplx w,
                bool times_kappa) {
  if (!(tau > 0.0)) throw std::invalid_argument("kernel_tau: tau must be > 0");
  const cplx wb = std::conj(w);
  const cplx value =
      4.0 * tau *
      std::exp(-2.0 * kPi * tau * l * (z * z + wb * wb) +
               4.0 * kPi * tau * kappa * z * wb);
  return times_kappa ? kappa * value : value;
}

cplx szego_bracket(const SurfacePoint& p, const SurfacePoint& q,
                   const ModelDomain& d) {
  const cplx wb = std::conj(q.z);
  const cplx wpb = std::conj(q.zprime);
  return cplx{0.0, 1.0} * (wb - p.z) - 2.0 * d.kappa * p.zprime * wpb +
         d.l * (p.zprime * p.zprime + wpb * wpb);
}

cplx szego_closed(const SurfacePoint& p, const SurfacePoint& q,
                  const ModelDomain& d) {
  require_domain(d);
  const cplx bracket = szego_bracket(p, q, d);
  if (std::abs(bracket) < 1e-300)
    throw std::domain_error(
        "szego_closed: vanishing bracket (boundary diagonal)");
  return d.kappa / (kPi * kPi) / (bracket * bracket);
}

cplx szego_numeric(const SurfacePoint& p, const SurfacePoint& q,
                   const ModelDomain& d, int nodes) {
  require_domain(d);
  const DomainMargin mp = in_domain(p, d);
  const DomainMargin mq = in_domain(q, d);
  if (!mp.inside || !mq.inside) {
    std::ostringstream os;
    os << "szego_numeric: both points must lie strictly inside the domain "
       << "(margins " << mp.margin << ", " << mq.margin << ")";
    throw std::domain_error(os.str());
  }
  // true exponential rate of the integrand: exp(-2 pi tau bracket)
  const double rate = 2.0 * kPi * szego_bracket(p, q, d).real();
  if (!(rate > 0.0)) {
    std::ostringstream os;
    os << "szego_numeric: the tau-integrand does not decay for this point "
       << "pair (rate " << rate << "); the domain margin controls the decay "
       << "only up to the z'-dependent terms";
    throw std::domain_error(os.str());
  }

  const double decay = 2.0 * kPi * (mp.margin + mq.margin);
  const cplx z = p.z;
  const cplx wb = std::conj(q.z);
  auto integrand = [&](double tau) {
    return kernel_tau(tau, d.kappa, d.l, p.zprime, q.zprime) *
           std::exp(cplx{0.0, -2.0 * kPi * tau} * (wb - z));
  };
  return semi_infinite_integral(integrand, decay, nodes);
}

}  // namespace focklab
