#include "focklab/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace focklab {

int space_dim(const SpaceParams& params) {
  return std::visit(
      [](const auto& p) -> int {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SegalBargmann>) {
          return p.n;
        } else if constexpr (std::is_same_v<T, HA>) {
          return 2;
        } else {
          return 1;
        }
      },
      params);
}

std::string space_name(const SpaceParams& params) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SegalBargmann>) {
          os << "SegalBargmann(" << p.n << ")";
        } else if constexpr (std::is_same_v<T, HA>) {
          os << "HA(" << p.beta1 << ", " << p.beta2 << ", " << p.kappa << ")";
        } else if constexpr (std::is_same_v<T, HBeta>) {
          os << "HBeta(" << p.beta << ")";
        } else if constexpr (std::is_same_v<T, HKappaL>) {
          os << "HKappaL(" << p.kappa << ", " << p.l.real() << "+"
             << p.l.imag() << "i)";
        } else {
          os << "HTauKappaL(" << p.tau << ", " << p.kappa << ", "
             << p.l.real() << "+" << p.l.imag() << "i)";
        }
      },
      params);
  return os.str();
}

void validate_params(const SpaceParams& params) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SegalBargmann>) {
          if (p.n != 1 && p.n != 2)
            throw std::invalid_argument("SegalBargmann: n must be 1 or 2");
        } else if constexpr (std::is_same_v<T, HBeta>) {
          if (!(p.beta >= 0.0 && p.beta <= 1.0))
            throw std::invalid_argument("HBeta: beta must lie in [0, 1]");
        } else if constexpr (std::is_same_v<T, HKappaL>) {
          if (!(p.kappa > 0.0))
            throw std::invalid_argument("HKappaL: kappa must be positive");
        } else if constexpr (std::is_same_v<T, HTauKappaL>) {
          if (!(p.tau > 0.0))
            throw std::invalid_argument("HTauKappaL: tau must be positive");
          if (!(p.kappa > 0.0))
            throw std::invalid_argument("HTauKappaL: kappa must be positive");
        }
      },
      params);
}

MultiIndex MultiIndex::of(int k) { return MultiIndex{1, {k, 0}}; }

MultiIndex MultiIndex::of(int i, int j) { return MultiIndex{2, {i, j}}; }

bool MultiIndex::valid() const {
  if (n != 1 && n != 2) return false;
  for (int j = 0; j < n; ++j)
    if (c[static_cast<size_t>(j)] < 0) return false;
  return true;
}

MultiIndex MultiIndex::shifted(int j, int delta) const {
  MultiIndex out = *this;
  out.c[static_cast<size_t>(j)] += delta;
  return out;
}

std::string to_string(const MultiIndex& alpha) {
  std::ostringstream os;
  os << "(" << alpha.c[0];
  if (alpha.n == 2) os << "," << alpha.c[1];
  os << ")";
  return os.str();
}

void CoeffVector::set(const MultiIndex& alpha, cplx value) {
  if (alpha.n != n)
    throw std::invalid_argument("CoeffVector: index dimension mismatch");
  if (!alpha.valid())
    throw std::invalid_argument("CoeffVector: negative multi-index");
  if (value == cplx{0.0, 0.0}) {
    entries.erase(alpha);
  } else {
    entries[alpha] = value;
  }
}

cplx CoeffVector::at(const MultiIndex& alpha) const {
  auto it = entries.find(alpha);
  return it == entries.end() ? cplx{0.0, 0.0} : it->second;
}

double CoeffVector::norm_sq() const {
  double s = 0.0;
  for (const auto& [alpha, v] : entries) s += std::norm(v);
  return s;
}

double CoeffVector::norm() const { return std::sqrt(norm_sq()); }

cplx CoeffVector::inner(const CoeffVector& g) const {
  if (g.n != n)
    throw std::invalid_argument("CoeffVector::inner: dimension mismatch");
  // iterate the shorter map
  const CoeffVector& a = entries.size() <= g.entries.size() ? *this : g;
  const CoeffVector& b = entries.size() <= g.entries.size() ? g : *this;
  cplx s{0.0, 0.0};
  for (const auto& [alpha, v] : a.entries) {
    auto it = b.entries.find(alpha);
    if (it == b.entries.end()) continue;
    s += (&a == this) ? v * std::conj(it->second) : it->second * std::conj(v);
  }
  return s;
}

CoeffVector& CoeffVector::operator+=(const CoeffVector& g) {
  if (g.n != n)
    throw std::invalid_argument("CoeffVector::operator+=: dimension mismatch");
  for (const auto& [alpha, v] : g.entries) set(alpha, at(alpha) + v);
  return *this;
}

CoeffVector& CoeffVector::operator*=(cplx s) {
  if (s == cplx{0.0, 0.0}) {
    entries.clear();
    return *this;
  }
  for (auto& [alpha, v] : entries) v *= s;
  return *this;
}

std::vector<MultiIndex> enumerate_box(int n, int N) {
  if (n != 1 && n != 2) throw std::invalid_argument("enumerate_box: n must be 1 or 2");
  if (N < 0) throw std::invalid_argument("enumerate_box: N must be >= 0");
  std::vector<MultiIndex> out;
  if (n == 1) {
    out.reserve(static_cast<size_t>(N + 1));
    for (int k = 0; k <= N; ++k) out.push_back(MultiIndex::of(k));
  } else {
    out.reserve(static_cast<size_t>((N + 1) * (N + 1)));
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j) out.push_back(MultiIndex::of(i, j));
  }
  return out;
}

Eigen::Index box_index(const MultiIndex& alpha, int N) {
  for (int j = 0; j < alpha.n; ++j)
    if (alpha[j] < 0 || alpha[j] > N)
      throw std::out_of_range("box_index: index outside box");
  if (alpha.n == 1) return alpha[0];
  return static_cast<Eigen::Index>(alpha[0]) * (N + 1) + alpha[1];
}

namespace {

WeightForm make_form(Eigen::MatrixXd Q) {
  WeightForm form;
  form.dim = static_cast<int>(Q.rows());
  form.Q = std::move(Q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form.Q,
                                                    Eigen::EigenvaluesOnly);
  form.min_eigenvalue = es.eigenvalues().minCoeff();
  form.positive_definite = form.min_eigenvalue > kPositiveDefiniteTol;
  return form;
}

}  // namespace

WeightForm weight_form(const SpaceParams& params) {
  validate_params(params);
  return std::visit(
      [](const auto& p) -> WeightForm {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SegalBargmann>) {
          return make_form(Eigen::MatrixXd::Identity(2 * p.n, 2 * p.n));
        } else if constexpr (std::is_same_v<T, HA>) {
          // Re<Az,z> + |z|^2 in coordinates (x1, y1, x2, y2)
          Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(4, 4);
          Q(0, 0) = 1.0 + p.beta1;
          Q(1, 1) = 1.0 - p.beta1;
          Q(2, 2) = 1.0 + p.beta2;
          Q(3, 3) = 1.0 - p.beta2;
          Q(0, 2) = Q(2, 0) = p.kappa;
          Q(1, 3) = Q(3, 1) = -p.kappa;
          return make_form(std::move(Q));
        } else if constexpr (std::is_same_v<T, HBeta>) {
          Eigen::MatrixXd Q(2, 2);
          Q << 1.0 + p.beta, 0.0, 0.0, 1.0 - p.beta;
          return make_form(std::move(Q));
        } else if constexpr (std::is_same_v<T, HKappaL>) {
          // kappa |z|^2 - Re(l z^2) = (k-Re l) x^2 + 2 (Im l) xy + (k+Re l) y^2
          Eigen::MatrixXd Q(2, 2);
          Q << p.kappa - p.l.real(), p.l.imag(), p.l.imag(),
              p.kappa + p.l.real();
          return make_form(std::move(Q));
        } else {
          // 4 pi tau (kappa |z|^2 + Re(l z^2))
          const double s = 4.0 * M_PI * p.tau;
          Eigen::MatrixXd Q(2, 2);
          Q << s * (p.kappa + p.l.real()), -s * p.l.imag(), -s * p.l.imag(),
              s * (p.kappa - p.l.real());
          return make_form(std::move(Q));
        }
      },
      params);
}

bool validate_for_quadrature(const SpaceParams& params) {
  return weight_form(params).positive_definite;
}

}  // namespace focklab
