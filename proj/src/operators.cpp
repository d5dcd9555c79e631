#include "focklab/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace focklab {

namespace {

using Triplet = Eigen::Triplet<cplx>;

TruncatedOperator assemble(int n, int N, std::vector<Triplet> triplets,
                           std::vector<std::array<int, 2>> shifts,
                           std::string name) {
  TruncatedOperator op;
  op.n = n;
  op.N = N;
  const Eigen::Index dim = n == 1 ? N + 1 : (N + 1) * (N + 1);
  op.matrix.resize(dim, dim);
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  op.shift_profile = std::move(shifts);
  op.name = std::move(name);
  return op;
}

void check_j(int j) {
  if (j != 1 && j != 2)
    throw std::invalid_argument("ladder operator: j must be 1 or 2");
}

MultiIndex unpack(Eigen::Index flat, int n, int N) {
  if (n == 1) return MultiIndex::of(static_cast<int>(flat));
  return MultiIndex::of(static_cast<int>(flat) / (N + 1),
                        static_cast<int>(flat) % (N + 1));
}

}  // namespace

CoeffVector TruncatedOperator::apply(const CoeffVector& f) const {
  return from_dense(matrix * to_dense(f));
}

Eigen::VectorXcd TruncatedOperator::to_dense(const CoeffVector& f) const {
  if (f.n != n)
    throw std::invalid_argument("TruncatedOperator: dimension mismatch");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
  for (const auto& [alpha, value] : f.entries) v(box_index(alpha, N)) = value;
  return v;
}

CoeffVector TruncatedOperator::from_dense(const Eigen::VectorXcd& v) const {
  CoeffVector f(n);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != cplx{0.0, 0.0}) f.set(unpack(i, n, N), v(i));
  return f;
}

TruncatedOperator TruncatedOperator::adjoint() const {
  TruncatedOperator out;
  out.n = n;
  out.N = N;
  out.matrix = matrix.adjoint();
  out.matrix.makeCompressed();
  for (const auto& s : shift_profile)
    out.shift_profile.push_back({-s[0], -s[1]});
  out.name = name + "*";
  return out;
}

bool TruncatedOperator::respects_shift_profile() const {
  for (int col = 0; col < matrix.outerSize(); ++col) {
    const MultiIndex alpha = unpack(col, n, N);
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(matrix, col); it; ++it) {
      if (it.value() == cplx{0.0, 0.0}) continue;
      const MultiIndex target = unpack(it.row(), n, N);
      const std::array<int, 2> shift{target[0] - alpha[0],
                                     n == 2 ? target[1] - alpha[1] : 0};
      bool found = false;
      for (const auto& s : shift_profile)
        if (s == shift) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  }
  return true;
}

TruncatedOperator matrix_b(int j, int N) {
  check_j(j);
  if (N < 1) throw std::invalid_argument("matrix_b: need N >= 1");
  std::vector<Triplet> trips;
  for (const auto& alpha : enumerate_box(2, N)) {
    const MultiIndex target = alpha.shifted(j - 1, +1);
    if (target[j - 1] > N) continue;  // image leaves the box
    trips.emplace_back(box_index(target, N), box_index(alpha, N),
                       std::sqrt(alpha[j - 1] + 1.0));
  }
  std::array<int, 2> up{0, 0};
  up[static_cast<size_t>(j - 1)] = 1;
  return assemble(2, N, std::move(trips), {up}, "b" + std::to_string(j));
}

TruncatedOperator matrix_b_star(int j, int N) {
  check_j(j);
  if (N < 1) throw std::invalid_argument("matrix_b_star: need N >= 1");
  std::vector<Triplet> trips;
  for (const auto& alpha : enumerate_box(2, N)) {
    if (alpha[j - 1] == 0) continue;  // annihilated
    const MultiIndex target = alpha.shifted(j - 1, -1);
    trips.emplace_back(box_index(target, N), box_index(alpha, N),
                       std::sqrt(static_cast<double>(alpha[j - 1])));
  }
  std::array<int, 2> down{0, 0};
  down[static_cast<size_t>(j - 1)] = -1;
  return assemble(2, N, std::move(trips), {down},
                  "b" + std::to_string(j) + "*");
}

TruncatedOperator matrix_a(int j, int N, double beta1, double beta2,
                           double kappa) {
  check_j(j);
  if (N < 1) throw std::invalid_argument("matrix_a: need N >= 1");
  const int self = j - 1;
  const int other = 2 - j;
  const double beta = j == 1 ? beta1 : beta2;
  std::vector<Triplet> trips;
  for (const auto& alpha : enumerate_box(2, N)) {
    const Eigen::Index col = box_index(alpha, N);
    if (alpha[self] > 0)
      trips.emplace_back(box_index(alpha.shifted(self, -1), N), col,
                         std::sqrt(static_cast<double>(alpha[self])));
    if (beta != 0.0 && alpha[self] + 1 <= N)
      trips.emplace_back(box_index(alpha.shifted(self, +1), N), col,
                         beta * std::sqrt(alpha[self] + 1.0));
    if (kappa != 0.0 && alpha[other] + 1 <= N)
      trips.emplace_back(box_index(alpha.shifted(other, +1), N), col,
                         kappa * std::sqrt(alpha[other] + 1.0));
  }
  std::vector<std::array<int, 2>> shifts;
  std::array<int, 2> s{0, 0};
  s[static_cast<size_t>(self)] = -1;
  shifts.push_back(s);
  if (beta != 0.0) {
    s[static_cast<size_t>(self)] = 1;
    shifts.push_back(s);
  }
  if (kappa != 0.0) {
    s = {0, 0};
    s[static_cast<size_t>(other)] = 1;
    shifts.push_back(s);
  }
  return assemble(2, N, std::move(trips), std::move(shifts),
                  "a" + std::to_string(j));
}

TruncatedOperator matrix_a_star(int j, int N, double beta_j, double kappa) {
  if (kappa != 0.0)
    throw std::invalid_argument(
        "matrix_a_star: closed form available for kappa = 0 only; for "
        "kappa != 0 take matrix_a(j, ...).adjoint()");
  check_j(j);
  TruncatedOperator bj = matrix_b(j, N);
  const TruncatedOperator bjs = matrix_b_star(j, N);
  bj.matrix = bj.matrix + beta_j * bjs.matrix;
  bj.matrix.makeCompressed();
  if (beta_j != 0.0)
    bj.shift_profile.push_back(bjs.shift_profile.front());
  bj.name = "a" + std::to_string(j) + "*";
  return bj;
}

TruncatedOperator commutator(const TruncatedOperator& P,
                             const TruncatedOperator& Q) {
  if (P.n != Q.n || P.N != Q.N)
    throw std::invalid_argument("commutator: operators on different boxes");
  TruncatedOperator out;
  out.n = P.n;
  out.N = P.N;
  out.matrix = (P.matrix * Q.matrix - Q.matrix * P.matrix).pruned();
  out.matrix.makeCompressed();
  for (const auto& p : P.shift_profile)
    for (const auto& q : Q.shift_profile) {
      const std::array<int, 2> s{p[0] + q[0], p[1] + q[1]};
      bool present = false;
      for (const auto& e : out.shift_profile)
        if (e == s) present = true;
      if (!present) out.shift_profile.push_back(s);
    }
  out.name = "[" + P.name + "," + Q.name + "]";
  return out;
}

bool is_interior(const CoeffVector& f, int N, int margin) {
  for (const auto& [alpha, v] : f.entries)
    for (int j = 0; j < alpha.n; ++j)
      if (alpha[j] < margin || alpha[j] > N - margin) return false;
  return true;
}

bool is_truncation_interior(const CoeffVector& f, int N, int margin) {
  for (const auto& [alpha, v] : f.entries)
    for (int j = 0; j < alpha.n; ++j)
      if (alpha[j] > N - margin) return false;
  return true;
}

CoeffVector random_interior_coeffs(int n, int N, int margin,
                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoeffVector f(n);
  const int lo = margin, hi = N - margin;
  if (lo > hi)
    throw std::invalid_argument("random_interior_coeffs: empty interior");
  if (n == 1) {
    for (int k = lo; k <= hi; ++k)
      f.set(MultiIndex::of(k), cplx{u(rng), u(rng)});
  } else {
    for (int i = lo; i <= hi; ++i)
      for (int k = lo; k <= hi; ++k)
        f.set(MultiIndex::of(i, k), cplx{u(rng), u(rng)});
  }
  return f;
}

double DiagonalIdentityReport::max_residual() const {
  double m = 0.0;
  for (int j = 0; j < 2; ++j) {
    m = std::max(m, norm_identity_a[static_cast<size_t>(j)]);
    m = std::max(m, norm_identity_b[static_cast<size_t>(j)]);
    m = std::max(m, a_star_relation[static_cast<size_t>(j)]);
    m = std::max(m, basic_estimate_slack[static_cast<size_t>(j)]);
  }
  return m;
}

DiagonalIdentityReport verify_diagonal_identities(const CoeffVector& f, double beta1,
                               double beta2, int N) {
  if (f.n != 2)
    throw std::invalid_argument("verify_diagonal_identities: need a two-variable vector");
  if (!is_truncation_interior(f, N, 1))
    throw std::invalid_argument(
        "verify_diagonal_identities: support touches the top face; truncation would "
        "corrupt the norms (need margin 1)");

  DiagonalIdentityReport rep;
  const double fsq = f.norm_sq();
  for (int j = 1; j <= 2; ++j) {
    const double beta = j == 1 ? beta1 : beta2;
    const TruncatedOperator a = matrix_a(j, N, beta1, beta2, 0.0);
    const TruncatedOperator as = matrix_a_star(j, N, beta);
    const TruncatedOperator b = matrix_b(j, N);
    const TruncatedOperator bs = matrix_b_star(j, N);

    const Eigen::VectorXcd fv = a.to_dense(f);
    const Eigen::VectorXcd af = a.matrix * fv;
    const Eigen::VectorXcd asf = as.matrix * fv;
    const Eigen::VectorXcd bf = b.matrix * fv;
    const Eigen::VectorXcd bsf = bs.matrix * fv;

    const size_t idx = static_cast<size_t>(j - 1);
    rep.norm_identity_a[idx] = std::abs(
        asf.squaredNorm() - af.squaredNorm() - (1.0 - beta * beta) * fsq);
    rep.norm_identity_b[idx] =
        std::abs(bf.squaredNorm() - bsf.squaredNorm() - fsq);
    rep.a_star_relation[idx] =
        (asf - beta * af - (1.0 - beta * beta) * bf).norm();
    if (beta != 1.0 && beta != -1.0) {
      const double bound =
          (asf.squaredNorm() + af.squaredNorm()) / std::abs(1.0 - beta * beta);
      rep.basic_estimate_slack[idx] = std::max(0.0, fsq - bound);
    }
  }
  return rep;
}

double SkewReport::max_residual() const {
  double m = std::max({relation[0], relation[1], star_commutator,
                       plain_commutator, degeneration});
  m = std::max(m, commutator_residual.maxCoeff());
  return m;
}

SkewReport verify_skew(const CoeffVector& f, double kappa, int N) {
  if (f.n != 2)
    throw std::invalid_argument("verify_skew: need a two-variable vector");
  if (!is_truncation_interior(f, N, 2))
    throw std::invalid_argument(
        "verify_skew: commutators stack two raising steps; need margin 2");

  const TruncatedOperator a1 = matrix_a(1, N, 0.0, 0.0, kappa);
  const TruncatedOperator a2 = matrix_a(2, N, 0.0, 0.0, kappa);
  const TruncatedOperator a1s = a1.adjoint();
  const TruncatedOperator a2s = a2.adjoint();
  const TruncatedOperator b1s = matrix_b_star(1, N);
  const TruncatedOperator b2s = matrix_b_star(2, N);

  const Eigen::VectorXcd fv = a1.to_dense(f);
  const double c = 1.0 - kappa * kappa;

  SkewReport rep;
  rep.relation[0] =
      (a1.matrix * fv - kappa * (a2s.matrix * fv) - c * (b1s.matrix * fv))
          .norm();
  rep.relation[1] =
      (a2.matrix * fv - kappa * (a1s.matrix * fv) - c * (b2s.matrix * fv))
          .norm();

  const TruncatedOperator* as[2] = {&a1s, &a2s};
  const TruncatedOperator* a[2] = {&a1, &a2};
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      Eigen::VectorXcd comm = a[j]->matrix * (as[k]->matrix * fv) -
                              as[k]->matrix * (a[j]->matrix * fv);
      if (j == k) comm -= c * fv;
      rep.commutator_residual(j, k) = comm.lpNorm<Eigen::Infinity>();

      const Eigen::VectorXcd scomm = as[j]->matrix * (as[k]->matrix * fv) -
                                     as[k]->matrix * (as[j]->matrix * fv);
      rep.star_commutator =
          std::max(rep.star_commutator, scomm.lpNorm<Eigen::Infinity>());
    }
  rep.plain_commutator =
      (a1.matrix * (a2.matrix * fv) - a2.matrix * (a1.matrix * fv))
          .lpNorm<Eigen::Infinity>();

  if (kappa == 1.0)
    rep.degeneration = (a1.matrix * fv - a2s.matrix * fv).norm();
  else if (kappa == -1.0)
    rep.degeneration = (a1.matrix * fv + a2s.matrix * fv).norm();
  return rep;
}

}  // namespace focklab
