#pragma once

#include <array>
#include <compare>
#include <complex>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace focklab {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Space parameters
//
// Each variant names one family of weighted spaces of entire functions,
// identified by the exponent of its Gaussian weight:
//   SegalBargmann(n):   exp(-|z|^2) on C^n
//   HA(b1,b2,k):        exp(-Re<Az,z> - |z|^2) on C^2, A = [[b1,k],[k,b2]]
//   HBeta(b):           exp(-(1+b)x^2 - (1-b)y^2) on C, z = x+iy
//   HKappaL(k,l):       exp(-k|z|^2 + Re(l z^2)) on C
//   HTauKappaL(t,k,l):  exp(-4 pi t (k|z|^2 + Re(l z^2))) on C
// ---------------------------------------------------------------------------

struct SegalBargmann {
  int n = 1;
};

struct HA {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double kappa = 0.0;
};

struct HBeta {
  double beta = 0.0;  // restricted to [0, 1]
};

struct HKappaL {
  double kappa = 1.0;  // > 0
  cplx l{0.0, 0.0};
};

struct HTauKappaL {
  double tau = 1.0;    // > 0
  double kappa = 1.0;  // > 0
  cplx l{0.0, 0.0};
};

using SpaceParams = std::variant<SegalBargmann, HA, HBeta, HKappaL, HTauKappaL>;

/// Complex dimension n of the space (1 or 2).
int space_dim(const SpaceParams& params);

/// Short human-readable tag, e.g. "HBeta(0.5)".
std::string space_name(const SpaceParams& params);

/// Throws std::invalid_argument if the parameter invariants are violated
/// (HBeta needs 0 <= beta <= 1; HKappaL needs kappa > 0; HTauKappaL needs
/// tau > 0 and kappa > 0; SegalBargmann needs n in {1,2}).
void validate_params(const SpaceParams& params);

// ---------------------------------------------------------------------------
// Multi-indices and coefficient vectors
// ---------------------------------------------------------------------------

/// Tuple of non-negative integers indexing basis elements, n in {1,2}.
struct MultiIndex {
  int n = 1;
  std::array<int, 2> c{0, 0};

  static MultiIndex of(int k);
  static MultiIndex of(int i, int j);

  int operator[](int j) const { return c[static_cast<size_t>(j)]; }
  bool valid() const;

  /// Index shifted by delta in coordinate j; may produce negative entries
  /// (callers test valid()).
  MultiIndex shifted(int j, int delta) const;

  int degree() const { return c[0] + (n == 2 ? c[1] : 0); }

  auto operator<=>(const MultiIndex&) const = default;
};

std::string to_string(const MultiIndex& alpha);

/// Finite map MultiIndex -> complex: the truncated l^2 representation of
/// f = sum_alpha f_alpha psi_alpha.
struct CoeffVector {
  int n = 1;
  std::map<MultiIndex, cplx> entries;

  explicit CoeffVector(int dim = 1) : n(dim) {}

  void set(const MultiIndex& alpha, cplx value);
  cplx at(const MultiIndex& alpha) const;  // 0 if absent

  double norm_sq() const;
  double norm() const;
  /// sum_alpha f_alpha conj(g_alpha)
  cplx inner(const CoeffVector& g) const;

  CoeffVector& operator+=(const CoeffVector& g);
  CoeffVector& operator*=(cplx s);
};

// ---------------------------------------------------------------------------
// Weight forms
// ---------------------------------------------------------------------------

/// Real quadratic form Q of a weight exp(-x.Qx), x the real coordinates
/// (x1, y1[, x2, y2]) with z_j = x_j + i y_j.
struct WeightForm {
  int dim = 2;  // real dimension, 2n
  Eigen::MatrixXd Q;
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
};

/// Smallest eigenvalue above this counts as positive definite; guards float
/// noise at degenerate parameters (beta = 1, kappa = |l|).
inline constexpr double kPositiveDefiniteTol = 1e-10;

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// All alpha with alpha_j <= N per coordinate, lexicographic order,
/// (N+1)^n elements.
std::vector<MultiIndex> enumerate_box(int n, int N);

/// Position of alpha within enumerate_box(alpha.n, N).
Eigen::Index box_index(const MultiIndex& alpha, int N);

/// The real quadratic form of the weight exponent. Non-positive-definite
/// forms are returned flagged, never rejected.
WeightForm weight_form(const SpaceParams& params);

/// Gate for every quadrature-oracle operation.
bool validate_for_quadrature(const SpaceParams& params);

}  // namespace focklab
