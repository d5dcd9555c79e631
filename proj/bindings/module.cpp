// Python bindings for the core operations: spaces and weight forms,
// quadrature oracles, basis evaluation, truncated ladder operators with
// their identity checks, the Bargmann transform, Berezin transforms, and
// the Szego kernel routes.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "focklab/bargmann.hpp"
#include "focklab/basis.hpp"
#include "focklab/berezin.hpp"
#include "focklab/core.hpp"
#include "focklab/operators.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/report.hpp"
#include "focklab/szego.hpp"
#include "focklab/version.hpp"

namespace py = pybind11;
using namespace focklab;

namespace {

MultiIndex index_from(const std::vector<int>& idx) {
  if (idx.size() == 1) return MultiIndex::of(idx[0]);
  if (idx.size() == 2) return MultiIndex::of(idx[0], idx[1]);
  throw std::invalid_argument("multi-index must have one or two components");
}

CoeffVector coeffs_from(const py::dict& d, int n) {
  CoeffVector f(n);
  for (const auto& item : d) {
    MultiIndex alpha;
    if (py::isinstance<py::int_>(item.first)) {
      alpha = MultiIndex::of(item.first.cast<int>());
    } else {
      alpha = index_from(item.first.cast<std::vector<int>>());
    }
    f.set(alpha, item.second.cast<cplx>());
  }
  return f;
}

py::dict coeffs_to(const CoeffVector& f) {
  py::dict out;
  for (const auto& [alpha, v] : f.entries) {
    if (f.n == 1)
      out[py::int_(alpha[0])] = v;
    else
      out[py::make_tuple(alpha[0], alpha[1])] = v;
  }
  return out;
}

HermiteExpansion hermite_from(const py::dict& d) {
  HermiteExpansion u;
  for (const auto& item : d)
    u.set(item.first.cast<int>(), item.second.cast<cplx>());
  return u;
}

}  // namespace

PYBIND11_MODULE(_focklab, m) {
  m.doc() = "weighted Fock space numerics: ladder operators, Berezin "
            "transforms, Bergman and Szego kernels, with quadrature oracles";
  m.attr("__version__") = kVersion;

  // ---- spaces ----
  py::class_<SegalBargmann>(m, "SegalBargmann")
      .def(py::init<int>(), py::arg("n") = 1)
      .def_readonly("n", &SegalBargmann::n)
      .def("__repr__", [](const SegalBargmann& p) {
        return space_name(SpaceParams{p});
      });
  py::class_<HA>(m, "HA")
      .def(py::init<double, double, double>(), py::arg("beta1"),
           py::arg("beta2"), py::arg("kappa"))
      .def_readonly("beta1", &HA::beta1)
      .def_readonly("beta2", &HA::beta2)
      .def_readonly("kappa", &HA::kappa)
      .def("__repr__", [](const HA& p) { return space_name(SpaceParams{p}); });
  py::class_<HBeta>(m, "HBeta")
      .def(py::init<double>(), py::arg("beta"))
      .def_readonly("beta", &HBeta::beta)
      .def("__repr__",
           [](const HBeta& p) { return space_name(SpaceParams{p}); });
  py::class_<HKappaL>(m, "HKappaL")
      .def(py::init<double, cplx>(), py::arg("kappa"), py::arg("l") = cplx{})
      .def_readonly("kappa", &HKappaL::kappa)
      .def_readonly("l", &HKappaL::l)
      .def("__repr__",
           [](const HKappaL& p) { return space_name(SpaceParams{p}); });
  py::class_<HTauKappaL>(m, "HTauKappaL")
      .def(py::init<double, double, cplx>(), py::arg("tau"), py::arg("kappa"),
           py::arg("l") = cplx{})
      .def_readonly("tau", &HTauKappaL::tau)
      .def_readonly("kappa", &HTauKappaL::kappa)
      .def_readonly("l", &HTauKappaL::l)
      .def("__repr__",
           [](const HTauKappaL& p) { return space_name(SpaceParams{p}); });

  py::class_<WeightForm>(m, "WeightForm")
      .def_readonly("dim", &WeightForm::dim)
      .def_readonly("Q", &WeightForm::Q)
      .def_readonly("positive_definite", &WeightForm::positive_definite)
      .def_readonly("min_eigenvalue", &WeightForm::min_eigenvalue);

  m.def("space_dim", &space_dim);
  m.def("space_name", &space_name);
  m.def("weight_form", &weight_form);
  m.def("validate_for_quadrature", &validate_for_quadrature);
  m.def("enumerate_box", [](int n, int N) {
    py::list out;
    for (const auto& alpha : enumerate_box(n, N)) {
      if (n == 1)
        out.append(py::make_tuple(alpha[0]));
      else
        out.append(py::make_tuple(alpha[0], alpha[1]));
    }
    return out;
  });

  // ---- quadrature ----
  m.def("hermite_rule", [](int mm) {
    const QuadratureRule r = hermite_rule(mm);
    return py::make_tuple(Eigen::VectorXd(r.nodes.col(0)), r.weights);
  });
  m.def("laguerre_rule", [](int mm) {
    const QuadratureRule r = laguerre_rule(mm);
    return py::make_tuple(Eigen::VectorXd(r.nodes.col(0)), r.weights);
  });
  m.def(
      "gaussian_inner_product",
      [](const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g,
         const SpaceParams& space, int mm) {
        return gaussian_inner_product(Fn1(f), Fn1(g), space, mm);
      },
      py::arg("f"), py::arg("g"), py::arg("space"), py::arg("m") = 20);
  m.def(
      "gaussian_inner_product2",
      [](const std::function<cplx(cplx, cplx)>& f,
         const std::function<cplx(cplx, cplx)>& g, const SpaceParams& space,
         int mm) { return gaussian_inner_product(Fn2(f), Fn2(g), space, mm); },
      py::arg("f"), py::arg("g"), py::arg("space"), py::arg("m") = 20);
  m.def("pointwise_bound_constant", &pointwise_bound_constant,
        py::arg("space"), py::arg("center"), py::arg("radius"),
        py::arg("m") = 64);
  m.def("semi_infinite_integral", &semi_infinite_integral, py::arg("h"),
        py::arg("decay"), py::arg("nodes") = 64);

  // ---- basis ----
  m.def(
      "eval_basis",
      [](const SpaceParams& space, const std::vector<int>& alpha, cplx z1,
         cplx z2, bool unit_normalized) {
        return eval_basis(space, index_from(alpha), z1, z2, unit_normalized);
      },
      py::arg("space"), py::arg("alpha"), py::arg("z1"), py::arg("z2") = cplx{},
      py::arg("unit_normalized") = false);
  m.def(
      "eval_basis_dz",
      [](const SpaceParams& space, const std::vector<int>& alpha, int j,
         cplx z1, cplx z2, bool unit_normalized) {
        return eval_basis_dz(space, index_from(alpha), j, z1, z2,
                             unit_normalized);
      },
      py::arg("space"), py::arg("alpha"), py::arg("j"), py::arg("z1"),
      py::arg("z2") = cplx{}, py::arg("unit_normalized") = false);
  m.def("gram_matrix", &gram_matrix, py::arg("space"), py::arg("N"),
        py::arg("m") = 20, py::arg("unit_normalized") = false);
  m.def("gram_diagonal_constant", &gram_diagonal_constant);
  m.def(
      "apply_isometry",
      [](const py::dict& f, const HA& params, cplx z1, cplx z2) {
        return apply_isometry(coeffs_from(f, 2), params, z1, z2);
      },
      py::arg("coeffs"), py::arg("params"), py::arg("z1"), py::arg("z2"));
  m.def(
      "synthesize",
      [](const py::dict& f, const SpaceParams& space, bool unit_normalized) {
        const auto fn =
            synthesize(coeffs_from(f, space_dim(space)), space, unit_normalized);
        return py::cpp_function([fn](cplx z1, cplx z2) { return fn(z1, z2); },
                                py::arg("z1"), py::arg("z2") = cplx{});
      },
      py::arg("coeffs"), py::arg("space"), py::arg("unit_normalized") = false);
  m.def(
      "analyze",
      [](const std::function<cplx(cplx)>& g, const SpaceParams& space, int N,
         int mm, bool unit_normalized) {
        return coeffs_to(analyze(Fn1(g), space, N, mm, unit_normalized));
      },
      py::arg("g"), py::arg("space"), py::arg("N"), py::arg("m") = 20,
      py::arg("unit_normalized") = false);
  m.def("derivative_gram_matrix", &derivative_gram_matrix, py::arg("space"),
        py::arg("j"), py::arg("N"), py::arg("m") = 20);

  // ---- operators ----
  py::class_<TruncatedOperator>(m, "TruncatedOperator")
      .def_readonly("n", &TruncatedOperator::n)
      .def_readonly("N", &TruncatedOperator::N)
      .def_readonly("name", &TruncatedOperator::name)
      .def_readonly("shift_profile", &TruncatedOperator::shift_profile)
      .def_property_readonly(
          "matrix",
          [](const TruncatedOperator& op) {
            return Eigen::MatrixXcd(op.matrix);
          })
      .def("adjoint", &TruncatedOperator::adjoint)
      .def("respects_shift_profile", &TruncatedOperator::respects_shift_profile)
      .def("apply", [](const TruncatedOperator& op, const py::dict& f) {
        return coeffs_to(op.apply(coeffs_from(f, op.n)));
      });
  m.def("matrix_b", &matrix_b, py::arg("j"), py::arg("N"));
  m.def("matrix_b_star", &matrix_b_star, py::arg("j"), py::arg("N"));
  m.def("matrix_a", &matrix_a, py::arg("j"), py::arg("N"), py::arg("beta1"),
        py::arg("beta2"), py::arg("kappa"));
  m.def("matrix_a_star", &matrix_a_star, py::arg("j"), py::arg("N"),
        py::arg("beta_j"), py::arg("kappa") = 0.0);
  m.def("commutator", &commutator);
  m.def(
      "verify_diagonal_identities",
      [](const py::dict& f, double beta1, double beta2, int N) {
        const DiagonalIdentityReport rep =
            verify_diagonal_identities(coeffs_from(f, 2), beta1, beta2, N);
        py::dict out;
        out["norm_identity_a"] = rep.norm_identity_a;
        out["norm_identity_b"] = rep.norm_identity_b;
        out["a_star_relation"] = rep.a_star_relation;
        out["basic_estimate_slack"] = rep.basic_estimate_slack;
        out["max_residual"] = rep.max_residual();
        return out;
      },
      py::arg("coeffs"), py::arg("beta1"), py::arg("beta2"), py::arg("N"));
  m.def(
      "verify_skew",
      [](const py::dict& f, double kappa, int N) {
        const SkewReport rep = verify_skew(coeffs_from(f, 2), kappa, N);
        py::dict out;
        out["relation"] = rep.relation;
        out["commutator_residual"] = rep.commutator_residual;
        out["star_commutator"] = rep.star_commutator;
        out["plain_commutator"] = rep.plain_commutator;
        out["degeneration"] = rep.degeneration;
        out["max_residual"] = rep.max_residual();
        return out;
      },
      py::arg("coeffs"), py::arg("kappa"), py::arg("N"));

  // ---- Bargmann transform ----
  m.def("hermite_function", py::vectorize(&hermite_function), py::arg("k"),
        py::arg("x"));
  m.def(
      "bargmann_transform",
      [](const py::dict& u, cplx z, int mm) {
        return bargmann_transform(hermite_from(u), z, mm);
      },
      py::arg("coeffs"), py::arg("z"), py::arg("m") = 30);
  m.def("xd_matrices", [](int N) {
    auto [X, D] = xd_matrices(N);
    return py::make_tuple(Eigen::MatrixXcd(X.matrix), Eigen::MatrixXcd(D.matrix));
  });
  m.def(
      "verify_uncertainty",
      [](const py::dict& u, double a, double b, int N) {
        const UncertaintyReport rep =
            verify_uncertainty(hermite_from(u), a, b, N);
        py::dict out;
        out["product_slack"] = rep.product_slack;
        out["sum_slack"] = rep.sum_slack;
        out["x_norm_sq"] = rep.x_norm_sq;
        out["d_norm_sq"] = rep.d_norm_sq;
        return out;
      },
      py::arg("coeffs"), py::arg("a"), py::arg("b"), py::arg("N"));
  m.def(
      "verify_conjugation",
      [](int N) {
        const ConjugationReport rep = verify_conjugation(N);
        py::dict out;
        out["matrix_residual"] = rep.matrix_residual;
        out["equivalence_rel_error"] = rep.equivalence_rel_error;
        out["equality_case_value"] = rep.equality_case_value;
        return out;
      },
      py::arg("N") = 10);
  m.def("bargmann_unitarity_constant", [] {
    const UnitarityReport rep = bargmann_unitarity_constant();
    py::dict out;
    out["constant"] = rep.constant;
    out["diagonal_spread"] = rep.diagonal_spread;
    out["max_offdiagonal"] = rep.max_offdiagonal;
    return out;
  });

  // ---- Berezin transforms and kernels ----
  m.def(
      "kernel",
      [](const SpaceParams& space, cplx z, cplx w, bool unit_norm) {
        return kernel(KernelSpec{space, unit_norm}, z, w);
      },
      py::arg("space"), py::arg("z"), py::arg("w"),
      py::arg("unit_norm") = false);
  m.def(
      "normalized_kernel",
      [](const SpaceParams& space, cplx w, bool unit_norm) {
        const GaussianPoly kw = normalized_kernel(KernelSpec{space, unit_norm}, w);
        return py::cpp_function([kw](cplx z) { return kw(z); });
      },
      py::arg("space"), py::arg("w"), py::arg("unit_norm") = false);
  m.def(
      "berezin_closed",
      [](const std::string& op, const SpaceParams& space, cplx w,
         bool unit_norm) {
        return berezin_closed(parse_berezin_op(op), KernelSpec{space, unit_norm},
                              w);
      },
      py::arg("op"), py::arg("space"), py::arg("w"),
      py::arg("unit_norm") = false);
  m.def(
      "berezin_numeric",
      [](const std::string& op, const SpaceParams& space, cplx w,
         bool unit_norm, int mm) {
        return berezin_numeric(parse_berezin_op(op), KernelSpec{space, unit_norm},
                               w, mm);
      },
      py::arg("op"), py::arg("space"), py::arg("w"),
      py::arg("unit_norm") = false, py::arg("m") = 24);

  // ---- Szego kernel ----
  py::class_<SurfacePoint>(m, "SurfacePoint")
      .def(py::init<cplx, cplx>(), py::arg("zprime"), py::arg("z"))
      .def_readonly("zprime", &SurfacePoint::zprime)
      .def_readonly("z", &SurfacePoint::z);
  py::class_<ModelDomain>(m, "ModelDomain")
      .def(py::init<double, cplx>(), py::arg("kappa"), py::arg("l") = cplx{})
      .def_readonly("kappa", &ModelDomain::kappa)
      .def_readonly("l", &ModelDomain::l);
  m.def("in_domain", [](const SurfacePoint& p, const ModelDomain& d) {
    const DomainMargin dm = in_domain(p, d);
    return py::make_tuple(dm.margin, dm.inside);
  });
  m.def("kernel_tau", &kernel_tau, py::arg("tau"), py::arg("kappa"),
        py::arg("l"), py::arg("z"), py::arg("w"),
        py::arg("times_kappa") = false);
  m.def("szego_closed", &szego_closed, py::arg("p"), py::arg("q"),
        py::arg("domain"));
  m.def("szego_numeric", &szego_numeric, py::arg("p"), py::arg("q"),
        py::arg("domain"), py::arg("nodes") = 64);

  // ---- measured constants ----
  m.def("measured_constants", [] {
    const Constants k = measured_constants(RunConfig{});
    py::dict out;
    out["gram_diagonal_hkappal"] = k.gram_diagonal_hkappal;
    out["bargmann_unitarity"] = k.bargmann_unitarity;
    out["szego_prefactor_ratio"] = k.szego_prefactor_ratio;
    return out;
  });
}
