#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "focklab/basis.hpp"
#include "focklab/szego.hpp"

using namespace focklab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("domain membership margins") {
  const ModelDomain d1{1.0, cplx{0.5, 0.0}};
  const auto m1 = in_domain(SurfacePoint{cplx{0, 0}, cplx{0, 1}}, d1);
  CHECK(m1.margin == doctest::Approx(1.0));
  CHECK(m1.inside);

  const auto m0 = in_domain(SurfacePoint{cplx{0, 0}, cplx{0, 0}}, d1);
  CHECK(m0.margin == doctest::Approx(0.0));
  CHECK_FALSE(m0.inside);

  const auto m2 = in_domain(SurfacePoint{cplx{1, 0}, cplx{0, 2}}, d1);
  CHECK(m2.margin == doctest::Approx(0.5));
  CHECK(m2.inside);
}

TEST_CASE("tau-family kernel") {
  SUBCASE("value at the origin") {
    CHECK(kernel_tau(0.7, 2.0, cplx{0.3, 0.1}, cplx{0, 0}, cplx{0, 0}).real() ==
          doctest::Approx(2.8));
  }
  SUBCASE("flat specialization") {
    const cplx z{0.3, 0.1}, w{-0.2, 0.4};
    const cplx expected =
        4.0 * 0.5 * std::exp(4.0 * kPi * 0.5 * z * std::conj(w));
    CHECK(std::abs(kernel_tau(0.5, 1.0, cplx{0, 0}, z, w) - expected) < 1e-12);
  }
  SUBCASE("matches the rescaled basis series up to 4 pi tau") {
    const double tau = 0.3, kappa = 1.5;
    const cplx l{0.2, 0.0};
    const SpaceParams space{HTauKappaL{tau, kappa, l}};
    const cplx z{0.2, 0.0}, w{0.1, 0.1};
    cplx series{0.0, 0.0};
    for (int k = 0; k <= 40; ++k)
      series += eval_basis(space, MultiIndex::of(k), z) *
                std::conj(eval_basis(space, MultiIndex::of(k), w));
    const cplx closed = kernel_tau(tau, kappa, l, z, w);
    CHECK(std::abs(closed - 4.0 * kPi * tau * series) / std::abs(closed) <
          1e-9);
    // with the normalization correction the remaining constant is kappa
    const cplx corrected = kernel_tau(tau, kappa, l, z, w, true);
    CHECK(std::abs(corrected / closed - kappa) < 1e-12);
  }
}

TEST_CASE("szego kernel at the reference point") {
  const ModelDomain d{1.0, cplx{0, 0}};
  const SurfacePoint p{cplx{0, 0}, cplx{0, 1}};
  const double expected = 1.0 / (4.0 * kPi * kPi);
  CHECK(szego_closed(p, p, d).real() == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::abs(szego_numeric(p, p, d) - cplx{expected, 0.0}) < 1e-12);
}

TEST_CASE("boundary points are refused") {
  const ModelDomain d{1.0, cplx{0, 0}};
  const SurfacePoint boundary{cplx{0, 0}, cplx{0, 0}};
  const SurfacePoint inside{cplx{0, 0}, cplx{0, 1}};
  CHECK_THROWS_AS(szego_numeric(boundary, inside, d), std::domain_error);
}

TEST_CASE("points with a decaying margin but growing integrand are refused") {
  // the domain margin controls the decay only up to the z'-dependent terms;
  // here Im z' is large enough that the integrand grows
  const ModelDomain d{1.0, cplx{0.9, 0.0}};
  const SurfacePoint p{cplx{0.0, 3.0}, cplx{0.0, 1.0}};
  REQUIRE(in_domain(p, d).inside);
  CHECK_THROWS_WITH_AS(szego_numeric(p, p, d), doctest::Contains("decay"),
                       std::domain_error);
}

TEST_CASE("integral route against the closed form") {
  const ModelDomain d{1.0, cplx{0.1, 0.0}};
  const SurfacePoint p{cplx{0.3, 0.0}, cplx{0.0, 2.0}};
  const SurfacePoint q{cplx{0.2, 0.0}, cplx{0.0, 1.0}};
  const cplx numeric = szego_numeric(p, q, d);
  const cplx closed = szego_closed(p, q, d);
  // kappa = 1: the two routes agree outright
  CHECK(std::abs(numeric - closed) / std::abs(closed) < 1e-8);
}

TEST_CASE("the measured ratio of the two routes is the constant 1/kappa") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& [kappa, l] :
       std::vector<std::pair<double, cplx>>{{1.0, cplx{0.0, 0.0}},
                                            {1.0, cplx{0.2, 0.0}},
                                            {2.0, cplx{0.0, 0.1}}}) {
    const ModelDomain d{kappa, l};
    std::vector<cplx> ratios;
    for (int s = 0; s < 10; ++s) {
      const SurfacePoint p{cplx{0.2 * u(rng), 0.2 * u(rng)},
                           cplx{u(rng), 1.0 + std::abs(u(rng))}};
      const SurfacePoint q{cplx{0.2 * u(rng), 0.2 * u(rng)},
                           cplx{u(rng), 1.0 + std::abs(u(rng))}};
      ratios.push_back(szego_numeric(p, q, d) / szego_closed(p, q, d));
    }
    for (const cplx r : ratios) {
      CHECK(std::abs(r - ratios.front()) < 1e-7);
      CHECK(std::abs(r - 1.0 / kappa) < 1e-7);
    }
  }
}

TEST_CASE("hermitian symmetry of the closed form at real l") {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ModelDomain d{1.5, cplx{-0.3, 0.0}};
  for (int s = 0; s < 20; ++s) {
    const SurfacePoint p{cplx{0.3 * u(rng), 0.3 * u(rng)},
                         cplx{u(rng), 1.0 + std::abs(u(rng))}};
    const SurfacePoint q{cplx{0.3 * u(rng), 0.3 * u(rng)},
                         cplx{u(rng), 1.0 + std::abs(u(rng))}};
    CHECK(std::abs(szego_closed(p, q, d) - std::conj(szego_closed(q, p, d))) <
          1e-12);
  }
}

TEST_CASE("inverse-square homogeneity along the diagonal ray") {
  const ModelDomain d{1.0, cplx{0, 0}};
  for (double t : {1.0, 2.0, 3.0}) {
    const SurfacePoint p{cplx{0, 0}, cplx{0, t}};
    CHECK(szego_closed(p, p, d).real() ==
          doctest::Approx(1.0 / (4.0 * kPi * kPi * t * t)).epsilon(1e-13));
  }
}

TEST_CASE("vanishing twist reduces to the quadric model kernel") {
  const SurfacePoint p{cplx{0.3, -0.1}, cplx{0.2, 1.4}};
  const SurfacePoint q{cplx{-0.2, 0.4}, cplx{-0.5, 0.9}};
  const ModelDomain d{1.0, cplx{0, 0}};
  const cplx bracket = cplx{0, 1} * (std::conj(q.z) - p.z) -
                       2.0 * p.zprime * std::conj(q.zprime);
  const cplx expected = 1.0 / (kPi * kPi) / (bracket * bracket);
  CHECK(std::abs(szego_closed(p, q, d) - expected) < 1e-14);
  // continuous in l at 0
  const ModelDomain d_eps{1.0, cplx{1e-12, 0}};
  CHECK(std::abs(szego_closed(p, q, d_eps) - expected) <
        1e-9 * std::abs(expected));
}
