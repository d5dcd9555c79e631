#include <doctest.h>

#include <random>

#include "focklab/core.hpp"
#include "oracles.hpp"

using namespace focklab;

TEST_CASE("enumerate_box lists the whole box in lexicographic order") {
  CHECK(enumerate_box(1, 2) ==
        std::vector<MultiIndex>{MultiIndex::of(0), MultiIndex::of(1),
                                MultiIndex::of(2)});
  CHECK(enumerate_box(2, 1) ==
        std::vector<MultiIndex>{MultiIndex::of(0, 0), MultiIndex::of(0, 1),
                                MultiIndex::of(1, 0), MultiIndex::of(1, 1)});
  CHECK(enumerate_box(2, 0) == std::vector<MultiIndex>{MultiIndex::of(0, 0)});
}

TEST_CASE("enumerate_box is strictly increasing with (N+1)^n elements") {
  for (int n : {1, 2})
    for (int N : {0, 1, 3, 6}) {
      const auto box = enumerate_box(n, N);
      size_t expected = 1;
      for (int j = 0; j < n; ++j) expected *= static_cast<size_t>(N) + 1;
      CHECK(box.size() == expected);
      for (size_t i = 1; i < box.size(); ++i) CHECK(box[i - 1] < box[i]);
      for (size_t i = 0; i < box.size(); ++i)
        CHECK(box_index(box[i], N) == static_cast<Eigen::Index>(i));
    }
}

TEST_CASE("weight forms of the displayed exponents") {
  SUBCASE("HBeta(0) is the flat Gaussian") {
    const WeightForm f = weight_form(SpaceParams{HBeta{0.0}});
    CHECK(f.Q.isApprox(Eigen::Matrix2d::Identity()));
    CHECK(f.positive_definite);
  }
  SUBCASE("HBeta(1) loses the y direction") {
    const WeightForm f = weight_form(SpaceParams{HBeta{1.0}});
    CHECK(f.Q(0, 0) == doctest::Approx(2.0));
    CHECK(f.Q(1, 1) == doctest::Approx(0.0));
    CHECK_FALSE(f.positive_definite);
  }
  SUBCASE("HKappaL(1, 0.5)") {
    const WeightForm f = weight_form(SpaceParams{HKappaL{1.0, cplx{0.5, 0.0}}});
    CHECK(f.Q(0, 0) == doctest::Approx(0.5));
    CHECK(f.Q(1, 1) == doctest::Approx(1.5));
    CHECK(f.Q(0, 1) == doctest::Approx(0.0));
    CHECK(f.positive_definite);
  }
}

TEST_CASE("quadrature validity gate") {
  CHECK(validate_for_quadrature(SpaceParams{HA{0.5, 0.5, 0.0}}));
  CHECK_FALSE(validate_for_quadrature(SpaceParams{HA{1.0, 0.0, 0.0}}));
  CHECK_FALSE(validate_for_quadrature(SpaceParams{HKappaL{1.0, cplx{1.0, 0.0}}}));
}

TEST_CASE("Q reproduces the displayed scalar exponent at random points") {
  using testing::direct_weight_exponent;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<SpaceParams> spaces = {
      SpaceParams{SegalBargmann{1}},
      SpaceParams{SegalBargmann{2}},
      SpaceParams{HA{0.4, -0.7, 0.3}},
      SpaceParams{HBeta{0.6}},
      SpaceParams{HKappaL{2.0, cplx{0.3, 0.4}}},
      SpaceParams{HTauKappaL{0.3, 1.5, cplx{0.2, -0.1}}}};
  for (const auto& params : spaces) {
    const WeightForm f = weight_form(params);
    for (int trial = 0; trial < 20; ++trial) {
      const cplx z1{u(rng), u(rng)}, z2{u(rng), u(rng)};
      Eigen::VectorXd x(f.dim);
      x(0) = z1.real();
      x(1) = z1.imag();
      if (f.dim == 4) {
        x(2) = z2.real();
        x(3) = z2.imag();
      }
      const double via_form = x.dot(f.Q * x);
      const double direct = direct_weight_exponent(params, z1, z2);
      CHECK(via_form == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("HBeta(beta) and HKappaL(1, -beta) share their weight form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 0.999);
  for (int trial = 0; trial < 10; ++trial) {
    const double beta = u(rng);
    const WeightForm a = weight_form(SpaceParams{HBeta{beta}});
    const WeightForm b =
        weight_form(SpaceParams{HKappaL{1.0, cplx{-beta, 0.0}}});
    CHECK((a.Q - b.Q).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("parameter invariants are enforced") {
  CHECK_THROWS_AS(validate_params(SpaceParams{HBeta{-0.1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_params(SpaceParams{HBeta{1.1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_params(SpaceParams{HKappaL{0.0, cplx{0.0, 0.0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_params(SpaceParams{HTauKappaL{-1.0, 1.0, cplx{}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_params(SpaceParams{SegalBargmann{3}}),
                  std::invalid_argument);
  CHECK_NOTHROW(validate_params(SpaceParams{HA{5.0, -3.0, 2.0}}));
}

TEST_CASE("coefficient vectors") {
  CoeffVector f(2);
  f.set(MultiIndex::of(1, 2), cplx{3.0, 4.0});
  f.set(MultiIndex::of(0, 0), cplx{1.0, 0.0});
  CHECK(f.norm_sq() == doctest::Approx(26.0));
  CHECK(f.at(MultiIndex::of(1, 2)) == cplx{3.0, 4.0});
  CHECK(f.at(MultiIndex::of(2, 2)) == cplx{0.0, 0.0});

  CoeffVector g(2);
  g.set(MultiIndex::of(1, 2), cplx{0.0, 1.0});
  // sum f conj(g): (3+4i) * conj(i) = (3+4i)(-i) = 4 - 3i
  CHECK(f.inner(g) == cplx{4.0, -3.0});

  f.set(MultiIndex::of(0, 0), cplx{0.0, 0.0});  // erases the entry
  CHECK(f.entries.size() == 1);
  CHECK_THROWS_AS(f.set(MultiIndex::of(3), cplx{1.0, 0.0}),
                  std::invalid_argument);
}
