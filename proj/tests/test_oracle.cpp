#include <cmath>

#include "annulab/oracle.hpp"
#include "doctest.h"

using namespace annulab;

namespace {

double cot_like(SpaceForm geom, double r) {
  switch (geom) {
    case SpaceForm::Sphere: return std::cos(r) / std::sin(r);
    case SpaceForm::Euclidean: return 1.0 / r;
    case SpaceForm::Hyperbolic: return std::cosh(r) / std::sinh(r);
  }
  return 0.0;
}

const SpaceForm kAllGeoms[3] = {SpaceForm::Sphere, SpaceForm::Euclidean,
                                SpaceForm::Hyperbolic};

}  // namespace

TEST_CASE("closed-form torsion coefficients") {
  // frozen from solving the 2x2 boundary system at full precision
  RadialTorsion sph = radial_torsion(SpaceForm::Sphere, 0.3, 1.0);
  CHECK(sph.C == doctest::Approx(-0.814331530252712).epsilon(1e-12));
  CHECK(sph.D == doctest::Approx(-0.319726802098452).epsilon(1e-12));
  CHECK(sph.value(0.6) == doctest::Approx(0.0641873480535429).epsilon(1e-12));

  RadialTorsion euc = radial_torsion(SpaceForm::Euclidean, 0.5, 1.0);
  CHECK(euc.C == doctest::Approx(0.270505320166681).epsilon(1e-12));
  CHECK(euc.D == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(euc.value(0.75) == doctest::Approx(0.0315554688852168).epsilon(1e-12));

  RadialTorsion hyp = radial_torsion(SpaceForm::Hyperbolic, 0.3, 1.0);
  CHECK(hyp.C == doctest::Approx(1.19230480310792).epsilon(1e-12));
  CHECK(hyp.D == doctest::Approx(1.08182335514011).epsilon(1e-12));
}

TEST_CASE("closed forms satisfy the boundary conditions and the ODE") {
  for (SpaceForm geom : kAllGeoms) {
    RadialTorsion rt = radial_torsion(geom, 0.3, 1.0);
    CHECK(std::abs(rt.value(0.3)) < 1e-14);
    CHECK(std::abs(rt.value(1.0)) < 1e-14);
    CHECK(rt.derivative(0.3) > 0.0);
    CHECK(rt.derivative(1.0) < 0.0);
    for (int k = 0; k <= 100; ++k) {
      double r = 0.3 + 0.7 * k / 100.0;
      CHECK(rt.value(r) >= -1e-14);
      double residual = rt.second_derivative(r) +
                        cot_like(geom, r) * rt.derivative(r) + 1.0;
      CHECK(std::abs(residual) < 1e-10);
    }
  }
}

TEST_CASE("radial torsion integral") {
  // frozen against an independent adaptive quadrature
  CHECK(radial_J(SpaceForm::Sphere, 0.3, 1.0) ==
        doctest::Approx(0.112064115004026).epsilon(1e-9));
  CHECK(radial_J(SpaceForm::Euclidean, 0.5, 1.0) ==
        doctest::Approx(0.0494738166203293).epsilon(1e-9));
  CHECK(radial_J(SpaceForm::Hyperbolic, 0.3, 1.0) ==
        doctest::Approx(0.127108111874399).epsilon(1e-9));
  for (SpaceForm geom : kAllGeoms) CHECK(radial_J(geom, 0.3, 1.0) > 0.0);

  // cross-check the adaptive rule with a brute-force trapezoid
  RadialTorsion rt = radial_torsion(SpaceForm::Euclidean, 0.5, 1.0);
  const int n = 1000000;
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    double r = 0.5 + 0.5 * k / n;
    double w = (k == 0 || k == n) ? 0.5 : 1.0;
    acc += w * rt.value(r) * r;
  }
  acc *= 2.0 * 3.14159265358979323846 * 0.5 / n;
  CHECK(radial_J(SpaceForm::Euclidean, 0.5, 1.0) ==
        doctest::Approx(acc).epsilon(1e-9));
}

TEST_CASE("radial first eigenvalue") {
  // frozen against an independent high-order shooting computation
  CHECK(radial_lambda1(SpaceForm::Sphere, 0.3, 1.0) ==
        doctest::Approx(19.1279834202267).epsilon(1e-7));
  CHECK(radial_lambda1(SpaceForm::Euclidean, 0.3, 1.0) ==
        doctest::Approx(19.4692269248471).epsilon(1e-7));
  CHECK(radial_lambda1(SpaceForm::Euclidean, 0.5, 1.0) ==
        doctest::Approx(39.0132884990087).epsilon(1e-7));
  CHECK(radial_lambda1(SpaceForm::Hyperbolic, 0.3, 1.0) ==
        doctest::Approx(19.7958126500229).epsilon(1e-7));
}

TEST_CASE("narrow euclidean annulus approaches the string limit") {
  double lam = radial_lambda1(SpaceForm::Euclidean, 1.0, 1.05);
  double limit = std::pow(3.14159265358979323846 / 0.05, 2.0);
  CHECK(lam / limit > 0.95);
  CHECK(lam / limit < 1.05);
}

TEST_CASE("euclidean dilation scaling") {
  double lam = radial_lambda1(SpaceForm::Euclidean, 0.3, 1.0);
  double scaled = radial_lambda1(SpaceForm::Euclidean, 0.6, 2.0);
  CHECK(std::abs(scaled - lam / 4.0) < 1e-8 * lam);
}

TEST_CASE("normalized radial eigenfunction boundary data") {
  RadialEigen re = radial_eigen(SpaceForm::Sphere, 0.3, 1.0);
  CHECK(re.lambda == doctest::Approx(19.1279834202267).epsilon(1e-7));
  CHECK(re.dphi_r0 == doctest::Approx(5.63716197261718).epsilon(1e-6));
  CHECK(re.dphi_r1 < 0.0);
}

TEST_CASE("oracle domain guards") {
  CHECK_THROWS_AS(radial_torsion(SpaceForm::Sphere, 0.3, 3.5), std::domain_error);
  CHECK_THROWS_AS(radial_torsion(SpaceForm::Euclidean, 0.5, 0.2),
                  std::domain_error);
}
