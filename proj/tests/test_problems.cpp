#include <cmath>

#include "annulab/problems.hpp"
#include "annulab/oracle.hpp"
#include "annulab/verify.hpp"
#include "doctest.h"

using namespace annulab;

TEST_CASE("torsion solve matches the radial closed form") {
  SUBCASE("spherical concentric") {
    AnnulusSpec spec{SpaceForm::Sphere, 0.3, 1.0, 0.0};
    TorsionSolution ts = solve_torsion(spec, 3);
    Vec2 probe{model_radius(spec.geom, 0.6), 0.0};
    // closed-form value 0.0641873480535429 at geodesic radius 0.6
    CHECK(interpolate(ts.mesh, ts.y.values, probe) ==
          doctest::Approx(0.0641873480535429).epsilon(5e-4));
  }

  SUBCASE("euclidean concentric") {
    AnnulusSpec spec{SpaceForm::Euclidean, 0.5, 1.0, 0.0};
    TorsionSolution ts = solve_torsion(spec, 3);
    CHECK(interpolate(ts.mesh, ts.y.values, {0.75, 0.0}) ==
          doctest::Approx(0.0315554688852168).epsilon(5e-4));
  }
}

TEST_CASE("torsion solution invariants") {
  AnnulusSpec spec{SpaceForm::Hyperbolic, 0.3, 1.0, 0.35};
  TorsionSolution ts = solve_torsion(spec, 2);

  for (int b : ts.mesh.inner_boundary) CHECK(ts.y.values[b] == 0.0);
  for (int b : ts.mesh.outer_boundary) CHECK(ts.y.values[b] == 0.0);
  double min_interior = 1e30;
  for (int i = 0; i < ts.mesh.node_count(); ++i)
    if (!ts.mesh.is_boundary_node(i))
      min_interior = std::min(min_interior, ts.y.values[i]);
  CHECK(min_interior > 0.0);
  CHECK(std::abs(ts.J - ts.energy) <= 1e-9 * std::abs(ts.J));
  CHECK(ts.J > 0.0);
}

TEST_CASE("eigen solve matches the radial oracle within half a percent") {
  for (SpaceForm geom :
       {SpaceForm::Sphere, SpaceForm::Euclidean, SpaceForm::Hyperbolic}) {
    AnnulusSpec spec{geom, 0.3, 1.0, 0.0};
    EigenSolution es = solve_eigen(spec, 3);
    double ref = radial_lambda1(geom, 0.3, 1.0);
    CHECK(std::abs(es.lambda1 - ref) / ref < 5e-3);
    CHECK(es.lambda1 > 0.0);
    CHECK(es.J1 == es.lambda1);
  }

  // the wider euclidean annulus pair, frozen radial value 39.0132884990087
  AnnulusSpec wide{SpaceForm::Euclidean, 0.5, 1.0, 0.0};
  EigenSolution es = solve_eigen(wide, 3);
  CHECK(std::abs(es.lambda1 - 39.0132884990087) / 39.0132884990087 < 5e-3);
}

TEST_CASE("eigenfunction normalization and positivity") {
  AnnulusSpec spec{SpaceForm::Sphere, 0.3, 1.0, 0.35};
  EigenSolution es = solve_eigen(spec, 2);
  SparseSpd M = assemble_weighted_mass(es.mesh, spec.geom);
  CHECK(std::abs(es.y1.values.dot(M * es.y1.values) - 1.0) < 1e-10);
  for (int i = 0; i < es.mesh.node_count(); ++i) {
    if (es.mesh.is_boundary_node(i))
      CHECK(es.y1.values[i] == 0.0);
    else
      CHECK(es.y1.values[i] > 0.0);
  }
}

TEST_CASE("derivative field of the torsion problem") {
  SUBCASE("concentric: odd boundary data integrates to zero") {
    AnnulusSpec spec{SpaceForm::Sphere, 0.3, 1.0, 0.0};
    TorsionSolution ts = solve_torsion(spec, 3);
    ShapeDerivative sd = solve_shape_bvp(ts);
    CHECK(std::abs(sd.dJ_vol) < 1e-8);
  }

  SUBCASE("eccentric: volume route near the finite-difference slope") {
    AnnulusSpec spec{SpaceForm::Sphere, 0.3, 1.0, 0.35};
    TorsionSolution ts = solve_torsion(spec, 3);
    ShapeDerivative sd = solve_shape_bvp(ts);
    double delta = 1e-3;
    double J_plus = solve_torsion({spec.geom, 0.3, 1.0, 0.35 + delta}, 3).J;
    double J_minus = solve_torsion({spec.geom, 0.3, 1.0, 0.35 - delta}, 3).J;
    double fd = (J_plus - J_minus) / (2.0 * delta);
    CHECK(sd.dJ_vol > 0.0);
    CHECK(std::abs(sd.dJ_vol - fd) / std::abs(fd) < 0.05);
  }
}

TEST_CASE("domain monotonicity in the outer radius") {
  AnnulusSpec small{SpaceForm::Sphere, 0.3, 1.0, 0.2};
  AnnulusSpec large{SpaceForm::Sphere, 0.3, 1.1, 0.2};
  TorsionSolution ts_small = solve_torsion(small, 2);
  TorsionSolution ts_large = solve_torsion(large, 2);
  CHECK(ts_large.J > ts_small.J);
  EigenSolution es_small = solve_eigen(small, 2);
  EigenSolution es_large = solve_eigen(large, 2);
  CHECK(es_large.lambda1 < es_small.lambda1);
}

TEST_CASE("functionals are even in the offset") {
  AnnulusSpec plus{SpaceForm::Euclidean, 0.3, 1.0, 0.2};
  AnnulusSpec minus{SpaceForm::Euclidean, 0.3, 1.0, -0.2};
  double Jp = solve_torsion(plus, 2).J;
  double Jm = solve_torsion(minus, 2).J;
  CHECK(std::abs(Jp - Jm) < 1e-10 * std::abs(Jp));
  double lp = solve_eigen(plus, 2).lambda1;
  double lm = solve_eigen(minus, 2).lambda1;
  CHECK(std::abs(lp - lm) < 1e-10 * lp);
}
