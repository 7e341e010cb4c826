#include <cmath>

#include "annulab/shape.hpp"
#include "doctest.h"

using namespace annulab;

TEST_CASE("boundary derivative vanishes at the concentric configuration") {
  for (SpaceForm geom : {SpaceForm::Sphere, SpaceForm::Euclidean}) {
    AnnulusSpec spec{geom, 0.3, 1.0, 0.0};
    TorsionSolution ts = solve_torsion(spec, 3);
    double dJ = dJ_boundary(ts);
    double scale = boundary_abs_integral(ts.mesh, spec, ts.inner_flux.values);
    CHECK(std::abs(dJ) <= 1e-6 * scale);

    EigenSolution es = solve_eigen(spec, 3);
    double dlam = dLambda_boundary(es);
    double scale_e = boundary_abs_integral(es.mesh, spec, es.inner_flux.values);
    CHECK(std::abs(dlam) <= 1e-6 * scale_e);
  }
}

TEST_CASE("boundary derivatives carry the expected signs and match slopes") {
  AnnulusSpec spec{SpaceForm::Sphere, 0.3, 1.0, 0.35};
  TorsionSolution ts = solve_torsion(spec, 3);
  EigenSolution es = solve_eigen(spec, 3);
  double dJ = dJ_boundary(ts);
  double dlam = dLambda_boundary(es);
  CHECK(dJ > 0.0);
  CHECK(dlam < 0.0);

  double delta = 1e-3;
  double dJ_fd = (solve_torsion({spec.geom, 0.3, 1.0, 0.35 + delta}, 3).J -
                  solve_torsion({spec.geom, 0.3, 1.0, 0.35 - delta}, 3).J) /
                 (2.0 * delta);
  double dlam_fd =
      (solve_eigen({spec.geom, 0.3, 1.0, 0.35 + delta}, 3).lambda1 -
       solve_eigen({spec.geom, 0.3, 1.0, 0.35 - delta}, 3).lambda1) /
      (2.0 * delta);
  CHECK(std::abs(dJ - dJ_fd) / std::abs(dJ_fd) < 0.05);
  CHECK(std::abs(dlam - dlam_fd) / std::abs(dlam_fd) < 0.05);
}

TEST_CASE("reflection pairing") {
  AnnulusSpec spec{SpaceForm::Sphere, 0.3, 1.0, 0.35};
  TorsionSolution ts = solve_torsion(spec, 3);
  ReflectionReport report =
      reflection_report(ts.mesh, spec, ts.inner_flux.values);
  CHECK(report.all_strict);

  // bookkeeping: one pair per inner node on the far half
  int expected = 0;
  for (int node : ts.mesh.inner_boundary)
    if (half_plane_coord(spec.geom, spec.t, ts.mesh.nodes[node]) > 1e-8)
      ++expected;
  CHECK(static_cast<int>(report.pairs.size()) == expected);

  for (const auto& pair : report.pairs) {
    CHECK(pair.cos_beta_x < 0.0);
    CHECK(pair.flux_abs_x < pair.flux_abs_reflected);
  }

  EigenSolution es = solve_eigen(spec, 3);
  CHECK(reflection_report(es.mesh, spec, es.inner_flux.values).all_strict);

  AnnulusSpec hyp{SpaceForm::Hyperbolic, 0.3, 1.0, 0.35};
  TorsionSolution th = solve_torsion(hyp, 3);
  CHECK(reflection_report(th.mesh, hyp, th.inner_flux.values).all_strict);

  AnnulusSpec flat{SpaceForm::Sphere, 0.3, 1.0, 0.0};
  TorsionSolution t0 = solve_torsion(flat, 2);
  CHECK_THROWS_AS(reflection_report(t0.mesh, flat, t0.inner_flux.values),
                  DegenerateConfigError);
}

TEST_CASE("offset sweep") {
  std::vector<double> grid{0.0, 0.2};
  std::vector<SweepRow> rows =
      sweep(SpaceForm::Euclidean, 0.3, 1.0, grid, 2, 1e-3);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].t == 0.0);
  CHECK(rows[1].t == 0.2);
  CHECK(rows[1].J > rows[0].J);
  CHECK(rows[1].lambda1 < rows[0].lambda1);
  CHECK(rows[1].dJ_bnd > 0.0);
  CHECK(rows[1].dlam_bnd < 0.0);
  CHECK(std::abs(rows[0].dJ_fd) < 1e-7);
  // volume and boundary routes stay close away from t = 0
  CHECK(std::abs(rows[1].dJ_vol - rows[1].dJ_bnd) / rows[1].dJ_bnd < 0.05);

  CHECK_THROWS_AS(sweep(SpaceForm::Euclidean, 0.3, 1.0, {0.6995}, 1, 1e-3),
                  std::invalid_argument);
}

TEST_CASE("derivative cross-checks hold at every offset of the sweep") {
  std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  std::vector<SweepRow> rows = sweep(SpaceForm::Sphere, 0.3, 1.0, grid, 3, 1e-3);
  REQUIRE(rows.size() == grid.size());
  for (const auto& row : rows) {
    for (double v : {row.J, row.lambda1, row.dJ_bnd, row.dJ_vol, row.dlam_bnd,
                     row.dJ_fd, row.dlam_fd})
      CHECK(std::isfinite(v));
    if (row.t < 0.1) continue;
    CHECK(std::abs(row.dJ_bnd - row.dJ_fd) / std::abs(row.dJ_fd) < 0.05);
    CHECK(std::abs(row.dlam_bnd - row.dlam_fd) / std::abs(row.dlam_fd) < 0.05);
    CHECK(std::abs(row.dJ_vol - row.dJ_bnd) / std::abs(row.dJ_bnd) < 0.02);
    CHECK(row.dJ_bnd > 0.0);
    CHECK(row.dlam_bnd < 0.0);
  }
}

TEST_CASE("boundary derivatives are odd in the offset") {
  AnnulusSpec plus{SpaceForm::Hyperbolic, 0.3, 1.0, 0.3};
  AnnulusSpec minus{SpaceForm::Hyperbolic, 0.3, 1.0, -0.3};
  TorsionSolution tp = solve_torsion(plus, 2);
  TorsionSolution tm = solve_torsion(minus, 2);
  double dp = dJ_boundary(tp), dm = dJ_boundary(tm);
  CHECK(std::abs(dp + dm) < 1e-8 * std::abs(dp));
}
