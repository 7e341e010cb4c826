#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "annulab/mesh.hpp"
#include "doctest.h"

using namespace annulab;

TEST_CASE("structured counts at level 0") {
  AnnulusSpec spec{SpaceForm::Euclidean, 0.3, 1.0, 0.0};
  TriMesh mesh = build_annulus_mesh(spec, 0);
  CHECK(mesh.node_count() == (8 + 1) * 32);
  CHECK(mesh.triangle_count() == 2 * 8 * 32);
  MeshReport rep = validate_mesh(mesh);
  CHECK(rep.ok());
  CHECK(mesh.node_count() - rep.edge_count + mesh.triangle_count() == 0);
  CHECK(mesh.inner_boundary.size() == 32);
  CHECK(mesh.outer_boundary.size() == 32);
}

TEST_CASE("concentric nodes sit on exactly n_r + 1 radii") {
  AnnulusSpec spec{SpaceForm::Sphere, 0.3, 1.0, 0.0};
  TriMesh mesh = build_annulus_mesh(spec, 1);
  std::vector<double> radii;
  radii.reserve(mesh.nodes.size());
  for (const Vec2& p : mesh.nodes) radii.push_back(std::hypot(p.x, p.y));
  std::sort(radii.begin(), radii.end());
  int distinct = 1;
  for (size_t i = 1; i < radii.size(); ++i)
    if (radii[i] - radii[i - 1] > 1e-13 * radii[i]) ++distinct;
  CHECK(distinct == 16 + 1);
}

TEST_CASE("eccentric spherical mesh validates cleanly") {
  AnnulusSpec spec{SpaceForm::Sphere, 0.3, 1.0, 0.35};
  TriMesh mesh = build_annulus_mesh(spec, 2);
  MeshReport rep = validate_mesh(mesh);
  for (const auto& v : rep.violations) MESSAGE(v);
  CHECK(rep.ok());
  CHECK(rep.min_quality >= 0.05);
}

TEST_CASE("validator reports constructed failures") {
  AnnulusSpec spec{SpaceForm::Euclidean, 0.3, 1.0, 0.2};
  TriMesh mesh = build_annulus_mesh(spec, 0);

  SUBCASE("flipped triangle") {
    std::swap(mesh.triangles[10][1], mesh.triangles[10][2]);
    MeshReport rep = validate_mesh(mesh);
    CHECK(!rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
      if (v.find("non-positive area") != std::string::npos) found = true;
    CHECK(found);
  }

  SUBCASE("boundary node off its circle") {
    mesh.nodes[mesh.inner_boundary[3]].x += 1e-6;
    MeshReport rep = validate_mesh(mesh);
    CHECK(!rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
      if (v.find("off its circle") != std::string::npos) found = true;
    CHECK(found);
  }
}

TEST_CASE("mesh size halves with each refinement") {
  AnnulusSpec spec{SpaceForm::Hyperbolic, 0.3, 1.0, 0.35};
  double prev = validate_mesh(build_annulus_mesh(spec, 0)).max_edge_length;
  for (int level = 1; level <= 3; ++level) {
    double h = validate_mesh(build_annulus_mesh(spec, level)).max_edge_length;
    double ratio = prev / h;
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);
    prev = h;
  }
}

TEST_CASE("negative offsets mirror the positive mesh node-for-node") {
  for (SpaceForm geom :
       {SpaceForm::Sphere, SpaceForm::Euclidean, SpaceForm::Hyperbolic}) {
    AnnulusSpec plus{geom, 0.3, 1.0, 0.25};
    AnnulusSpec minus{geom, 0.3, 1.0, -0.25};
    TriMesh mp = build_annulus_mesh(plus, 1);
    TriMesh mm = build_annulus_mesh(minus, 1);
    REQUIRE(mp.node_count() == mm.node_count());
    for (int i = 0; i < mp.node_count(); ++i) {
      CHECK(std::abs(mm.nodes[i].x + mp.nodes[i].x) < 1e-12);
      CHECK(std::abs(mm.nodes[i].y - mp.nodes[i].y) < 1e-12);
    }
    CHECK(validate_mesh(mm).ok());
  }
}

TEST_CASE("mesh construction is bitwise deterministic") {
  AnnulusSpec spec{SpaceForm::Sphere, 0.3, 1.0, 0.35};
  TriMesh a = build_annulus_mesh(spec, 2);
  TriMesh b = build_annulus_mesh(spec, 2);
  REQUIRE(a.node_count() == b.node_count());
  CHECK(std::memcmp(a.nodes.data(), b.nodes.data(),
                    a.nodes.size() * sizeof(Vec2)) == 0);
  CHECK(a.triangles == b.triangles);
}

TEST_CASE("refinement level bounds") {
  AnnulusSpec spec{SpaceForm::Euclidean, 0.3, 1.0, 0.0};
  CHECK_THROWS_AS(build_annulus_mesh(spec, -1), std::invalid_argument);
  CHECK_THROWS_AS(build_annulus_mesh(spec, 9), std::invalid_argument);
}

TEST_CASE("plain-text dump format") {
  AnnulusSpec spec{SpaceForm::Euclidean, 0.3, 1.0, 0.1};
  TriMesh mesh = build_annulus_mesh(spec, 0);
  std::ostringstream os;
  write_mesh_text(mesh, os);
  std::istringstream is(os.str());
  std::string line;
  int nv = 0, nt = 0, nbi = 0, nbo = 0;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) ++nv;
    if (line.rfind("t ", 0) == 0) ++nt;
    if (line.rfind("bi", 0) == 0) ++nbi;
    if (line.rfind("bo", 0) == 0) ++nbo;
  }
  CHECK(nv == mesh.node_count());
  CHECK(nt == mesh.triangle_count());
  CHECK(nbi == 1);
  CHECK(nbo == 1);
}
