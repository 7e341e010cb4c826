#include "annulab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

namespace annulab {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kQualityFloor = 0.05;
constexpr double kOnCircleTol = 1e-12;

double signed_area2(Vec2 a, Vec2 b, Vec2 c) {
  return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
}

double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

bool TriMesh::is_boundary_node(int i) const {
  for (int k : inner_boundary)
    if (k == i) return true;
  for (int k : outer_boundary)
    if (k == i) return true;
  return false;
}

TriMesh build_annulus_mesh(const AnnulusSpec& spec, int level) {
  spec.validate();
  if (level < 0 || level > 8)
    throw std::invalid_argument("refinement level must be in [0, 8]");

  if (spec.t < 0.0) {
    AnnulusSpec mirrored = spec;
    mirrored.t = -spec.t;
    TriMesh mesh = build_annulus_mesh(mirrored, level);
    for (Vec2& p : mesh.nodes) p.x = -p.x;
    for (auto& tri : mesh.triangles) std::swap(tri[1], tri[2]);
    mesh.inner_circle = geodesic_ball_to_disk(spec.geom, spec.t, spec.r0);
    mesh.outer_circle = geodesic_ball_to_disk(spec.geom, 0.0, spec.r1);
    return mesh;
  }

  Circle2D outer = geodesic_ball_to_disk(spec.geom, 0.0, spec.r1);
  Circle2D inner = geodesic_ball_to_disk(spec.geom, spec.t, spec.r0);
  ConcentricImage conc = mobius_concentricize(outer, inner);

  const int n_r = 8 << level;
  const int n_th = 32 << level;

  TriMesh mesh;
  mesh.refinement_level = level;
  mesh.inner_circle = inner;
  mesh.outer_circle = outer;
  mesh.nodes.reserve(static_cast<size_t>(n_r + 1) * n_th);

  const double log_ratio = std::log(conc.rho1 / conc.rho0);
  for (int i = 0; i <= n_r; ++i) {
    double rho;
    if (i == 0)
      rho = conc.rho0;
    else if (i == n_r)
      rho = conc.rho1;
    else
      rho = conc.rho0 * std::exp(log_ratio * (double(i) / n_r));
    for (int j = 0; j < n_th; ++j) {
      double th = kTwoPi * j / n_th;
      Vec2 w{rho * std::cos(th), rho * std::sin(th)};
      mesh.nodes.push_back(conc.map.inverse(w));
    }
  }

  auto id = [n_th](int i, int j) { return i * n_th + ((j % n_th + n_th) % n_th); };

  mesh.triangles.reserve(static_cast<size_t>(2) * n_r * n_th);
  for (int i = 0; i < n_r; ++i) {
    for (int j = 0; j < n_th; ++j) {
      int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if ((i + j) % 2 == 0) {
        mesh.triangles.push_back({a, b, c});
        mesh.triangles.push_back({a, c, d});
      } else {
        mesh.triangles.push_back({a, b, d});
        mesh.triangles.push_back({b, c, d});
      }
    }
  }

  mesh.inner_boundary.resize(n_th);
  mesh.outer_boundary.resize(n_th);
  for (int j = 0; j < n_th; ++j) {
    mesh.inner_boundary[j] = id(0, j);
    mesh.outer_boundary[j] = id(n_r, j);
  }
  return mesh;
}

MeshReport validate_mesh(const TriMesh& mesh) {
  MeshReport rep;
  rep.min_quality = 1.0;
  auto fail = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

  const int nv = mesh.node_count();
  for (size_t k = 0; k < mesh.triangles.size(); ++k) {
    const auto& tri = mesh.triangles[k];
    for (int v : tri)
      if (v < 0 || v >= nv) {
        fail("triangle " + std::to_string(k) + " references invalid node");
        return rep;
      }
    Vec2 a = mesh.nodes[tri[0]], b = mesh.nodes[tri[1]], c = mesh.nodes[tri[2]];
    double area2 = signed_area2(a, b, c);
    if (!(area2 > 0.0))
      fail("triangle " + std::to_string(k) + " has non-positive area");

    double la = dist(b, c), lb = dist(c, a), lc = dist(a, b);
    rep.max_edge_length = std::max({rep.max_edge_length, la, lb, lc});
    double s = 0.5 * (la + lb + lc);
    double area = 0.5 * std::abs(area2);
    if (s > 0.0 && la * lb * lc > 0.0) {
      // 2 * inradius / circumradius = 8 A^2 / (s * la * lb * lc)
      double q = 8.0 * area * area / (s * la * lb * lc);
      rep.min_quality = std::min(rep.min_quality, q);
    } else {
      rep.min_quality = 0.0;
    }
  }
  if (rep.min_quality < kQualityFloor)
    fail("minimum triangle quality " + std::to_string(rep.min_quality) +
         " below floor " + std::to_string(kQualityFloor));

  // Edge incidence: interior edges in 2 triangles, boundary edges in 1.
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      int u = tri[e], v = tri[(e + 1) % 3];
      edge_use[{std::min(u, v), std::max(u, v)}]++;
    }
  }
  rep.edge_count = static_cast<int>(edge_use.size());

  std::map<std::pair<int, int>, bool> boundary_edges;
  auto collect_loop = [&](const std::vector<int>& loop, const Circle2D& circle,
                          const char* name) {
    if (loop.size() < 3) {
      fail(std::string(name) + " boundary loop has fewer than 3 nodes");
      return;
    }
    std::vector<int> sorted = loop;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(std::string(name) + " boundary loop repeats a node");
    for (size_t k = 0; k < loop.size(); ++k) {
      int u = loop[k], v = loop[(k + 1) % loop.size()];
      boundary_edges[{std::min(u, v), std::max(u, v)}] = true;
      Vec2 p = mesh.nodes[loop[k]];
      double off = std::abs(std::hypot(p.x - circle.center, p.y) - circle.radius);
      if (off > kOnCircleTol)
        fail(std::string(name) + " boundary node " + std::to_string(loop[k]) +
             " off its circle by " + std::to_string(off));
    }
  };
  collect_loop(mesh.inner_boundary, mesh.inner_circle, "inner");
  collect_loop(mesh.outer_boundary, mesh.outer_circle, "outer");

  for (const auto& [edge, count] : edge_use) {
    bool on_boundary = boundary_edges.count(edge) > 0;
    if (on_boundary && count != 1)
      fail("boundary edge (" + std::to_string(edge.first) + "," +
           std::to_string(edge.second) + ") shared by " +
           std::to_string(count) + " triangles");
    if (!on_boundary && count != 2)
      fail("interior edge (" + std::to_string(edge.first) + "," +
           std::to_string(edge.second) + ") shared by " +
           std::to_string(count) + " triangles");
  }

  int chi = nv - rep.edge_count + mesh.triangle_count();
  if (chi != 0)
    fail("Euler characteristic " + std::to_string(chi) + ", expected 0");

  return rep;
}

void write_mesh_text(const TriMesh& mesh, std::ostream& os) {
  char buf[80];
  for (const Vec2& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g\n", p.x, p.y);
    os << buf;
  }
  for (const auto& tri : mesh.triangles)
    os << "t " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  os << "bi";
  for (int i : mesh.inner_boundary) os << ' ' << i;
  os << "\nbo";
  for (int i : mesh.outer_boundary) os << ' ' << i;
  os << '\n';
}

}  // namespace annulab
