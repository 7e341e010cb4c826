#include "annulab/fem.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

namespace annulab {

namespace {

struct TriGeom {
  Vec2 a, b, c;
  double area;
};

TriGeom triangle_geometry(const TriMesh& mesh, const std::array<int, 3>& tri) {
  Vec2 a = mesh.nodes[tri[0]], b = mesh.nodes[tri[1]], c = mesh.nodes[tri[2]];
  double area2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  if (!(area2 > 0.0))
    throw SolverError("degenerate or inverted triangle in assembly");
  return TriGeom{a, b, c, 0.5 * area2};
}

Vec2 midpoint(Vec2 u, Vec2 v) { return Vec2{0.5 * (u.x + v.x), 0.5 * (u.y + v.y)}; }

}  // namespace

SparseSpd assemble_stiffness(const TriMesh& mesh) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.triangles.size() * 9);
  for (const auto& tri : mesh.triangles) {
    TriGeom g = triangle_geometry(mesh, tri);
    // grad phi_i = perp(opposite edge) / (2 A), perp(v) = (-v.y, v.x)
    Vec2 grad[3] = {
        Vec2{-(g.c.y - g.b.y), g.c.x - g.b.x},
        Vec2{-(g.a.y - g.c.y), g.a.x - g.c.x},
        Vec2{-(g.b.y - g.a.y), g.b.x - g.a.x},
    };
    double inv4A = 1.0 / (4.0 * g.area);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(tri[i], tri[j],
                           (grad[i].x * grad[j].x + grad[i].y * grad[j].y) * inv4A);
  }
  SparseSpd K(mesh.node_count(), mesh.node_count());
  K.setFromTriplets(trips.begin(), trips.end());
  return K;
}

SparseSpd assemble_weighted_mass(const TriMesh& mesh, SpaceForm geom) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.triangles.size() * 12);
  for (const auto& tri : mesh.triangles) {
    TriGeom g = triangle_geometry(mesh, tri);
    double w = g.area / 12.0;
    // Quadrature point at the midpoint of edge (u, v): phi_u = phi_v = 1/2.
    const int eu[3] = {0, 1, 2}, ev[3] = {1, 2, 0};
    Vec2 verts[3] = {g.a, g.b, g.c};
    for (int e = 0; e < 3; ++e) {
      int u = tri[eu[e]], v = tri[ev[e]];
      double lam = conformal_factor(geom, midpoint(verts[eu[e]], verts[ev[e]]));
      double val = w * lam * lam;
      trips.emplace_back(u, u, val);
      trips.emplace_back(u, v, val);
      trips.emplace_back(v, u, val);
      trips.emplace_back(v, v, val);
    }
  }
  SparseSpd M(mesh.node_count(), mesh.node_count());
  M.setFromTriplets(trips.begin(), trips.end());
  return M;
}

Eigen::VectorXd assemble_load(const TriMesh& mesh, SpaceForm geom,
                              const std::function<double(Vec2)>& f) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(mesh.node_count());
  for (const auto& tri : mesh.triangles) {
    TriGeom g = triangle_geometry(mesh, tri);
    double w = g.area / 6.0;
    const int eu[3] = {0, 1, 2}, ev[3] = {1, 2, 0};
    Vec2 verts[3] = {g.a, g.b, g.c};
    for (int e = 0; e < 3; ++e) {
      Vec2 m = midpoint(verts[eu[e]], verts[ev[e]]);
      double lam = conformal_factor(geom, m);
      double val = -w * f(m) * lam * lam;
      F[tri[eu[e]]] += val;
      F[tri[ev[e]]] += val;
    }
  }
  return F;
}

Eigen::VectorXd DirichletSystem::restrict_to_interior(
    const Eigen::VectorXd& full) const {
  Eigen::VectorXd red(interior.size());
  for (size_t k = 0; k < interior.size(); ++k) red[k] = full[interior[k]];
  return red;
}

Eigen::VectorXd DirichletSystem::inject(const Eigen::VectorXd& red) const {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(full_dim);
  for (size_t k = 0; k < interior.size(); ++k) full[interior[k]] = red[k];
  return full;
}

DirichletSystem apply_dirichlet(const SparseSpd& matrix,
                                const std::vector<int>& boundary_nodes) {
  const int n = static_cast<int>(matrix.rows());
  std::vector<char> is_boundary(n, 0);
  for (int b : boundary_nodes) is_boundary[b] = 1;

  DirichletSystem sys;
  sys.full_dim = n;
  std::vector<int> new_id(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!is_boundary[i]) {
      new_id[i] = static_cast<int>(sys.interior.size());
      sys.interior.push_back(i);
    }
  }
  if (sys.interior.empty())
    throw std::invalid_argument("Dirichlet elimination left no interior nodes");

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(matrix.nonZeros());
  for (int col = 0; col < matrix.outerSize(); ++col) {
    if (new_id[col] < 0) continue;
    for (SparseSpd::InnerIterator it(matrix, col); it; ++it) {
      if (new_id[it.row()] < 0) continue;
      trips.emplace_back(new_id[it.row()], new_id[col], it.value());
    }
  }
  const int m = static_cast<int>(sys.interior.size());
  sys.reduced.resize(m, m);
  sys.reduced.setFromTriplets(trips.begin(), trips.end());
  return sys;
}

namespace {

double infinity_norm(const SparseSpd& matrix) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(matrix.rows());
  for (int col = 0; col < matrix.outerSize(); ++col)
    for (SparseSpd::InnerIterator it(matrix, col); it; ++it)
      row_sums[it.row()] += std::abs(it.value());
  return row_sums.maxCoeff();
}

}  // namespace

Eigen::VectorXd solve_spd(const SparseSpd& matrix, const Eigen::VectorXd& rhs) {
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) return Eigen::VectorXd::Zero(rhs.size());
  const double anorm = infinity_norm(matrix);

  // Normwise backward-error target: with h^2-scaled loads the plain
  // ||r|| / ||b|| form hits the double-precision floor eps ||A|| ||x|| / ||b||
  // on fine meshes, so the residual is measured against both scales.
  auto accepted = [&](const Eigen::VectorXd& x) {
    return (rhs - matrix * x).norm() <=
           1e-12 * (bnorm + anorm * x.norm());
  };

  Eigen::SimplicialLLT<SparseSpd> llt(matrix);
  if (llt.info() == Eigen::Success) {
    Eigen::VectorXd x = llt.solve(rhs);
    for (int pass = 0; pass < 3; ++pass) {
      if (accepted(x)) return x;
      x += llt.solve((rhs - matrix * x).eval());
    }
    if (accepted(x)) return x;
  }

  Eigen::ConjugateGradient<SparseSpd, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg(matrix);
  cg.setTolerance(1e-13);
  cg.setMaxIterations(20 * matrix.rows());
  Eigen::VectorXd x = cg.solve(rhs);
  if (!accepted(x))
    throw SolverError("SPD solve failed to reach the 1e-12 residual target");
  return x;
}

EigenPair smallest_eigenpair(const SparseSpd& stiffness, const SparseSpd& mass) {
  if (stiffness.rows() != mass.rows())
    throw std::invalid_argument("stiffness/mass dimension mismatch");

  Eigen::SimplicialLLT<SparseSpd> llt(stiffness);
  if (llt.info() != Eigen::Success)
    throw SolverError("stiffness factorization failed");

  double k_scale = 0.0;
  for (int i = 0; i < stiffness.rows(); ++i)
    k_scale = std::max(k_scale, std::abs(stiffness.coeff(i, i)));

  Eigen::VectorXd u = Eigen::VectorXd::Ones(stiffness.rows());
  u /= std::sqrt(u.dot(mass * u));
  double lambda = u.dot(stiffness * u);

  const int max_iters = 10000;
  for (int iter = 0; iter < max_iters; ++iter) {
    Eigen::VectorXd w = llt.solve(mass * u);
    double mnorm = std::sqrt(w.dot(mass * w));
    if (!(mnorm > 0.0)) throw SolverError("inverse iteration collapsed");
    u = w / mnorm;
    double lambda_new = u.dot(stiffness * u);
    double resid = (stiffness * u - lambda_new * mass * u).norm();
    bool converged = std::abs(lambda_new - lambda) <= 1e-12 * std::abs(lambda_new) &&
                     resid <= 1e-10 * u.norm() * k_scale;
    lambda = lambda_new;
    if (converged) {
      if (u.sum() < 0.0) u = -u;
      return EigenPair{lambda, u};
    }
  }
  throw SolverError("inverse power iteration did not converge in 10^4 steps");
}

BoundaryFlux recover_inner_flux(const TriMesh& mesh, SpaceForm geom,
                                const Eigen::VectorXd& solution,
                                const Eigen::VectorXd& load) {
  SparseSpd K = assemble_stiffness(mesh);
  Eigen::VectorXd residual = K * solution - load;

  const auto& loop = mesh.inner_boundary;
  const int n = static_cast<int>(loop.size());
  if (n < 3) throw SolverError("inner boundary loop too short");

  std::vector<double> h(n);
  for (int k = 0; k < n; ++k) {
    Vec2 a = mesh.nodes[loop[k]], b = mesh.nodes[loop[(k + 1) % n]];
    h[k] = std::hypot(b.x - a.x, b.y - a.y);
    if (!(h[k] > 0.0)) throw SolverError("degenerate inner boundary edge");
  }

  // Cyclic 1-D P1 mass matrix in Euclidean arc length.
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(3 * n);
  Eigen::VectorXd r(n);
  for (int k = 0; k < n; ++k) {
    int prev = (k + n - 1) % n, next = (k + 1) % n;
    trips.emplace_back(k, k, (h[prev] + h[k]) / 3.0);
    trips.emplace_back(k, next, h[k] / 6.0);
    trips.emplace_back(next, k, h[k] / 6.0);
    r[k] = residual[loop[k]];
  }
  SparseSpd Mb(n, n);
  Mb.setFromTriplets(trips.begin(), trips.end());

  Eigen::VectorXd g = solve_spd(Mb, r);  // Euclidean normal derivative

  // The alternating-diagonal grid feeds a mesh-parity oscillation into the
  // boundary residual. One binomial pass over the closed loop removes that
  // mode exactly and perturbs smooth components only at O(h^2).
  BoundaryFlux flux;
  flux.values.resize(n);
  for (int k = 0; k < n; ++k) {
    double smoothed =
        0.25 * g[(k + n - 1) % n] + 0.5 * g[k] + 0.25 * g[(k + 1) % n];
    flux.values[k] = smoothed / conformal_factor(geom, mesh.nodes[loop[k]]);
  }
  return flux;
}

}  // namespace annulab
