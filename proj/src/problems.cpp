#include "annulab/problems.hpp"

#include <cmath>

namespace annulab {

namespace {

std::vector<int> all_boundary_nodes(const TriMesh& mesh) {
  std::vector<int> nodes = mesh.inner_boundary;
  nodes.insert(nodes.end(), mesh.outer_boundary.begin(),
               mesh.outer_boundary.end());
  return nodes;
}

void check_interior_positive(const TriMesh& mesh, const Eigen::VectorXd& u,
                             const char* label) {
  std::vector<char> boundary(mesh.node_count(), 0);
  for (int b : mesh.inner_boundary) boundary[b] = 1;
  for (int b : mesh.outer_boundary) boundary[b] = 1;
  for (int i = 0; i < mesh.node_count(); ++i) {
    if (boundary[i]) continue;
    if (!(u[i] > 0.0))
      throw SolverError(std::string(label) +
                        " lost interior positivity at node " + std::to_string(i));
  }
}

}  // namespace

TorsionSolution solve_torsion(const AnnulusSpec& spec, int level) {
  spec.validate();
  TorsionSolution sol;
  sol.spec = spec;
  sol.mesh = build_annulus_mesh(spec, level);

  SparseSpd K = assemble_stiffness(sol.mesh);
  Eigen::VectorXd F =
      assemble_load(sol.mesh, spec.geom, [](Vec2) { return -1.0; });

  DirichletSystem sys = apply_dirichlet(K, all_boundary_nodes(sol.mesh));
  Eigen::VectorXd y_int = solve_spd(sys.reduced, sys.restrict_to_interior(F));
  sol.y.values = sys.inject(y_int);

  sol.J = F.dot(sol.y.values);
  sol.energy = sol.y.values.dot(K * sol.y.values);
  if (std::abs(sol.J - sol.energy) > 1e-9 * std::abs(sol.J))
    throw SolverError("torsion energy identity violated beyond 1e-9");

  check_interior_positive(sol.mesh, sol.y.values, "torsion solution");
  sol.inner_flux = recover_inner_flux(sol.mesh, spec.geom, sol.y.values, F);
  return sol;
}

EigenSolution solve_eigen(const AnnulusSpec& spec, int level) {
  spec.validate();
  EigenSolution sol;
  sol.spec = spec;
  sol.mesh = build_annulus_mesh(spec, level);

  SparseSpd K = assemble_stiffness(sol.mesh);
  SparseSpd M = assemble_weighted_mass(sol.mesh, spec.geom);

  std::vector<int> boundary = all_boundary_nodes(sol.mesh);
  DirichletSystem sys_k = apply_dirichlet(K, boundary);
  DirichletSystem sys_m = apply_dirichlet(M, boundary);

  EigenPair pair = smallest_eigenpair(sys_k.reduced, sys_m.reduced);
  if (!(pair.lambda > 0.0))
    throw SolverError("first eigenvalue is not positive");

  sol.lambda1 = pair.lambda;
  sol.J1 = pair.lambda;
  sol.y1.values = sys_k.inject(pair.vector);
  check_interior_positive(sol.mesh, sol.y1.values, "first eigenfunction");

  Eigen::VectorXd load = sol.lambda1 * (M * sol.y1.values);
  sol.inner_flux = recover_inner_flux(sol.mesh, spec.geom, sol.y1.values, load);
  return sol;
}

ShapeDerivative solve_shape_bvp(const TorsionSolution& torsion) {
  const TriMesh& mesh = torsion.mesh;
  const AnnulusSpec& spec = torsion.spec;

  // Boundary trace of y': -(metric flux) * <V, n> on the inner loop, zero on
  // the outer loop where the sweep field vanishes.
  Eigen::VectorXd bc = Eigen::VectorXd::Zero(mesh.node_count());
  for (size_t k = 0; k < mesh.inner_boundary.size(); ++k) {
    int node = mesh.inner_boundary[k];
    double vn = vn_ambient(spec.geom, spec.t, spec.r0, mesh.nodes[node]);
    bc[node] = -torsion.inner_flux.values[k] * vn;
  }

  // Harmonic in the chart: conformal invariance makes the metric Laplace
  // problem a Euclidean one; only the volume integral carries the weight.
  SparseSpd K = assemble_stiffness(mesh);
  DirichletSystem sys = apply_dirichlet(K, all_boundary_nodes(mesh));
  Eigen::VectorXd rhs = -sys.restrict_to_interior(K * bc);
  Eigen::VectorXd yp_int = solve_spd(sys.reduced, rhs);

  ShapeDerivative out;
  out.y_prime.values = sys.inject(yp_int) + bc;
  Eigen::VectorXd dV =
      assemble_load(mesh, spec.geom, [](Vec2) { return -1.0; });
  out.dJ_vol = dV.dot(out.y_prime.values);
  return out;
}

}  // namespace annulab
