#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "annulab/mesh.hpp"

namespace annulab {

using SparseSpd = Eigen::SparseMatrix<double>;

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Nodal values of a P1 finite-element function on a TriMesh.
struct ScalarField {
  Eigen::VectorXd values;  // one entry per mesh node
};

// Metric normal derivative on the inner boundary loop, one value per loop
// node, with the normal pointing out of the annulus (into the inner ball).
struct BoundaryFlux {
  Eigen::VectorXd values;  // indexed like mesh.inner_boundary
};

// Euclidean P1 stiffness matrix. In a 2-D conformal chart the metric
// Dirichlet energy equals the Euclidean one, so no metric weight appears:
// this single identity removes all curvature terms from the operator.
SparseSpd assemble_stiffness(const TriMesh& mesh);

// Mass matrix with the conformal area weight lambda^2, by the mid-edge
// 3-point rule (degree-2 exact in the polynomial factor).
SparseSpd assemble_weighted_mass(const TriMesh& mesh, SpaceForm geom);

// Load vector with entries -\int f phi_i lambda^2 dx, so that K u = F
// discretizes -Laplace u = -f with the metric Laplacian.
Eigen::VectorXd assemble_load(const TriMesh& mesh, SpaceForm geom,
                              const std::function<double(Vec2)>& f);

// Dirichlet elimination: restriction to interior nodes and re-embedding
// with zero boundary values.
struct DirichletSystem {
  SparseSpd reduced;
  std::vector<int> interior;  // ascending node ids
  int full_dim = 0;

  Eigen::VectorXd restrict_to_interior(const Eigen::VectorXd& full) const;
  Eigen::VectorXd inject(const Eigen::VectorXd& red) const;
};

DirichletSystem apply_dirichlet(const SparseSpd& matrix,
                                const std::vector<int>& boundary_nodes);

// SPD solve to relative residual 1e-12: sparse Cholesky with iterative
// refinement, falling back to diagonally preconditioned CG.
Eigen::VectorXd solve_spd(const SparseSpd& matrix, const Eigen::VectorXd& rhs);

struct EigenPair {
  double lambda = 0.0;
  Eigen::VectorXd vector;  // M-normalized, positive orientation
};

// Smallest generalized eigenpair of K u = lambda M u by inverse power
// iteration on one factorization of K.
EigenPair smallest_eigenpair(const SparseSpd& stiffness, const SparseSpd& mass);

// Consistent flux recovery on the inner loop: the residual K u - load,
// restricted to the loop, equals the weak form of the Euclidean normal
// derivative; solving the 1-D boundary mass system and dividing by the
// conformal factor yields the metric flux nodally.
BoundaryFlux recover_inner_flux(const TriMesh& mesh, SpaceForm geom,
                                const Eigen::VectorXd& solution,
                                const Eigen::VectorXd& load);

}  // namespace annulab
