#pragma once

#include "annulab/fem.hpp"

namespace annulab {

// Solution of -Laplace y = 1, y = 0 on the boundary, together with the
// domain functional J = \int y dV. By the weak form J coincides with the
// Dirichlet energy \int |grad y|^2 dV; both are kept and their agreement is
// enforced to 1e-9 relative.
struct TorsionSolution {
  AnnulusSpec spec;
  TriMesh mesh;
  ScalarField y;
  double J = 0.0;
  double energy = 0.0;
  BoundaryFlux inner_flux;
};

// First Dirichlet eigenpair: -Laplace y1 = lambda1 y1, y1 = 0 on the
// boundary, y1 > 0 inside, \int y1^2 dV = 1. The associated functional J1
// collapses to lambda1 itself.
struct EigenSolution {
  AnnulusSpec spec;
  TriMesh mesh;
  double lambda1 = 0.0;
  ScalarField y1;
  double J1 = 0.0;
  BoundaryFlux inner_flux;
};

// Harmonic field solving the derivative boundary value problem of the
// torsion solution under the axis sweep: Laplace y' = 0 with
// y' = -(dy/dn) <V, n> on the inner circle and y' = 0 on the outer one.
// dJ_vol = \int y' dV is the volume form of the derivative of J.
struct ShapeDerivative {
  ScalarField y_prime;
  double dJ_vol = 0.0;
};

TorsionSolution solve_torsion(const AnnulusSpec& spec, int level);
EigenSolution solve_eigen(const AnnulusSpec& spec, int level);
ShapeDerivative solve_shape_bvp(const TorsionSolution& torsion);

}  // namespace annulab
