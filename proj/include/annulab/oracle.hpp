#pragma once

#include "annulab/geometry.hpp"

namespace annulab {

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed-form radial torsion function on the concentric annulus, from the
// radial ODE (sn(r) u')' = -sn(r) with sn = sin / id / sinh:
//   sphere      u =  ln sin r  + C ln tan(r/2) + D
//   euclidean   u = -r^2/4     + C ln r        + D
//   hyperbolic  u = -ln sinh r + C ln tanh(r/2) + D
// with C, D fixed by u(r0) = u(r1) = 0.
struct RadialTorsion {
  SpaceForm geom = SpaceForm::Euclidean;
  double r0 = 0.0;
  double r1 = 0.0;
  double C = 0.0;
  double D = 0.0;

  double value(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;
};

RadialTorsion radial_torsion(SpaceForm geom, double r0, double r1);

// J = \int u dV = 2 pi \int u(r) sn(r) dr by adaptive Simpson to 1e-10.
double radial_J(SpaceForm geom, double r0, double r1);

// Smallest lambda of (sn phi')' + lambda sn phi = 0, phi(r0) = phi(r1) = 0,
// by RK4 shooting and bisection on the first sign change of phi(r1),
// cross-checked against a 1-D P1 eigensolve to 1e-6 relative.
double radial_lambda1(SpaceForm geom, double r0, double r1);

// Eigenvalue plus the boundary data of the eigenfunction normalized by
// \int phi^2 dV = 1 on the 2-D annulus (radial mode): the metric normal
// derivative at r0, outward from the annulus, is -dphi_r0.
struct RadialEigen {
  double lambda = 0.0;
  double dphi_r0 = 0.0;
  double dphi_r1 = 0.0;
};

RadialEigen radial_eigen(SpaceForm geom, double r0, double r1);

}  // namespace annulab
