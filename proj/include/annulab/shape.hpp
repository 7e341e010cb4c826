#pragma once

#include <vector>

#include "annulab/problems.hpp"

namespace annulab {

// One record of an offset sweep: functionals, boundary-integral derivatives,
// the volume-form derivative of J, and central finite differences.
struct SweepRow {
  SpaceForm geom = SpaceForm::Euclidean;
  double r0 = 0.0;
  double r1 = 0.0;
  double t = 0.0;
  int level = 0;
  double J = 0.0;
  double lambda1 = 0.0;
  double dJ_bnd = 0.0;
  double dJ_vol = 0.0;
  double dlam_bnd = 0.0;
  double dJ_fd = 0.0;
  double dlam_fd = 0.0;
};

struct ReflectionPair {
  Vec2 x;
  Vec2 x_reflected;
  double flux_abs_x = 0.0;
  double flux_abs_reflected = 0.0;
  double cos_beta_x = 0.0;
};

struct ReflectionReport {
  std::vector<ReflectionPair> pairs;
  bool all_strict = false;  // |flux(x)| < |flux(x')| for every pair
};

// Derivative of J in the offset as the inner-boundary integral of
// (metric flux)^2 <V, n> against the metric arc element, by the trapezoid
// rule over the boundary polyline.
double dJ_boundary(const TorsionSolution& torsion);

// Derivative of lambda1: the same integral with the eigenfunction flux and
// a leading minus sign.
double dLambda_boundary(const EigenSolution& eigen);

// Integral of |flux^2 <V,n>| over the inner loop; the relative scale for
// the t = 0 stationarity tolerance.
double boundary_abs_integral(const TriMesh& mesh, const AnnulusSpec& spec,
                             const Eigen::VectorXd& flux);

// For every inner-boundary node on the far half-domain (positive
// half-plane coordinate with margin 1e-8), pairs the node with its mirror
// point and interpolates |flux| there by arc length along the loop.
ReflectionReport reflection_report(const TriMesh& mesh, const AnnulusSpec& spec,
                                   const Eigen::VectorXd& flux);

// Solves both problems at each offset and at t +- delta for the central
// differences; rows come back in input order.
std::vector<SweepRow> sweep(SpaceForm geom, double r0, double r1,
                            const std::vector<double>& t_values, int level,
                            double delta);

}  // namespace annulab
