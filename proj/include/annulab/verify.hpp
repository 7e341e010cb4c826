#pragma once

#include <functional>
#include <string>
#include <vector>

#include "annulab/oracle.hpp"
#include "annulab/shape.hpp"

namespace annulab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured value vs threshold, human readable
};

bool all_passed(const std::vector<CheckResult>& results);

// Errors of one refinement level against the concentric radial oracles.
struct ConvergenceRow {
  int level = 0;
  double h_max = 0.0;
  double err_J = 0.0;
  double err_lambda = 0.0;
  double err_point = 0.0;          // u at the mid-annulus probe radius
  double err_flux = 0.0;           // max nodal metric-flux error at r0
  double max_nodal_rel_err = 0.0;  // max |y - u| / max u over nodes
  double torsion_seconds = 0.0;
  double eigen_seconds = 0.0;
};

struct ConvergenceStudy {
  SpaceForm geom = SpaceForm::Euclidean;
  double r0 = 0.0;
  double r1 = 0.0;
  bool with_torsion = true;
  bool with_eigen = true;
  std::vector<ConvergenceRow> rows;
  double order_J = 0.0;
  double order_lambda = 0.0;
  double order_point = 0.0;
  double order_flux = 0.0;
  double order_nodal = 0.0;
};

ConvergenceStudy convergence_study(SpaceForm geom, double r0, double r1,
                                   int level_min, int level_max,
                                   bool with_torsion = true,
                                   bool with_eigen = true);

// Least-squares halving rate of a per-level error sequence: error ~ 2^(-p L)
// yields p.
double fitted_order(const std::vector<double>& errors);

// P1 interpolation of nodal values at an arbitrary chart point.
double interpolate(const TriMesh& mesh, const Eigen::VectorXd& nodal, Vec2 p);

// Max deviation between the trigonometric normal-velocity form and the
// ambient inner-product form over sampled inner-circle points and offsets.
// The trig form is injectable so that a corrupted variant is caught by the
// same check that certifies the identity.
using TrigForm = std::function<double(SpaceForm, double, double, Vec2)>;
double normal_velocity_max_deviation(SpaceForm geom, double r0,
                                     const std::vector<double>& offsets,
                                     int samples, const TrigForm& trig = {});

// Strict-negativity check for a recovered boundary flux (the Hopf sign law).
CheckResult flux_sign_check(const std::string& name,
                            const Eigen::VectorXd& flux);

struct VerifyOptions {
  int level = 3;      // working level for sweeps and single checks
  int level_min = 2;  // convergence range
  int level_max = 5;
  double delta = 1e-3;
};

// The full invariant suite on canonical parameters for all three
// geometries: oracle agreement and convergence orders, monotonicity of J
// and lambda1 in the offset, stationarity and evenness at t = 0, the
// boundary-derivative cross-checks, the normal-velocity identity, flux
// sign laws, and the reflection inequality.
std::vector<CheckResult> run_verify(const VerifyOptions& opts = {});

}  // namespace annulab
