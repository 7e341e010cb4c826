#include "annulab/shape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace annulab {

namespace {

constexpr double kHalfPlaneMargin = 1e-8;

double loop_trapezoid(const TriMesh& mesh, const AnnulusSpec& spec,
                      const Eigen::VectorXd& flux, bool absolute) {
  const auto& loop = mesh.inner_boundary;
  const int n = static_cast<int>(loop.size());
  std::vector<double> integrand(n);
  for (int k = 0; k < n; ++k) {
    Vec2 p = mesh.nodes[loop[k]];
    double vn = vn_ambient(spec.geom, spec.t, spec.r0, p);
    double v = flux[k] * flux[k] * vn * conformal_factor(spec.geom, p);
    integrand[k] = absolute ? std::abs(v) : v;
  }
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    Vec2 a = mesh.nodes[loop[k]], b = mesh.nodes[loop[(k + 1) % n]];
    double h = std::hypot(b.x - a.x, b.y - a.y);
    total += 0.5 * (integrand[k] + integrand[(k + 1) % n]) * h;
  }
  return total;
}

// Piecewise-linear interpolation of values given at the loop nodes, in the
// angular parameter about the inner-circle center (arc length / radius on
// an exact circle).
class LoopInterpolant {
 public:
  LoopInterpolant(const TriMesh& mesh, const Eigen::VectorXd& values) {
    const auto& loop = mesh.inner_boundary;
    const double cx = mesh.inner_circle.center;
    samples_.reserve(loop.size() + 1);
    for (size_t k = 0; k < loop.size(); ++k) {
      Vec2 p = mesh.nodes[loop[k]];
      samples_.push_back({std::atan2(p.y, p.x - cx), values[k]});
    }
    std::sort(samples_.begin(), samples_.end());
    // wrap-around segment
    samples_.push_back({samples_.front().first + 2.0 * M_PI,
                        samples_.front().second});
    center_ = cx;
  }

  double operator()(Vec2 p) const {
    double ang = std::atan2(p.y, p.x - center_);
    if (ang < samples_.front().first) ang += 2.0 * M_PI;
    auto it = std::upper_bound(samples_.begin(), samples_.end(),
                               std::make_pair(ang, 0.0),
                               [](const auto& a, const auto& b) {
                                 return a.first < b.first;
                               });
    if (it == samples_.end()) --it;  // query exactly at the wrap angle
    if (it == samples_.begin())
      throw std::logic_error("loop interpolation parameter out of range");
    auto lo = *(it - 1);
    auto hi = *it;
    double w = std::clamp((ang - lo.first) / (hi.first - lo.first), 0.0, 1.0);
    return (1.0 - w) * lo.second + w * hi.second;
  }

 private:
  std::vector<std::pair<double, double>> samples_;
  double center_ = 0.0;
};

}  // namespace

double dJ_boundary(const TorsionSolution& torsion) {
  return loop_trapezoid(torsion.mesh, torsion.spec, torsion.inner_flux.values,
                        false);
}

double dLambda_boundary(const EigenSolution& eigen) {
  return -loop_trapezoid(eigen.mesh, eigen.spec, eigen.inner_flux.values,
                         false);
}

double boundary_abs_integral(const TriMesh& mesh, const AnnulusSpec& spec,
                             const Eigen::VectorXd& flux) {
  return loop_trapezoid(mesh, spec, flux, true);
}

ReflectionReport reflection_report(const TriMesh& mesh, const AnnulusSpec& spec,
                                   const Eigen::VectorXd& flux) {
  if (!(spec.t > 0.0))
    throw DegenerateConfigError(
        "reflection pairing needs a strictly positive offset");

  Eigen::VectorXd flux_abs = flux.cwiseAbs();
  LoopInterpolant interp(mesh, flux_abs);

  ReflectionReport report;
  report.all_strict = true;
  const auto& loop = mesh.inner_boundary;
  for (size_t k = 0; k < loop.size(); ++k) {
    Vec2 x = mesh.nodes[loop[k]];
    if (half_plane_coord(spec.geom, spec.t, x) <= kHalfPlaneMargin) continue;

    Vec2 xr = reflect(spec.geom, spec.t, x);
    double outer_dist = std::hypot(xr.x - mesh.outer_circle.center, xr.y);
    if (!(outer_dist < mesh.outer_circle.radius))
      throw std::logic_error("reflected boundary point left the outer ball");

    ReflectionPair pair;
    pair.x = x;
    pair.x_reflected = xr;
    pair.flux_abs_x = flux_abs[k];
    pair.flux_abs_reflected = interp(xr);
    pair.cos_beta_x = cos_beta(spec.geom, spec.t, spec.r0, x);
    if (!(pair.flux_abs_x < pair.flux_abs_reflected)) report.all_strict = false;
    report.pairs.push_back(pair);
  }
  return report;
}

std::vector<SweepRow> sweep(SpaceForm geom, double r0, double r1,
                            const std::vector<double>& t_values, int level,
                            double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("fd step must be positive");
  for (double t : t_values) {
    AnnulusSpec margin{geom, r0, r1, 0.0};
    margin.validate();
    if (!(std::abs(t) + delta < r1 - r0))
      throw std::invalid_argument(
          "sweep offsets must keep a fd-step margin inside |t| < r1 - r0");
  }

  std::vector<SweepRow> rows;
  rows.reserve(t_values.size());
  for (double t : t_values) {
    try {
      AnnulusSpec spec{geom, r0, r1, t};
      TorsionSolution ts = solve_torsion(spec, level);
      EigenSolution es = solve_eigen(spec, level);

      SweepRow row;
      row.geom = geom;
      row.r0 = r0;
      row.r1 = r1;
      row.t = t;
      row.level = level;
      row.J = ts.J;
      row.lambda1 = es.lambda1;
      row.dJ_bnd = dJ_boundary(ts);
      row.dJ_vol = solve_shape_bvp(ts).dJ_vol;
      row.dlam_bnd = dLambda_boundary(es);

      AnnulusSpec plus{geom, r0, r1, t + delta};
      AnnulusSpec minus{geom, r0, r1, t - delta};
      row.dJ_fd = (solve_torsion(plus, level).J - solve_torsion(minus, level).J) /
                  (2.0 * delta);
      row.dlam_fd = (solve_eigen(plus, level).lambda1 -
                     solve_eigen(minus, level).lambda1) /
                    (2.0 * delta);
      rows.push_back(row);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep failed at t = " + std::to_string(t) +
                               ": " + e.what());
    }
  }
  return rows;
}

}  // namespace annulab
