#pragma once

#include <stdexcept>
#include <string>

namespace annulab {

// Constant-curvature 2-D geometries: unit sphere, Euclidean plane, and the
// hyperbolic plane of curvature -1. Each is realized on a planar conformal
// chart (stereographic projection for the sphere, Poincare disk for the
// hyperbolic plane) so that geodesic circles are Euclidean circles.
enum class SpaceForm { Sphere, Euclidean, Hyperbolic };

int curvature(SpaceForm geom);                 // +1 / 0 / -1
const char* to_string(SpaceForm geom);         // "sph" / "euc" / "hyp"
SpaceForm space_form_from_string(const std::string& tag);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Tolerances for the geometric identity checks. Single place of definition:
// kIdentityTol guards trigonometric identities and on-circle tests,
// kAlgebraicTol guards exact algebraic relations (involutions, inverses).
inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kAlgebraicTol = 1e-12;

struct DegenerateConfigError : std::domain_error {
  using std::domain_error::domain_error;
};
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidPointError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Eccentric geodesic annulus B(p, r1) \ closure(B(q(t), r0)), with p at the
// chart origin and the inner center moved a signed geodesic distance t along
// the model x-axis.
struct AnnulusSpec {
  SpaceForm geom = SpaceForm::Euclidean;
  double r0 = 0.0;
  double r1 = 0.0;
  double t = 0.0;

  // Throws std::invalid_argument unless 0 < r0 < r1, |t| < r1 - r0, and
  // r1 < pi on the sphere.
  void validate() const;
};

// Euclidean circle in the chart, centered on the x-axis.
struct Circle2D {
  double center = 0.0;  // abscissa of the center
  double radius = 0.0;
};

// w = scale * (z - a) / (z - b) with real a, b and positive scale, acting on
// the chart plane. The identity flag covers the concentric case (b would be
// at infinity).
struct MobiusMap {
  double a = 0.0;
  double b = 0.0;
  double scale = 1.0;
  bool identity = true;

  Vec2 apply(Vec2 z) const;
  Vec2 inverse(Vec2 w) const;
};

struct ConcentricImage {
  MobiusMap map;
  double rho0 = 0.0;  // image radius of the inner circle
  double rho1 = 0.0;  // image radius of the outer circle
};

// Conformal factor lambda of the chart metric lambda^2 (dx^2 + dy^2).
// dV = lambda^2 dx dy, dS = lambda dl, metric normal derivative =
// (Euclidean normal derivative) / lambda.
double conformal_factor(SpaceForm geom, Vec2 x);

// Euclidean chart radius of the geodesic sphere of radius s about the
// origin: tan(s/2), s, tanh(s/2). Strictly increasing, m(0) = 0.
double model_radius(SpaceForm geom, double s);
double inverse_model_radius(SpaceForm geom, double rho);

// Chart image of the geodesic ball of radius r centered on the axis at
// geodesic distance t from the origin.
Circle2D geodesic_ball_to_disk(SpaceForm geom, double t, double r);

double geodesic_distance(SpaceForm geom, Vec2 x, Vec2 y);

// Isometric embedding: sphere into R^3, hyperbolic plane onto the upper
// hyperboloid x1^2 + x2^2 - x3^2 = -1, Euclidean plane onto {x3 = 1}.
// The chart origin lifts to (0,0,1) and the axis point at geodesic
// distance t lifts to q(t) = (0, sin t, cos t) resp. (0, sinh t, cosh t)
// resp. (0, t, 1).
Vec3 lift_to_ambient(SpaceForm geom, Vec2 x);
Vec2 project_to_chart(SpaceForm geom, Vec3 p);

// Derivative q'(t) of the axis curve in the ambient space; the normal of
// the reflection hyperplane and the generator of the sweep field V.
Vec3 axis_velocity(SpaceForm geom, double t);

// Ambient inner product: Euclidean for the sphere and the plane, Minkowski
// (+,+,-) for the hyperboloid.
double ambient_inner(SpaceForm geom, Vec3 u, Vec3 v);

// Normal velocity <V, n> at a point x of the inner boundary circle, where V
// generates the sweep of the inner center along the axis and n is the unit
// normal pointing out of the annulus (into the inner ball). Total in t0,
// including t0 = 0 and t0 < 0. Throws InvalidPointError unless x lies on
// the inner circle to within kIdentityTol.
double vn_ambient(SpaceForm geom, double t0, double r0, Vec2 x);

// cos of the angle at the inner center in the geodesic triangle
// [origin, inner center, x], by the law of cosines of the geometry.
// Equals vn_ambient on the inner circle; degenerate at t0 = 0
// (DegenerateConfigError) where vn_ambient must be used instead.
double cos_beta(SpaceForm geom, double t0, double r0, Vec2 x);

// Signed coordinate whose positive side is the open half-domain beyond the
// hyperplane through the inner center perpendicular to the axis. Positive
// exactly where cos_beta < 0.
double half_plane_coord(SpaceForm geom, double t0, Vec2 x);

// Reflection across the geodesic through the inner center perpendicular to
// the axis: involution fixing the inner center; maps the axis point at
// distance t0 + s to the one at t0 - s and the inner circle to itself.
Vec2 reflect(SpaceForm geom, double t0, Vec2 x);

// Mobius map sending a strictly nested pair of x-axis-centered circles to
// circles centered at the origin, built from the two common inverse points
// of the pair. Concentric input yields the identity map. Throws
// GeometryError for intersecting, tangent, or non-nested input.
ConcentricImage mobius_concentricize(Circle2D outer, Circle2D inner);

}  // namespace annulab
