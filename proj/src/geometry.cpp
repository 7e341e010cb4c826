#include "annulab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace annulab {

namespace {

double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }

constexpr double kPi = 3.14159265358979323846;

}  // namespace

int curvature(SpaceForm geom) {
  switch (geom) {
    case SpaceForm::Sphere: return 1;
    case SpaceForm::Euclidean: return 0;
    case SpaceForm::Hyperbolic: return -1;
  }
  return 0;
}

const char* to_string(SpaceForm geom) {
  switch (geom) {
    case SpaceForm::Sphere: return "sph";
    case SpaceForm::Euclidean: return "euc";
    case SpaceForm::Hyperbolic: return "hyp";
  }
  return "?";
}

SpaceForm space_form_from_string(const std::string& tag) {
  if (tag == "sph") return SpaceForm::Sphere;
  if (tag == "euc") return SpaceForm::Euclidean;
  if (tag == "hyp") return SpaceForm::Hyperbolic;
  throw std::invalid_argument("unknown geometry tag '" + tag +
                              "' (expected sph|euc|hyp)");
}

void AnnulusSpec::validate() const {
  if (!(r0 > 0.0) || !(r1 > r0))
    throw std::invalid_argument("annulus radii must satisfy 0 < r0 < r1");
  if (geom == SpaceForm::Sphere && !(r1 < kPi))
    throw std::invalid_argument("spherical outer radius must be < pi");
  if (!(std::abs(t) < r1 - r0))
    throw std::invalid_argument(
        "offset must satisfy |t| < r1 - r0 so the inner ball stays inside");
}

double conformal_factor(SpaceForm geom, Vec2 x) {
  double r2 = norm2(x);
  switch (geom) {
    case SpaceForm::Sphere: return 2.0 / (1.0 + r2);
    case SpaceForm::Euclidean: return 1.0;
    case SpaceForm::Hyperbolic:
      if (r2 >= 1.0)
        throw std::domain_error("point outside the Poincare disk");
      return 2.0 / (1.0 - r2);
  }
  return 1.0;
}

double model_radius(SpaceForm geom, double s) {
  switch (geom) {
    case SpaceForm::Sphere:
      if (std::abs(s) >= kPi)
        throw std::domain_error("spherical geodesic radius must be < pi");
      return std::tan(0.5 * s);
    case SpaceForm::Euclidean: return s;
    case SpaceForm::Hyperbolic: return std::tanh(0.5 * s);
  }
  return s;
}

double inverse_model_radius(SpaceForm geom, double rho) {
  switch (geom) {
    case SpaceForm::Sphere: return 2.0 * std::atan(rho);
    case SpaceForm::Euclidean: return rho;
    case SpaceForm::Hyperbolic:
      if (std::abs(rho) >= 1.0)
        throw std::domain_error("chart radius must be < 1 in the disk model");
      return 2.0 * std::atanh(rho);
  }
  return rho;
}

Circle2D geodesic_ball_to_disk(SpaceForm geom, double t, double r) {
  if (!(r > 0.0)) throw std::domain_error("ball radius must be positive");
  double far = model_radius(geom, t + r);   // throws if t + r leaves the chart
  double near = model_radius(geom, t - r);
  return Circle2D{0.5 * (far + near), 0.5 * (far - near)};
}

Vec3 lift_to_ambient(SpaceForm geom, Vec2 x) {
  double r2 = norm2(x);
  switch (geom) {
    case SpaceForm::Sphere: {
      double d = 1.0 + r2;
      return Vec3{2.0 * x.y / d, 2.0 * x.x / d, (1.0 - r2) / d};
    }
    case SpaceForm::Euclidean:
      return Vec3{x.y, x.x, 1.0};
    case SpaceForm::Hyperbolic: {
      if (r2 >= 1.0)
        throw std::domain_error("point outside the Poincare disk");
      double d = 1.0 - r2;
      return Vec3{2.0 * x.y / d, 2.0 * x.x / d, (1.0 + r2) / d};
    }
  }
  return Vec3{};
}

Vec2 project_to_chart(SpaceForm geom, Vec3 p) {
  switch (geom) {
    case SpaceForm::Sphere: {
      double d = 1.0 + p.z;
      if (std::abs(d) < 1e-14)
        throw std::domain_error("point at the chart antipode");
      return Vec2{p.y / d, p.x / d};
    }
    case SpaceForm::Euclidean:
      return Vec2{p.y, p.x};
    case SpaceForm::Hyperbolic: {
      double d = 1.0 + p.z;  // z >= 1 on the upper sheet
      return Vec2{p.y / d, p.x / d};
    }
  }
  return Vec2{};
}

Vec3 axis_velocity(SpaceForm geom, double t) {
  switch (geom) {
    case SpaceForm::Sphere: return Vec3{0.0, std::cos(t), -std::sin(t)};
    case SpaceForm::Euclidean: return Vec3{0.0, 1.0, 0.0};
    case SpaceForm::Hyperbolic: return Vec3{0.0, std::cosh(t), std::sinh(t)};
  }
  return Vec3{};
}

double ambient_inner(SpaceForm geom, Vec3 u, Vec3 v) {
  double zz = u.z * v.z;
  return u.x * v.x + u.y * v.y + (geom == SpaceForm::Hyperbolic ? -zz : zz);
}

double geodesic_distance(SpaceForm geom, Vec2 x, Vec2 y) {
  switch (geom) {
    case SpaceForm::Sphere: {
      Vec3 X = lift_to_ambient(geom, x);
      Vec3 Y = lift_to_ambient(geom, y);
      double c = std::clamp(ambient_inner(geom, X, Y), -1.0, 1.0);
      return std::acos(c);
    }
    case SpaceForm::Euclidean:
      return std::hypot(x.x - y.x, x.y - y.y);
    case SpaceForm::Hyperbolic: {
      double dx2 = (x.x - y.x) * (x.x - y.x) + (x.y - y.y) * (x.y - y.y);
      double den = (1.0 - norm2(x)) * (1.0 - norm2(y));
      if (den <= 0.0)
        throw std::domain_error("point outside the Poincare disk");
      return std::acosh(1.0 + 2.0 * dx2 / den);
    }
  }
  return 0.0;
}

namespace {

void require_on_inner_circle(SpaceForm geom, double t0, double r0, Vec2 x) {
  Vec2 center{model_radius(geom, t0), 0.0};
  double d = geodesic_distance(geom, x, center);
  if (std::abs(d - r0) > kIdentityTol)
    throw InvalidPointError("point is not on the inner boundary circle");
}

}  // namespace

double vn_ambient(SpaceForm geom, double t0, double r0, Vec2 x) {
  require_on_inner_circle(geom, t0, r0, x);
  switch (geom) {
    case SpaceForm::Sphere: {
      Vec3 X = lift_to_ambient(geom, x);
      Vec3 q{0.0, std::sin(t0), std::cos(t0)};
      double c = std::cos(r0), s = std::sin(r0);
      Vec3 n{(q.x - c * X.x) / s, (q.y - c * X.y) / s, (q.z - c * X.z) / s};
      Vec3 V{0.0, X.z, -X.y};
      return ambient_inner(geom, V, n);
    }
    case SpaceForm::Euclidean:
      return (t0 - x.x) / r0;
    case SpaceForm::Hyperbolic: {
      Vec3 X = lift_to_ambient(geom, x);
      Vec3 q{0.0, std::sinh(t0), std::cosh(t0)};
      double c = std::cosh(r0), s = std::sinh(r0);
      Vec3 n{(q.x - c * X.x) / s, (q.y - c * X.y) / s, (q.z - c * X.z) / s};
      Vec3 V{0.0, X.z, X.y};
      return ambient_inner(geom, V, n);
    }
  }
  return 0.0;
}

double cos_beta(SpaceForm geom, double t0, double r0, Vec2 x) {
  if (t0 <= 0.0)
    throw DegenerateConfigError(
        "cos_beta is degenerate at t0 <= 0; use vn_ambient");
  require_on_inner_circle(geom, t0, r0, x);
  double a = geodesic_distance(geom, Vec2{0.0, 0.0}, x);
  switch (geom) {
    case SpaceForm::Sphere:
      return (std::cos(a) - std::cos(t0) * std::cos(r0)) /
             (std::sin(t0) * std::sin(r0));
    case SpaceForm::Euclidean:
      return (t0 * t0 + r0 * r0 - a * a) / (2.0 * t0 * r0);
    case SpaceForm::Hyperbolic:
      return (std::cosh(t0) * std::cosh(r0) - std::cosh(a)) /
             (std::sinh(t0) * std::sinh(r0));
  }
  return 0.0;
}

double half_plane_coord(SpaceForm geom, double t0, Vec2 x) {
  if (geom == SpaceForm::Euclidean) return x.x - t0;
  return ambient_inner(geom, lift_to_ambient(geom, x), axis_velocity(geom, t0));
}

Vec2 reflect(SpaceForm geom, double t0, Vec2 x) {
  if (geom == SpaceForm::Euclidean) return Vec2{2.0 * t0 - x.x, x.y};
  Vec3 X = lift_to_ambient(geom, x);
  Vec3 nu = axis_velocity(geom, t0);  // spacelike unit normal of the mirror
  double c = 2.0 * ambient_inner(geom, X, nu);
  return project_to_chart(
      geom, Vec3{X.x - c * nu.x, X.y - c * nu.y, X.z - c * nu.z});
}

Vec2 MobiusMap::apply(Vec2 z) const {
  if (identity) return z;
  std::complex<double> zc(z.x, z.y);
  std::complex<double> w = scale * (zc - a) / (zc - b);
  return Vec2{w.real(), w.imag()};
}

Vec2 MobiusMap::inverse(Vec2 w) const {
  if (identity) return w;
  std::complex<double> wc(w.x, w.y);
  std::complex<double> z = (b * wc - scale * a) / (wc - scale);
  return Vec2{z.real(), z.imag()};
}

ConcentricImage mobius_concentricize(Circle2D outer, Circle2D inner) {
  if (!(inner.radius > 0.0) || !(outer.radius > 0.0))
    throw GeometryError("circles must have positive radii");
  double gap = outer.radius - inner.radius - std::abs(inner.center - outer.center);
  if (!(gap > 0.0))
    throw GeometryError("inner circle must lie strictly inside the outer one");

  double c0 = inner.center, R0 = inner.radius;
  double c1 = outer.center, R1 = outer.radius;

  if (std::abs(c0 - c1) < 1e-14 * R1) {
    ConcentricImage out;
    out.map = MobiusMap{};  // identity
    out.rho0 = R0;
    out.rho1 = R1;
    return out;
  }

  // Common inverse points a, b: (a - c)(b - c) = R^2 for both circles.
  double sum = ((c1 * c1 - R1 * R1) - (c0 * c0 - R0 * R0)) / (c1 - c0);
  double prod = c0 * sum - c0 * c0 + R0 * R0;
  double disc = sum * sum - 4.0 * prod;
  if (!(disc > 0.0))
    throw GeometryError("circle pair has no real common inverse points");
  double big = 0.5 * (sum + std::copysign(std::sqrt(disc), sum));
  double ra = prod / big;
  double rb = big;
  if (std::abs(ra - c0) > std::abs(rb - c0)) std::swap(ra, rb);

  // ra inside the inner circle, rb outside the outer one.
  if (!(std::abs(ra - c0) < R0) || !(std::abs(rb - c1) > R1))
    throw GeometryError("inverse-point selection failed; circles degenerate");

  MobiusMap map;
  map.a = ra;
  map.b = rb;
  map.scale = 1.0;
  map.identity = false;

  auto image_radius = [&map](const Circle2D& c) {
    return std::abs(map.apply(Vec2{c.center + c.radius, 0.0}).x);
  };
  ConcentricImage out;
  out.map = map;
  out.rho0 = image_radius(inner);
  out.rho1 = image_radius(outer);
  if (!(out.rho0 < out.rho1))
    throw GeometryError("concentricized image lost circle nesting");
  return out;
}

}  // namespace annulab
