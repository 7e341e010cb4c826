#include "annulab/oracle.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace annulab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sn(SpaceForm geom, double r) {
  switch (geom) {
    case SpaceForm::Sphere: return std::sin(r);
    case SpaceForm::Euclidean: return r;
    case SpaceForm::Hyperbolic: return std::sinh(r);
  }
  return r;
}

void check_radii(SpaceForm geom, double r0, double r1) {
  if (!(r0 > 0.0) || !(r1 > r0))
    throw std::domain_error("radial oracle needs 0 < r0 < r1");
  if (geom == SpaceForm::Sphere && !(r1 < kPi))
    throw std::domain_error("spherical radial oracle needs r1 < pi");
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

struct ShotEnd {
  double phi = 0.0;
  double psi = 0.0;  // psi = sn * phi'
};

// RK4 integration of phi' = psi / sn, psi' = -lambda sn phi from
// phi(r0) = 0, phi'(r0) = 1; optionally records the phi trajectory for the
// normalization integral.
ShotEnd shoot(SpaceForm geom, double r0, double r1, double lambda, int steps,
              std::vector<double>* trajectory) {
  double h = (r1 - r0) / steps;
  double phi = 0.0, psi = sn(geom, r0);
  if (trajectory) {
    trajectory->clear();
    trajectory->reserve(steps + 1);
    trajectory->push_back(phi);
  }
  auto f = [&](double r, double p, double q, double& dp, double& dq) {
    double s = sn(geom, r);
    dp = q / s;
    dq = -lambda * s * p;
  };
  for (int k = 0; k < steps; ++k) {
    double r = r0 + k * h;
    double k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q;
    f(r, phi, psi, k1p, k1q);
    f(r + 0.5 * h, phi + 0.5 * h * k1p, psi + 0.5 * h * k1q, k2p, k2q);
    f(r + 0.5 * h, phi + 0.5 * h * k2p, psi + 0.5 * h * k2q, k3p, k3q);
    f(r + h, phi + h * k3p, psi + h * k3q, k4p, k4q);
    phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    psi += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    if (trajectory) trajectory->push_back(phi);
  }
  return ShotEnd{phi, psi};
}

constexpr int kShootSteps = 10000;

double shooting_lambda1(SpaceForm geom, double r0, double r1) {
  // Scan in steps well below the eigenvalue gap so the bracket holds the
  // FIRST sign change of phi(r1), then bisect.
  double scale = kPi * kPi / ((r1 - r0) * (r1 - r0));
  double step = 0.2 * scale;
  double lo = 1e-12;
  if (!(shoot(geom, r0, r1, lo, kShootSteps, nullptr).phi > 0.0))
    throw OracleError("shooting start value not positive");
  double hi = step;
  int guard = 0;
  while (shoot(geom, r0, r1, hi, kShootSteps, nullptr).phi > 0.0) {
    lo = hi;
    hi += step;
    if (++guard > 1000)
      throw OracleError("failed to bracket the first eigenvalue");
  }
  while (hi - lo > 1e-9 * hi) {
    double mid = 0.5 * (lo + hi);
    if (shoot(geom, r0, r1, mid, kShootSteps, nullptr).phi > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Independent 1-D P1 finite-element check on a uniform grid: smallest
// eigenvalue of the tridiagonal pencil K phi = lambda M phi by inverse
// iteration with a Thomas solve.
double fem1d_lambda1(SpaceForm geom, double r0, double r1, int intervals) {
  int n = intervals - 1;  // interior nodes
  double h = (r1 - r0) / intervals;
  std::vector<double> kd(n, 0.0), ko(n - 1, 0.0), md(n, 0.0), mo(n - 1, 0.0);
  for (int e = 0; e < intervals; ++e) {
    double mid = r0 + (e + 0.5) * h;
    double s = sn(geom, mid);
    double kloc = s / h, mloc = s * h;
    int i = e - 1, j = e;  // interior indices of the element ends
    if (i >= 0) { kd[i] += kloc; md[i] += mloc / 3.0; }
    if (j < n) { kd[j] += kloc; md[j] += mloc / 3.0; }
    if (i >= 0 && j < n) { ko[i] -= kloc; mo[i] += mloc / 6.0; }
  }

  auto thomas = [&](const std::vector<double>& b) {
    std::vector<double> c(n - 1), d(n), x(n);
    c[0] = ko[0] / kd[0];
    d[0] = b[0] / kd[0];
    for (int i = 1; i < n; ++i) {
      double m = kd[i] - ko[i - 1] * c[i - 1];
      if (i < n - 1) c[i] = ko[i] / m;
      d[i] = (b[i] - ko[i - 1] * d[i - 1]) / m;
    }
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    return x;
  };
  auto mul_m = [&](const std::vector<double>& v) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
      w[i] = md[i] * v[i];
      if (i > 0) w[i] += mo[i - 1] * v[i - 1];
      if (i < n - 1) w[i] += mo[i] * v[i + 1];
    }
    return w;
  };
  auto mul_k = [&](const std::vector<double>& v) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
      w[i] = kd[i] * v[i];
      if (i > 0) w[i] += ko[i - 1] * v[i - 1];
      if (i < n - 1) w[i] += ko[i] * v[i + 1];
    }
    return w;
  };
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };

  std::vector<double> u(n, 1.0);
  double lambda = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<double> w = thomas(mul_m(u));
    double nm = std::sqrt(dot(w, mul_m(w)));
    for (int i = 0; i < n; ++i) w[i] /= nm;
    double lam = dot(w, mul_k(w));
    bool done = std::abs(lam - lambda) <= 1e-12 * lam && iter > 2;
    lambda = lam;
    u = std::move(w);
    if (done) return lambda;
  }
  throw OracleError("1-D eigensolve did not converge");
}

}  // namespace

double RadialTorsion::value(double r) const {
  switch (geom) {
    case SpaceForm::Sphere:
      return std::log(std::sin(r)) + C * std::log(std::tan(0.5 * r)) + D;
    case SpaceForm::Euclidean:
      return -0.25 * r * r + C * std::log(r) + D;
    case SpaceForm::Hyperbolic:
      return -std::log(std::sinh(r)) + C * std::log(std::tanh(0.5 * r)) + D;
  }
  return 0.0;
}

double RadialTorsion::derivative(double r) const {
  switch (geom) {
    case SpaceForm::Sphere:
      return (std::cos(r) + C) / std::sin(r);
    case SpaceForm::Euclidean:
      return -0.5 * r + C / r;
    case SpaceForm::Hyperbolic:
      return (-std::cosh(r) + C) / std::sinh(r);
  }
  return 0.0;
}

double RadialTorsion::second_derivative(double r) const {
  switch (geom) {
    case SpaceForm::Sphere: {
      double s = std::sin(r);
      return -(1.0 + C * std::cos(r)) / (s * s);
    }
    case SpaceForm::Euclidean:
      return -0.5 - C / (r * r);
    case SpaceForm::Hyperbolic: {
      double s = std::sinh(r);
      return (1.0 - C * std::cosh(r)) / (s * s);
    }
  }
  return 0.0;
}

RadialTorsion radial_torsion(SpaceForm geom, double r0, double r1) {
  check_radii(geom, r0, r1);
  RadialTorsion rt;
  rt.geom = geom;
  rt.r0 = r0;
  rt.r1 = r1;
  // f(r) + C g(r) + D = 0 at both radii
  auto f = [geom](double r) {
    switch (geom) {
      case SpaceForm::Sphere: return std::log(std::sin(r));
      case SpaceForm::Euclidean: return -0.25 * r * r;
      case SpaceForm::Hyperbolic: return -std::log(std::sinh(r));
    }
    return 0.0;
  };
  auto g = [geom](double r) {
    switch (geom) {
      case SpaceForm::Sphere: return std::log(std::tan(0.5 * r));
      case SpaceForm::Euclidean: return std::log(r);
      case SpaceForm::Hyperbolic: return std::log(std::tanh(0.5 * r));
    }
    return 0.0;
  };
  rt.C = -(f(r1) - f(r0)) / (g(r1) - g(r0));
  rt.D = -f(r0) - rt.C * g(r0);
  return rt;
}

double radial_J(SpaceForm geom, double r0, double r1) {
  RadialTorsion rt = radial_torsion(geom, r0, r1);
  return 2.0 * kPi *
         integrate([&](double r) { return rt.value(r) * sn(geom, r); }, r0, r1,
                   1e-10 / (2.0 * kPi));
}

double radial_lambda1(SpaceForm geom, double r0, double r1) {
  check_radii(geom, r0, r1);
  double lambda = shooting_lambda1(geom, r0, r1);
  double check = fem1d_lambda1(geom, r0, r1, 10000);
  if (std::abs(lambda - check) > 1e-6 * lambda)
    throw OracleError("radial eigenvalue cross-check disagrees: shooting " +
                      std::to_string(lambda) + " vs 1-D FEM " +
                      std::to_string(check));
  return lambda;
}

RadialEigen radial_eigen(SpaceForm geom, double r0, double r1) {
  RadialEigen out;
  out.lambda = radial_lambda1(geom, r0, r1);

  std::vector<double> phi;
  ShotEnd end = shoot(geom, r0, r1, out.lambda, kShootSteps, &phi);
  double h = (r1 - r0) / kShootSteps;
  // Simpson on the uniform trajectory for \int phi^2 sn dr
  double integral = 0.0;
  for (int k = 0; k + 2 <= kShootSteps; k += 2) {
    auto term = [&](int i) {
      double r = r0 + i * h;
      return phi[i] * phi[i] * sn(geom, r);
    };
    integral += h / 3.0 * (term(k) + 4.0 * term(k + 1) + term(k + 2));
  }
  double norm = std::sqrt(2.0 * kPi * integral);
  if (!(norm > 0.0)) throw OracleError("eigenfunction normalization failed");
  // phi'(r0) = 1 by the shooting initial data; phi'(r1) from psi = sn phi'.
  out.dphi_r0 = 1.0 / norm;
  out.dphi_r1 = end.psi / sn(geom, r1) / norm;
  return out;
}

}  // namespace annulab
