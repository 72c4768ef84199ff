#include "hypspec/geometry.hpp"

#include <cmath>

namespace hypspec {

double sn(double kappa, double r) {
  if (r <= 0.0) throw std::domain_error("sn: r must be positive");
  if (kappa == 0.0) return r;
  if (kappa < 0.0) {
    const double s = std::sqrt(-kappa);
    return std::sinh(s * r) / s;
  }
  const double s = std::sqrt(kappa);
  return std::sin(s * r) / s;
}

double hessian_ratio(double kappa, double r) {
  if (r <= 0.0) throw std::domain_error("hessian_ratio: r must be positive");
  if (kappa > 0.0) throw std::domain_error("hessian_ratio: kappa must be <= 0");
  if (kappa == 0.0) return 1.0 / r;
  const double s = std::sqrt(-kappa);
  const double x = s * r;
  if (x < 1e-4) {
    // coth(x) = 1/x + x/3 - x^3/45 + ..., avoids cancellation near 0
    return s * (1.0 / x + x / 3.0 - x * x * x / 45.0);
  }
  return s / std::tanh(x);
}

ComparisonValue box_r_bounds(int n, double eps, double delta,
                             const CurvaturePinch& pinch, double r) {
  if (n < 2) throw std::domain_error("box_r_bounds: n must be >= 2");
  if (!(eps > 0.0 && eps <= delta))
    throw std::domain_error("box_r_bounds: need 0 < eps <= delta");
  if (r <= 0.0) throw std::domain_error("box_r_bounds: r must be positive");
  const double lo =
      (n - 1) * eps * hessian_ratio(-pinch.kappa2 * pinch.kappa2, r);
  const double hi =
      (n - 1) * delta * hessian_ratio(-pinch.kappa1 * pinch.kappa1, r);
  return {lo, hi};
}

double a_const(int n, double eps, double delta) {
  if (n < 2) throw std::domain_error("a_const: n must be >= 2");
  if (!(eps > 0.0 && eps <= delta))
    throw std::domain_error("a_const: need 0 < eps <= delta");
  const double m = n - 1;
  return -m * m * eps * eps + 2.0 * m * delta * delta;
}

double hyperbolic_distance(const HalfPlanePoint& p, const HalfPlanePoint& q,
                           double kappa) {
  if (p.y <= 0.0 || q.y <= 0.0)
    throw std::domain_error("hyperbolic_distance: points need y > 0");
  if (kappa <= 0.0)
    throw std::domain_error("hyperbolic_distance: kappa must be positive");
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double c = 1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y);
  // curvature -kappa^2 scales all distances of the unit model by 1/kappa
  return std::acosh(c) / kappa;
}

}  // namespace hypspec
