#pragma once

#include <stdexcept>

namespace hypspec {

/// Curvature pinching -kappa1^2 <= K <= -kappa2^2, both stored as
/// nonnegative magnitudes with 0 <= kappa2 <= kappa1.
struct CurvaturePinch {
  double kappa1 = 1.0;
  double kappa2 = 1.0;

  CurvaturePinch(double k1, double k2) : kappa1(k1), kappa2(k2) {
    if (k1 < 0.0 || k2 < 0.0 || k2 > k1)
      throw std::domain_error("CurvaturePinch: need 0 <= kappa2 <= kappa1");
  }
};

/// A two-sided comparison bound, lo <= hi.
struct ComparisonValue {
  double lo;
  double hi;
};

/// Point in the upper half-plane model, y > 0.
struct HalfPlanePoint {
  double x;
  double y;
};

/// Solution of x'' + kappa x = 0, x(0)=0, x'(0)=1, evaluated at r > 0.
/// For kappa < 0 this is sinh(sqrt(-kappa) r)/sqrt(-kappa); for kappa = 0
/// it is r.
double sn(double kappa, double r);

/// sn'_kappa(r)/sn_kappa(r) for kappa <= 0: sqrt(-kappa) coth(sqrt(-kappa) r),
/// or 1/r at kappa = 0. Strictly decreasing in r, blows up as r -> 0+.
double hessian_ratio(double kappa, double r);

/// Two-sided bound for the tensor-weighted Laplacian of the distance
/// function at radius r under the given pinching and coefficient bounds:
///   lo = (n-1) eps (sn'/sn)(-kappa2^2, r),
///   hi = (n-1) delta (sn'/sn)(-kappa1^2, r).
ComparisonValue box_r_bounds(int n, double eps, double delta,
                             const CurvaturePinch& pinch, double r);

/// Dimension/coefficient constant -(n-1)^2 eps^2 + 2(n-1) delta^2.
/// Positive for n = 2 with eps = delta, nonpositive for n >= 3.
double a_const(int n, double eps, double delta);

/// Geodesic distance between two points of the half-plane model with
/// curvature -kappa^2.
double hyperbolic_distance(const HalfPlanePoint& p, const HalfPlanePoint& q,
                           double kappa);

}  // namespace hypspec
