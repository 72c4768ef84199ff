#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "hypspec/geometry.hpp"

namespace hypspec {

/// Scalar field on a 2-D parameter rectangle, with optional analytic
/// partials. Missing derivatives fall back to centered differences.
struct ScalarField {
  using Fn = std::function<double(double, double)>;

  Fn value;
  Fn d1{};   // partial in the first (radial) coordinate
  Fn d2{};   // partial in the second coordinate
  Fn d11{};
  Fn d22{};
  double fd_step = 1e-5;

  double v(double u, double w) const { return value(u, w); }
  double du(double u, double w) const;
  double dv(double u, double w) const;
  double duu(double u, double w) const;
  double dvv(double u, double w) const;
};

ScalarField constant_field(double c);

/// Coefficient tensor T = phi I with certified bounds eps <= phi <= delta.
struct TensorSpec {
  ScalarField phi;
  double eps;
  double delta;
  bool radially_parallel = true;
};

/// Drifting function eta; radial derivatives are taken in the first
/// coordinate of the parameterization.
struct DriftSpec {
  ScalarField eta;

  double radial_d1(double u, double v) const { return eta.du(u, v); }
  double radial_d2(double u, double v) const { return eta.duu(u, v); }
};

DriftSpec constant_drift();

/// phi(r,theta) = sin(theta), the wedge coefficient with eps = sqrt(3)/2,
/// delta = 1 on (pi/3, 2pi/3).
TensorSpec tensor_sin_theta();
TensorSpec tensor_const(double c);

/// eta(r,theta) = -2 ln(1 - ln tan(theta/2)), an angular drift solving the
/// gap-preserving equation for radially constant phi = sin(theta).
DriftSpec drift_log_tan_theta();
/// eta(r,theta) = -2 ln(pi - ell ln r), the radial counterpart.
DriftSpec drift_log_radial(double ell);
/// eta = (c/2) r^2, the quadratic radial drift used on annuli.
DriftSpec drift_quadratic_radial(double c);
/// eta = -2 ln r, solving 2 eta'' - eta'^2 = 0.
DriftSpec drift_log_r();

struct Wedge {
  double ell;
  double theta0;
  double theta1;
  TensorSpec tensor;

  double theta_star() const;
  double r_inner() const { return 1.0; }
  double r_outer() const;  // e^(pi/ell)
};

struct Annulus {
  int n;
  double kappa1;
  double c;
  double R;
  double alpha;
  double inner;  // sqrt((2(n-1)(kappa1+alpha)R + 2)/c)
};

struct Ball {
  int n;
  double kappa;
  double a;
  int angular_mode;
};

struct Rectangle {
  double u0, u1, v0, v1;
};

struct Disk {
  double radius;
};

struct Model {
  enum class Kind { Euclidean, Hyperbolic };
  Kind kind = Kind::Euclidean;
  double kappa = 0.0;  // hyperbolic curvature magnitude

  static Model euclidean() { return {Kind::Euclidean, 0.0}; }
  static Model hyperbolic(double kappa) { return {Kind::Hyperbolic, kappa}; }
};

struct DomainSpec {
  std::variant<Wedge, Annulus, Ball, Rectangle, Disk> variant;
  Model model;
  double origin_distance = 0.0;  // dist(domain, base point), when fixed
};

/// Thrown when a domain constraint fails; carries the constraint name and
/// both sides of the violated inequality.
class ConstraintViolation : public std::runtime_error {
 public:
  ConstraintViolation(std::string name, double lhs, double rhs);
  const std::string& constraint() const { return name_; }
  double lhs() const { return lhs_; }
  double rhs() const { return rhs_; }

 private:
  std::string name_;
  double lhs_, rhs_;
};

/// Validated wedge {1 < r < e^(pi/ell), theta0 < theta < theta1} in the
/// half-plane of curvature -1. Enforces theta_star > pi/6, eps > delta/4
/// and the admissibility bound on ell^2.
DomainSpec make_wedge(double ell, double theta0, double theta1,
                      const TensorSpec& tensor);

/// Annulus with inner radius sqrt((2(n-1)(kappa1+alpha)R + 2)/c) and outer
/// radius R; requires cR > (n-1)(kappa1+alpha) +
/// sqrt((n-1)^2(kappa1+alpha)^2 + 2c).
DomainSpec make_annulus(int n, double kappa1, double c, double R,
                        double alpha);

DomainSpec make_ball(int n, double kappa, double a, int angular_mode);
DomainSpec make_rectangle(double u0, double u1, double v0, double v1,
                          Model model);
DomainSpec make_disk(double radius);

struct DriftConstants {
  double C0;
  double C1;
  int grid_n;  // sampling intervals per dimension
};

/// C0 = delta^2 max |eta_dot|, C1 = delta^2 max (2 eta_ddot - eta_dot^2),
/// maxima over a closed uniform sampling grid of the domain.
DriftConstants drift_constants(const DomainSpec& domain, const DriftSpec& drift,
                               double delta, int grid_n = 512);

/// Max over an interior wedge grid of |2 div(phi grad eta) -
/// <grad eta, phi grad eta>| via the polar-coordinate expansion. Near-zero
/// certifies eta as a gap-preserving drift.
double eta_residual(const TensorSpec& tensor, const DriftSpec& drift,
                    const Wedge& wedge, int grid_n = 512);

}  // namespace hypspec
