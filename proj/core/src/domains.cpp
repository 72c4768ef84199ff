#include "hypspec/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hypspec {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double ScalarField::du(double u, double w) const {
  if (d1) return d1(u, w);
  const double h = fd_step;
  return (value(u + h, w) - value(u - h, w)) / (2.0 * h);
}

double ScalarField::dv(double u, double w) const {
  if (d2) return d2(u, w);
  const double h = fd_step;
  return (value(u, w + h) - value(u, w - h)) / (2.0 * h);
}

double ScalarField::duu(double u, double w) const {
  if (d11) return d11(u, w);
  const double h = 1e-4;  // larger step: second differences lose digits
  return (value(u + h, w) - 2.0 * value(u, w) + value(u - h, w)) / (h * h);
}

double ScalarField::dvv(double u, double w) const {
  if (d22) return d22(u, w);
  const double h = 1e-4;
  return (value(u, w + h) - 2.0 * value(u, w) + value(u, w - h)) / (h * h);
}

ScalarField constant_field(double c) {
  ScalarField f;
  f.value = [c](double, double) { return c; };
  f.d1 = f.d2 = f.d11 = f.d22 = [](double, double) { return 0.0; };
  return f;
}

DriftSpec constant_drift() { return DriftSpec{constant_field(0.0)}; }

TensorSpec tensor_sin_theta() {
  ScalarField phi;
  phi.value = [](double, double th) { return std::sin(th); };
  phi.d1 = [](double, double) { return 0.0; };
  phi.d11 = [](double, double) { return 0.0; };
  phi.d2 = [](double, double th) { return std::cos(th); };
  phi.d22 = [](double, double th) { return -std::sin(th); };
  return TensorSpec{phi, std::sqrt(3.0) / 2.0, 1.0, true};
}

TensorSpec tensor_const(double c) {
  return TensorSpec{constant_field(c), c, c, true};
}

DriftSpec drift_log_tan_theta() {
  // eta = -2 ln g, g(theta) = 1 - ln tan(theta/2); g' = -csc(theta)
  ScalarField eta;
  auto g = [](double th) { return 1.0 - std::log(std::tan(th / 2.0)); };
  eta.value = [g](double, double th) { return -2.0 * std::log(g(th)); };
  eta.d1 = [](double, double) { return 0.0; };
  eta.d11 = [](double, double) { return 0.0; };
  eta.d2 = [g](double, double th) { return 2.0 / (std::sin(th) * g(th)); };
  eta.d22 = [g](double, double th) {
    const double cs = 1.0 / std::sin(th);
    const double ct = std::cos(th) / std::sin(th);
    const double gg = g(th);
    return -2.0 * cs * ct / gg + 2.0 * cs * cs / (gg * gg);
  };
  return DriftSpec{eta};
}

DriftSpec drift_log_radial(double ell) {
  // eta = -2 ln u, u(r) = pi - ell ln r
  ScalarField eta;
  auto u = [ell](double r) { return kPi - ell * std::log(r); };
  eta.value = [u](double r, double) { return -2.0 * std::log(u(r)); };
  eta.d1 = [u, ell](double r, double) { return 2.0 * ell / (r * u(r)); };
  eta.d11 = [u, ell](double r, double) {
    const double uu = u(r);
    return -2.0 * ell * (uu - ell) / (r * r * uu * uu);
  };
  eta.d2 = [](double, double) { return 0.0; };
  eta.d22 = [](double, double) { return 0.0; };
  return DriftSpec{eta};
}

DriftSpec drift_quadratic_radial(double c) {
  ScalarField eta;
  eta.value = [c](double r, double) { return 0.5 * c * r * r; };
  eta.d1 = [c](double r, double) { return c * r; };
  eta.d11 = [c](double, double) { return c; };
  eta.d2 = [](double, double) { return 0.0; };
  eta.d22 = [](double, double) { return 0.0; };
  return DriftSpec{eta};
}

DriftSpec drift_log_r() {
  ScalarField eta;
  eta.value = [](double r, double) { return -2.0 * std::log(r); };
  eta.d1 = [](double r, double) { return -2.0 / r; };
  eta.d11 = [](double r, double) { return 2.0 / (r * r); };
  eta.d2 = [](double, double) { return 0.0; };
  eta.d22 = [](double, double) { return 0.0; };
  return DriftSpec{eta};
}

double Wedge::theta_star() const { return std::min(theta0, kPi - theta1); }

double Wedge::r_outer() const { return std::exp(kPi / ell); }

ConstraintViolation::ConstraintViolation(std::string name, double lhs,
                                         double rhs)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "constraint '" << name << "' violated: " << lhs
           << " vs " << rhs;
        return os.str();
      }()),
      name_(std::move(name)),
      lhs_(lhs),
      rhs_(rhs) {}

DomainSpec make_wedge(double ell, double theta0, double theta1,
                      const TensorSpec& tensor) {
  if (ell <= 0.0) throw std::domain_error("make_wedge: ell must be positive");
  if (!(0.0 < theta0 && theta0 < kPi / 2.0 && kPi / 2.0 < theta1 &&
        theta1 < kPi))
    throw std::domain_error(
        "make_wedge: need 0 < theta0 < pi/2 < theta1 < pi");

  Wedge w{ell, theta0, theta1, tensor};
  const double ts = w.theta_star();
  if (!(ts > kPi / 6.0))
    throw ConstraintViolation("theta_star > pi/6", ts, kPi / 6.0);

  const double eps = tensor.eps, delta = tensor.delta;
  if (!(eps > delta / 4.0))
    throw ConstraintViolation("eps > delta/4", eps, delta / 4.0);

  const double s2 = std::sin(ts) * std::sin(ts);
  const double width = theta1 - theta0;
  const double bound =
      kPi * kPi / (width * width) * (4.0 * eps * s2 - delta) /
      (4.0 * delta - eps * s2);
  if (!(bound >= ell * ell))
    throw ConstraintViolation("ell^2 admissibility", ell * ell, bound);

  DomainSpec d;
  d.variant = w;
  d.model = Model::hyperbolic(1.0);
  return d;
}

DomainSpec make_annulus(int n, double kappa1, double c, double R,
                        double alpha) {
  if (n < 2) throw std::domain_error("make_annulus: n must be >= 2");
  if (kappa1 < 0.0 || c <= 0.0 || R <= 0.0 || alpha <= 0.0)
    throw std::domain_error("make_annulus: bad parameters");

  const double k = (n - 1) * (kappa1 + alpha);
  const double threshold = k + std::sqrt(k * k + 2.0 * c);
  if (!(c * R > threshold))
    throw ConstraintViolation("cR threshold", c * R, threshold);

  Annulus a{n, kappa1, c, R, alpha,
            std::sqrt((2.0 * k * R + 2.0) / c)};
  DomainSpec d;
  d.variant = a;
  d.model = kappa1 > 0.0 ? Model::hyperbolic(kappa1) : Model::euclidean();
  d.origin_distance = a.inner;
  return d;
}

DomainSpec make_ball(int n, double kappa, double a, int angular_mode) {
  if (n < 2) throw std::domain_error("make_ball: n must be >= 2");
  if (kappa <= 0.0 || a <= 0.0)
    throw std::domain_error("make_ball: need kappa > 0 and a > 0");
  if (angular_mode < 0)
    throw std::domain_error("make_ball: angular mode must be >= 0");
  DomainSpec d;
  d.variant = Ball{n, kappa, a, angular_mode};
  d.model = Model::hyperbolic(kappa);
  return d;
}

DomainSpec make_rectangle(double u0, double u1, double v0, double v1,
                          Model model) {
  if (!(u0 < u1 && v0 < v1))
    throw std::domain_error("make_rectangle: empty rectangle");
  if (model.kind == Model::Kind::Hyperbolic && v0 <= 0.0)
    throw std::domain_error("make_rectangle: half-plane needs y > 0");
  DomainSpec d;
  d.variant = Rectangle{u0, u1, v0, v1};
  d.model = model;
  return d;
}

DomainSpec make_disk(double radius) {
  if (radius <= 0.0) throw std::domain_error("make_disk: radius must be > 0");
  DomainSpec d;
  d.variant = Disk{radius};
  d.model = Model::euclidean();
  return d;
}

namespace {

// Closed parameter box of the domain in the coordinates used for radial
// derivatives (first coordinate radial where meaningful).
struct Box {
  double u0, u1, v0, v1;
  bool one_dim;
};

Box parameter_box(const DomainSpec& domain) {
  if (const auto* w = std::get_if<Wedge>(&domain.variant))
    return {w->r_inner(), w->r_outer(), w->theta0, w->theta1, false};
  if (const auto* a = std::get_if<Annulus>(&domain.variant))
    return {a->inner, a->R, 0.0, 0.0, true};
  if (const auto* b = std::get_if<Ball>(&domain.variant))
    return {0.0, b->a, 0.0, 0.0, true};
  if (const auto* r = std::get_if<Rectangle>(&domain.variant))
    return {r->u0, r->u1, r->v0, r->v1, false};
  const auto& d = std::get<Disk>(domain.variant);
  return {0.0, d.radius, 0.0, 0.0, true};
}

}  // namespace

DriftConstants drift_constants(const DomainSpec& domain, const DriftSpec& drift,
                               double delta, int grid_n) {
  if (grid_n < 1) throw std::invalid_argument("drift_constants: empty grid");
  const Box box = parameter_box(domain);
  if (!(box.u0 < box.u1))
    throw std::invalid_argument("drift_constants: empty domain");

  double m0 = 0.0;
  double m1 = -std::numeric_limits<double>::infinity();
  const int nv = box.one_dim ? 0 : grid_n;
  for (int i = 0; i <= grid_n; ++i) {
    const double u = box.u0 + (box.u1 - box.u0) * i / grid_n;
    for (int j = 0; j <= nv; ++j) {
      const double v =
          box.one_dim ? 0.0 : box.v0 + (box.v1 - box.v0) * j / nv;
      const double e1 = drift.radial_d1(u, v);
      const double e2 = drift.radial_d2(u, v);
      m0 = std::max(m0, std::abs(e1));
      m1 = std::max(m1, 2.0 * e2 - e1 * e1);
    }
  }
  return {delta * delta * m0, delta * delta * m1, grid_n};
}

double eta_residual(const TensorSpec& tensor, const DriftSpec& drift,
                    const Wedge& wedge, int grid_n) {
  // 2 dv(phi grad eta) - <grad eta, phi grad eta> in (r,theta), with the
  // half-plane polar metric; phi must be radially constant.
  double worst = 0.0;
  const double r0 = wedge.r_inner(), r1 = wedge.r_outer();
  for (int i = 0; i < grid_n; ++i) {
    const double r = r0 + (r1 - r0) * (i + 0.5) / grid_n;
    for (int j = 0; j < grid_n; ++j) {
      const double th =
          wedge.theta0 + (wedge.theta1 - wedge.theta0) * (j + 0.5) / grid_n;
      const double s2 = std::sin(th) * std::sin(th);
      const double phi = tensor.phi.v(r, th);
      const double phi_t = tensor.phi.dv(r, th);
      const double er = drift.eta.du(r, th);
      const double err = drift.eta.duu(r, th);
      const double et = drift.eta.dv(r, th);
      const double ett = drift.eta.dvv(r, th);
      const double div_term =
          phi * (r * r * s2 * err + r * s2 * er) + phi * s2 * ett +
          s2 * phi_t * et;
      const double grad_term = phi * s2 * (r * r * er * er + et * et);
      worst = std::max(worst, std::abs(2.0 * div_term - grad_term));
    }
  }
  return worst;
}

}  // namespace hypspec
