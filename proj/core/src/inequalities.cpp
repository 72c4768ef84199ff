#include "hypspec/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hypspec/geometry.hpp"

namespace hypspec {

namespace {
constexpr double kPi = 3.14159265358979323846;

double default_slack(double rhs) { return 1e-6 * std::max(std::abs(rhs), 1.0); }

InequalityReport make_report(std::string name, int k, double lhs, double rhs,
                             double slack) {
  InequalityReport r;
  r.name = std::move(name);
  r.k = k;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.slack = slack;
  r.pass = lhs <= rhs + slack;
  return r;
}

// The branch-dependent constant added to (4 delta^2/eps) lambda_i in the
// pinched-space inequalities.
double branch_shift(const BoundParams& p, bool* positive_branch = nullptr) {
  const double m = p.n - 1;
  const double a = a_const(p.n, p.eps, p.delta);
  const double inv_d = std::isinf(p.d) ? 0.0 : 1.0 / p.d;
  double c = -m * m * p.eps * p.eps * p.kappa2 * p.kappa2 +
             2.0 * m *
                 (p.delta * p.delta * p.kappa1 * p.kappa1 -
                  p.eps * p.eps * p.kappa2 * p.kappa2) +
             2.0 * p.C0 * m * (p.kappa1 + inv_d) + p.C1;
  if (positive_branch) *positive_branch = a > 0.0;
  if (a > 0.0) c += a * inv_d * inv_d;
  return c;
}

void echo_params(InequalityReport& r, const BoundParams& p) {
  r.inputs.emplace_back("n", p.n);
  r.inputs.emplace_back("eps", p.eps);
  r.inputs.emplace_back("delta", p.delta);
  r.inputs.emplace_back("kappa1", p.kappa1);
  r.inputs.emplace_back("kappa2", p.kappa2);
  r.inputs.emplace_back("d", p.d);
  r.inputs.emplace_back("C0", p.C0);
  r.inputs.emplace_back("C1", p.C1);
}

}  // namespace

std::string InequalityReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["k"] = k;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["margin"] = margin;
  j["pass"] = pass;
  j["applicable"] = applicable;
  j["slack"] = slack;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [key, val] : inputs) in[key] = val;
  j["inputs"] = in;
  return j.dump();
}

std::string InequalityReport::to_csv_row() const {
  std::ostringstream os;
  os.precision(17);
  os << name << "," << k << "," << lhs << "," << rhs << "," << margin << ","
     << (pass ? "pass" : "fail") << "," << (applicable ? "yes" : "no");
  return os.str();
}

InequalityReport check_universal(const Spectrum& spec, int n, double eps,
                                 double delta, double kappa, int k) {
  if (k + 1 > spec.count())
    throw std::invalid_argument("check_universal: k+1 exceeds spectrum size");
  const auto& l = spec.eigenvalues;
  const double top = l[k];  // lambda_{k+1}
  double lhs = 0.0, rhs = 0.0;
  const double m = n - 1;
  for (int i = 0; i < k; ++i) {
    const double gap = top - l[i];
    lhs += gap * gap;
    rhs += gap * (4.0 * delta * delta / eps * l[i] -
                  m * m * eps * eps * kappa * kappa);
  }
  rhs /= eps;
  InequalityReport r =
      make_report("universal-quadratic", k, lhs, rhs, default_slack(rhs));
  r.inputs.emplace_back("n", n);
  r.inputs.emplace_back("eps", eps);
  r.inputs.emplace_back("delta", delta);
  r.inputs.emplace_back("kappa", kappa);
  return r;
}

InequalityReport check_thm2(const Spectrum& spec, const BoundParams& p,
                            int k) {
  if (k + 1 > spec.count())
    throw std::invalid_argument("check_thm2: k+1 exceeds spectrum size");
  if (p.d <= 0.0) throw std::invalid_argument("check_thm2: d must be positive");
  bool positive = false;
  const double shift = branch_shift(p, &positive);
  const auto& l = spec.eigenvalues;
  const double top = l[k];
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < k; ++i) {
    const double gap = top - l[i];
    lhs += gap * gap;
    rhs += gap * (4.0 * p.delta * p.delta / p.eps * l[i] + shift);
  }
  rhs /= p.eps;
  InequalityReport r = make_report(
      positive ? "pinched-quadratic/a-positive" : "pinched-quadratic/a-nonpositive",
      k, lhs, rhs, default_slack(rhs));
  echo_params(r, p);
  return r;
}

double lambda1_lower(const BoundParams& p) {
  const double shift = branch_shift(p);
  return -p.eps / (4.0 * p.delta * p.delta) * shift;
}

bool lambda1_lower_positive_condition(const BoundParams& p) {
  return p.kappa2 > 0.0 &&
         std::sqrt(static_cast<double>(p.n + 1)) * p.kappa2 >
             std::sqrt(2.0) * p.kappa1;
}

UpsilonSequence upsilon(const std::vector<double>& eigenvalues,
                        const BoundParams& p) {
  UpsilonSequence u;
  u.params = p;
  u.shift = branch_shift(p, &u.positive_branch);
  u.values.reserve(eigenvalues.size());
  for (double l : eigenvalues)
    u.values.push_back(4.0 * p.delta * p.delta / p.eps * l + u.shift);
  if (!u.values.empty()) {
    const double tol = 1e-9 * std::max(1.0, std::abs(u.values.front()));
    u.first_negative = u.values.front() < -tol;
  }
  return u;
}

UpsilonSequence upsilon(const Spectrum& spec, const BoundParams& p) {
  return upsilon(spec.eigenvalues, p);
}

std::vector<InequalityReport> check_recursions(const UpsilonSequence& ups,
                                               int k) {
  if (static_cast<int>(ups.values.size()) < k + 1)
    throw std::invalid_argument("check_recursions: sequence shorter than k+1");
  const auto& v = ups.values;
  const double t = ups.params.delta * ups.params.delta /
                   (ups.params.eps * ups.params.eps);
  const double top = v[k];

  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += v[i];
  const double mean = sum / k;
  double var = 0.0;
  for (int i = 0; i < k; ++i) var += (v[i] - mean) * (v[i] - mean);
  var /= k;
  const double disc = (2.0 * t * mean) * (2.0 * t * mean) -
                      (1.0 + 4.0 * t) * var;

  std::vector<InequalityReport> out;
  {
    const double rhs = (1.0 + 4.0 * t) * std::pow(k, 2.0 * t) * v[0];
    out.push_back(make_report("upsilon-growth", k, top, rhs, default_slack(rhs)));
  }
  {
    const double rhs = (1.0 + 4.0 * t) * sum / k;
    out.push_back(make_report("upsilon-mean", k, top, rhs, default_slack(rhs)));
  }
  {
    InequalityReport r;
    if (disc >= 0.0) {
      const double rhs = (1.0 + 2.0 * t) * mean + std::sqrt(disc);
      r = make_report("upsilon-quadratic-mean", k, top, rhs, default_slack(rhs));
    } else {
      r = make_report("upsilon-quadratic-mean", k, top, 0.0, 0.0);
      r.applicable = false;
      r.pass = true;
    }
    out.push_back(r);
  }
  {
    InequalityReport r;
    if (disc >= 0.0) {
      const double rhs = 2.0 * std::sqrt(disc);
      r = make_report("upsilon-gap", k, top - v[k - 1], rhs, default_slack(rhs));
    } else {
      r = make_report("upsilon-gap", k, top - v[k - 1], 0.0, 0.0);
      r.applicable = false;
      r.pass = true;
    }
    out.push_back(r);
  }
  for (auto& r : out) {
    r.inputs.emplace_back("t", t);
    r.inputs.emplace_back("upsilon1", v[0]);
  }
  return out;
}

std::vector<InequalityReport> check_gap(const Wedge& wedge,
                                        const GapResult& gap, double D,
                                        int grid) {
  const double eps = wedge.tensor.eps;
  const double delta = wedge.tensor.delta;
  const double ell2 = wedge.ell * wedge.ell;
  const double s = std::sin(wedge.theta_star());
  const double g = gap.lambda2 - gap.lambda1;

  std::vector<InequalityReport> out;
  // strict bounds carry a negative slack: pass needs a positive margin
  {
    const double lower = 3.0 * eps * s * s * ell2;
    out.push_back(make_report("gap-lower", 0, lower, g, -default_slack(g)));
  }
  {
    const double upper = 3.0 * delta * ell2;
    out.push_back(make_report("gap-upper", 0, g, upper, -default_slack(upper)));
  }
  {
    // asserted only for near-degenerate wedges, where ell * D approaches pi
    const double rhs = 3.0 * kPi * kPi * delta;
    InequalityReport r =
        make_report("gap-diameter-product", 0, g * D * D, rhs, -default_slack(rhs));
    r.applicable = wedge.ell * D <= 1.05 * kPi;
    out.push_back(r);
  }
  for (int sidx = 0; sidx <= 1; ++sidx) {
    const double mu = sidx == 0 ? ell2 : 4.0 * ell2;
    const double integral = theta_ground_state_l2(wedge, mu, grid);
    InequalityReport r =
        make_report(sidx == 0 ? "ground-state-l2/s=0" : "ground-state-l2/s=1",
                    0, integral, 1.0, -default_slack(1.0));
    out.push_back(r);
  }
  for (auto& r : out) {
    r.inputs.emplace_back("ell", wedge.ell);
    r.inputs.emplace_back("theta0", wedge.theta0);
    r.inputs.emplace_back("theta1", wedge.theta1);
    r.inputs.emplace_back("eps", eps);
    r.inputs.emplace_back("delta", delta);
    r.inputs.emplace_back("D", D);
    r.inputs.emplace_back("lambda1", gap.lambda1);
    r.inputs.emplace_back("lambda2", gap.lambda2);
  }
  return out;
}

double weyl_constant(const ConformalChart& chart, const TensorSpec& tensor,
                     int quad_n) {
  const double hu = (chart.u1 - chart.u0) / quad_n;
  const double hv = (chart.v1 - chart.v0) / quad_n;
  double sum = 0.0;
  for (int i = 0; i < quad_n; ++i) {
    const double u = chart.u0 + (i + 0.5) * hu;
    for (int j = 0; j < quad_n; ++j) {
      const double v = chart.v0 + (j + 0.5) * hv;
      sum += chart.rho(u, v) / tensor.phi.v(u, v);
    }
  }
  return sum * hu * hv / (4.0 * kPi);
}

namespace {

// Least-squares fit of r_k = A + B x_k; returns A, the leading constant.
// The subleading basis absorbs the boundary term of the counting function.
double fit_constant(const std::vector<double>& x, const std::vector<double>& r) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sxx = 0, sr = 0, sxr = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sxx += x[i] * x[i];
    sr += r[i];
    sxr += x[i] * r[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-300) return sr / n;
  return (sxx * sr - sx * sxr) / det;
}

}  // namespace

std::vector<InequalityReport> check_weyl(const std::vector<double>& eigenvalues,
                                         double c0, int n, double rel_tol) {
  const int total = static_cast<int>(eigenvalues.size());
  if (total < 100)
    throw std::invalid_argument("check_weyl: need at least 100 eigenvalues");

  const int lo = total / 2;
  const int hi = total;  // caller trims unreliable top entries beforehand
  const double half = n / 2.0;

  std::vector<double> x, r_count, r_mean, r_quad;
  double partial = 0.0, partial2 = 0.0;
  for (int i = 0; i < hi; ++i) {
    partial += eigenvalues[i];
    partial2 += eigenvalues[i] * eigenvalues[i];
    if (i + 1 <= lo) continue;
    const int k = i + 1;
    const double lam = eigenvalues[i];
    x.push_back(1.0 / std::sqrt(lam));
    r_count.push_back(k / std::pow(lam, half));
    r_mean.push_back((partial / k) / std::pow(k, 2.0 / n));
    r_quad.push_back((partial2 / k) / std::pow(k, 4.0 / n));
  }
  // Cesaro ratios drift like k^(-1/n); reuse the same subleading basis
  std::vector<double> xk;
  for (int i = lo; i < hi; ++i) xk.push_back(1.0 / std::pow(i + 1.0, 1.0 / n));

  const double fit_n = fit_constant(x, r_count);
  const double fit_m = fit_constant(xk, r_mean);
  const double fit_q = fit_constant(xk, r_quad);

  const double target_n = c0;
  const double target_m = n / (n + 2.0) * std::pow(c0, -2.0 / n);
  const double target_q = n / (n + 4.0) * std::pow(c0, -4.0 / n);

  std::vector<InequalityReport> out;
  auto push = [&](const char* name, double fit, double target) {
    InequalityReport r = make_report(
        name, total, std::abs(fit / target - 1.0), rel_tol, 0.0);
    r.inputs.emplace_back("fit", fit);
    r.inputs.emplace_back("target", target);
    r.inputs.emplace_back("c0", c0);
    out.push_back(r);
  };
  push("weyl-counting", fit_n, target_n);
  push("weyl-cesaro-mean", fit_m, target_m);
  push("weyl-cesaro-quadratic", fit_q, target_q);
  return out;
}

double wedge_diameter(const Wedge& wedge, int boundary_samples) {
  std::vector<HalfPlanePoint> pts;
  const double r0 = wedge.r_inner(), r1 = wedge.r_outer();
  for (int i = 0; i <= boundary_samples; ++i) {
    const double fr = static_cast<double>(i) / boundary_samples;
    const double r = r0 * std::pow(r1 / r0, fr);  // geodesic spacing in r
    const double th = wedge.theta0 + (wedge.theta1 - wedge.theta0) * fr;
    pts.push_back({r * std::cos(wedge.theta0), r * std::sin(wedge.theta0)});
    pts.push_back({r * std::cos(wedge.theta1), r * std::sin(wedge.theta1)});
    pts.push_back({r0 * std::cos(th), r0 * std::sin(th)});
    pts.push_back({r1 * std::cos(th), r1 * std::sin(th)});
  }
  double best = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, hyperbolic_distance(pts[i], pts[j], 1.0));
  return best;
}

std::string reports_to_json(const std::vector<InequalityReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(nlohmann::json::parse(r.to_json()));
  return arr.dump(2);
}

std::string reports_to_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream os;
  os << "name,k,lhs,rhs,margin,pass,applicable\n";
  for (const auto& r : reports) os << r.to_csv_row() << "\n";
  return os.str();
}

}  // namespace hypspec
