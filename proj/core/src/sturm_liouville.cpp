#include "hypspec/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypspec {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
// below x, by the Sturm sequence / LDL^T pivot count.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                double x) {
  const int n = static_cast<int>(diag.size());
  int count = 0;
  double q = diag[0] - x;
  if (q < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    const double e = off[i - 1];
    double denom = q;
    if (denom == 0.0) denom = 1e-300;
    q = (diag[i] - x) - e * e / denom;
    if (q < 0.0) ++count;
  }
  return count;
}

// k-th (1-based) eigenvalue by bisection on the Sturm count.
double bisect_eigenvalue(const std::vector<double>& diag,
                         const std::vector<double>& off, int k) {
  // Gershgorin bounds
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const int n = static_cast<int>(diag.size());
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < n) radius += std::abs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double tol = 1e-14 * std::max(scale, 1.0);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // bisection exhausted
    if (sturm_count(diag, off, mid) >= k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Inverse iteration for the eigenvector of the symmetric tridiagonal at a
// converged eigenvalue.
std::vector<double> tridiag_eigenvector(const std::vector<double>& diag,
                                        const std::vector<double>& off,
                                        double lambda) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> v(n, 1.0);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + i);

  double scale = std::max(1.0, std::abs(lambda));
  const double shift = lambda - 1e-11 * scale;
  for (int iter = 0; iter < 4; ++iter) {
    // Thomas solve (T - shift I) x = v with partial regularization
    std::vector<double> c(n), d(n), x(n);
    double b0 = diag[0] - shift;
    if (std::abs(b0) < 1e-300) b0 = 1e-300;
    c[0] = (n > 1) ? off[0] / b0 : 0.0;
    d[0] = v[0] / b0;
    for (int i = 1; i < n; ++i) {
      double m = (diag[i] - shift) - off[i - 1] * c[i - 1];
      if (std::abs(m) < 1e-300) m = 1e-300;
      if (i + 1 < n) c[i] = off[i] / m;
      d[i] = (v[i] - off[i - 1] * d[i - 1]) / m;
    }
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    double norm = 0.0;
    for (double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) v[i] = x[i] / norm;
  }
  return v;
}

std::vector<double> solve_values(const SLTridiag& t, int count) {
  std::vector<double> vals(count);
  for (int k = 1; k <= count; ++k)
    vals[k - 1] = bisect_eigenvalue(t.diag, t.off, k);
  return vals;
}

}  // namespace

SLTridiag sl_discretize(const SLProblem& prob, int grid) {
  if (grid < 3) throw std::invalid_argument("sl_discretize: grid too small");
  const int n = grid;
  SLTridiag t;
  t.nodes.resize(n);
  t.kdiag.resize(n);
  t.koff.resize(n - 1);
  t.wdiag.resize(n);

  if (!prob.cell_centered) {
    // vertex-centered: n interior nodes, Dirichlet rows dropped
    const double h = (prob.b - prob.a) / (n + 1);
    t.h = h;
    for (int i = 0; i < n; ++i) {
      const double x = prob.a + (i + 1) * h;
      t.nodes[i] = x;
      const double pm = prob.p(x - 0.5 * h);
      const double pp = prob.p(x + 0.5 * h);
      t.kdiag[i] = (pm + pp) / (h * h) + prob.q(x);
      if (i + 1 < n) t.koff[i] = -pp / (h * h);
      t.wdiag[i] = prob.w(x);
    }
  } else {
    // cell-centered: nodes at half-cell offsets, faces at the boundary
    const double h = (prob.b - prob.a) / n;
    t.h = h;
    for (int i = 0; i < n; ++i) {
      const double x = prob.a + (i + 0.5) * h;
      t.nodes[i] = x;
      double pm, pp;
      if (i == 0) {
        // left face at a: doubled Dirichlet flux, or none (natural)
        pm = prob.left_dirichlet ? 2.0 * prob.p(prob.a) : 0.0;
      } else {
        pm = prob.p(prob.a + i * h);
      }
      if (i == n - 1) {
        pp = 2.0 * prob.p(prob.b);  // Dirichlet at b through the half cell
      } else {
        pp = prob.p(prob.a + (i + 1) * h);
      }
      t.kdiag[i] = (pm + pp) / (h * h) + prob.q(x);
      if (i + 1 < n) t.koff[i] = -pp / (h * h);
      t.wdiag[i] = prob.w(x);
    }
  }

  for (int i = 0; i < n; ++i) {
    if (!(t.wdiag[i] > 0.0))
      throw std::runtime_error("sl_discretize: weight not positive on grid");
    double pv = prob.p(t.nodes[i]);
    if (!(pv > 0.0) && !(prob.cell_centered && i == 0))
      throw std::runtime_error("sl_discretize: p not positive on grid");
  }

  t.diag.resize(n);
  t.off.resize(n - 1);
  for (int i = 0; i < n; ++i) t.diag[i] = t.kdiag[i] / t.wdiag[i];
  for (int i = 0; i + 1 < n; ++i)
    t.off[i] = t.koff[i] / std::sqrt(t.wdiag[i] * t.wdiag[i + 1]);
  return t;
}

SLSolution sl_eigs(const SLProblem& prob, int count, int grid) {
  if (count < 1) throw std::invalid_argument("sl_eigs: count must be >= 1");
  if (grid < 8 * count)
    throw std::invalid_argument("sl_eigs: grid must be >= 8*count");

  const SLTridiag fine = sl_discretize(prob, grid);
  const SLTridiag coarse = sl_discretize(prob, grid / 2);
  const std::vector<double> vals = solve_values(fine, count);
  const std::vector<double> coarse_vals = solve_values(coarse, count);

  SLSolution sol;
  sol.eigenvalues = vals;
  sol.nodes = fine.nodes;
  sol.grid_size = grid;
  sol.h = fine.h;
  sol.refinement_estimate.resize(count);
  for (int k = 0; k < count; ++k)
    sol.refinement_estimate[k] = std::abs(vals[k] - coarse_vals[k]) / 3.0;

  sol.eigenfunctions.resize(count);
  for (int k = 0; k < count; ++k) {
    std::vector<double> y = tridiag_eigenvector(fine.diag, fine.off, vals[k]);
    // back-transform h = W^(-1/2) y, then normalize sum w h^2 h_step = 1
    const int n = static_cast<int>(y.size());
    std::vector<double> hval(n);
    for (int i = 0; i < n; ++i) hval[i] = y[i] / std::sqrt(fine.wdiag[i]);
    double mass = 0.0;
    for (int i = 0; i < n; ++i) mass += fine.wdiag[i] * hval[i] * hval[i];
    mass *= fine.h;
    const double s = 1.0 / std::sqrt(mass);
    for (double& v : hval) v *= s;
    // fix the sign: first nonzero lobe positive
    for (double v : hval) {
      if (std::abs(v) > 1e-12) {
        if (v < 0.0)
          for (double& u : hval) u = -u;
        break;
      }
    }
    sol.eigenfunctions[k] = std::move(hval);
  }
  return sol;
}

SLProblem theta_problem(const Wedge& wedge, double mu) {
  const ScalarField phi = wedge.tensor.phi;
  SLProblem prob;
  prob.p = [phi](double th) { return phi.v(1.0, th); };
  prob.q = [phi, mu](double th) { return mu * phi.v(1.0, th); };
  prob.w = [](double th) {
    const double s = std::sin(th);
    return 1.0 / (s * s);
  };
  prob.a = wedge.theta0;
  prob.b = wedge.theta1;
  return prob;
}

RadialMode radial_mode(double ell, int k) {
  if (ell <= 0.0) throw std::invalid_argument("radial_mode: ell must be > 0");
  if (k == 0) throw std::invalid_argument("radial_mode: k = 0 is trivial");
  const double kl = k * ell;
  return {kl * kl, [kl](double t) { return std::sin(kl * t); }};
}

SLProblem ball_problem(int n, double kappa, double a, int m) {
  if (n < 2) throw std::invalid_argument("ball_problem: n must be >= 2");
  if (kappa <= 0.0 || a <= 0.0)
    throw std::invalid_argument("ball_problem: need kappa > 0, a > 0");
  if (m < 0) throw std::invalid_argument("ball_problem: m must be >= 0");

  const double base = 0.25 * (n - 1) * (n - 1) * kappa * kappa;
  const double sing =
      (0.25 * (n - 1) * (n - 3) + m * (m + n - 2)) * kappa * kappa;
  SLProblem prob;
  prob.p = [](double) { return 1.0; };
  prob.q = [base, sing, kappa](double r) {
    const double s = std::sinh(kappa * r);
    return base + sing / (s * s);
  };
  prob.w = [](double) { return 1.0; };
  prob.a = 0.0;
  prob.b = a;
  prob.cell_centered = true;
  prob.left_dirichlet = true;
  return prob;
}

SLProblem disk_radial_problem(double radius, int m) {
  if (radius <= 0.0)
    throw std::invalid_argument("disk_radial_problem: radius must be > 0");
  if (m < 0) throw std::invalid_argument("disk_radial_problem: m must be >= 0");
  SLProblem prob;
  prob.p = [](double r) { return r; };
  prob.q = [m](double r) { return m * m / r; };
  prob.w = [](double r) { return r; };
  prob.a = 0.0;
  prob.b = radius;
  prob.cell_centered = true;
  prob.left_dirichlet = m > 0;  // m = 0 mode has a natural center condition
  return prob;
}

GapResult gap_wedge(const Wedge& wedge, int grid) {
  const double ell2 = wedge.ell * wedge.ell;
  const SLSolution low = sl_eigs(theta_problem(wedge, ell2), 2, grid);
  const SLSolution high = sl_eigs(theta_problem(wedge, 4.0 * ell2), 1, grid);

  GapResult g;
  g.lambda1 = low.eigenvalues[0];
  g.lambda1_mu4 = high.eigenvalues[0];
  g.lambda2_mu1 = low.eigenvalues[1];
  g.estimate_mu4 = high.refinement_estimate[0];
  g.estimate_mu1 = low.refinement_estimate[1];

  const double sep = std::abs(g.lambda1_mu4 - g.lambda2_mu1);
  const double uncertainty = g.estimate_mu4 + g.estimate_mu1;
  if (sep <= uncertainty) {
    const double scale =
        std::max(std::abs(g.lambda1_mu4), std::abs(g.lambda2_mu1));
    if (uncertainty > 1e-6 * std::max(scale, 1.0))
      throw std::runtime_error(
          "gap_wedge: branch separation below the discretization error, "
          "refine the grid");
    // Genuinely degenerate: report the mu = 4 ell^2 branch, flag the tie.
    g.branch = GapBranch::MuFourEllSq;
    g.tie = true;
    g.lambda2 = g.lambda1_mu4;
    return g;
  }
  if (g.lambda1_mu4 <= g.lambda2_mu1) {
    g.branch = GapBranch::MuFourEllSq;
    g.lambda2 = g.lambda1_mu4;
  } else {
    g.branch = GapBranch::MuEllSqSecond;
    g.lambda2 = g.lambda2_mu1;
  }
  return g;
}

double theta_ground_state_l2(const Wedge& wedge, double mu, int grid) {
  const SLSolution sol = sl_eigs(theta_problem(wedge, mu), 1, grid);
  const std::vector<double>& h = sol.eigenfunctions[0];
  double integral = 0.0;
  for (double v : h) integral += v * v;
  return integral * sol.h;
}

}  // namespace hypspec
