#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <iosfwd>
#include <string>

#include "hypspec/domains.hpp"
#include "hypspec/eigensolve.hpp"

namespace hypspec {

/// Rectangular chart with metric rho (du^2 + dv^2) in the conformal case.
/// The direction weights au/av allow the diagonal-metric polar chart of the
/// disk; for conformal charts both are identically 1 and the stiffness is
/// rho-independent.
struct ConformalChart {
  double u0, u1, v0, v1;
  std::function<double(double, double)> rho;  // metric volume factor
  std::function<double(double, double)> au;   // weight on u-derivatives
  std::function<double(double, double)> av;   // weight on v-derivatives
  bool periodic_v = false;
  bool cell_centered_u = false;
  bool left_dirichlet_u = true;
  std::string tag;
};

/// Chart for a DomainSpec: wedge -> (0, pi/ell) x (theta0, theta1) with
/// rho = csc^2(theta); hyperbolic rectangle -> rho = 1/(kappa y)^2;
/// Euclidean rectangle -> rho = 1; disk -> polar chart.
ConformalChart conformal_chart(const DomainSpec& domain);

/// Symmetric generalized pencil of the discretized operator.
struct Pencil {
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd Mdiag;
  int nu, nv;  // interior nodes per direction
  double hu, hv;

  int index(int i, int j) const { return i * nv + j; }
  int dof() const { return nu * nv; }
};

/// Five-point conservative assembly of the Dirichlet weak form: stiffness
/// from the energy integral of phi e^(-eta) (au u_u^2 + av u_v^2), lumped
/// mass e^(-eta) rho per cell. Face coefficients by geometric mean of the
/// adjacent node values.
Pencil assemble(const ConformalChart& chart, const TensorSpec& tensor,
                const DriftSpec& drift, int nu, int nv);

/// Lowest eigenpairs of the pencil (delegates to solve_generalized).
Spectrum spectrum_2d(const Pencil& pencil, int count,
                     SolveMethod method = SolveMethod::Auto);

/// Richardson-extrapolated lowest eigenvalues from grids (nu, nv) and
/// (2nu, 2nv): lambda = (4 lambda_fine - lambda_coarse) / 3.
std::vector<double> richardson_eigenvalues(const ConformalChart& chart,
                                           const TensorSpec& tensor,
                                           const DriftSpec& drift, int nu,
                                           int nv, int count,
                                           SolveMethod method = SolveMethod::Auto);

/// Matrix Market coordinate text export of K (symmetric) and the mass
/// diagonal, for external cross-checks.
void write_matrix_market(const Pencil& pencil, std::ostream& k_out,
                         std::ostream& m_out);

}  // namespace hypspec
