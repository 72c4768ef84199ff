#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hypspec/assembly2d.hpp"
#include "hypspec/domains.hpp"
#include "hypspec/eigensolve.hpp"
#include "hypspec/sturm_liouville.hpp"

namespace hypspec {

/// One evaluated bound: lhs <= rhs (+ slack), with the inputs echoed so the
/// report can be recomputed on its own.
struct InequalityReport {
  std::string name;
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;
  bool applicable = true;  // false when a bound's discriminant is negative
  double slack = 0.0;
  std::vector<std::pair<std::string, double>> inputs;

  std::string to_json() const;
  std::string to_csv_row() const;
};

/// Parameters shared by the pinched-space eigenvalue bounds; d may be
/// infinite when no base point is fixed near the domain.
struct BoundParams {
  int n = 2;
  double eps = 1.0;
  double delta = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double d = std::numeric_limits<double>::infinity();
  double C0 = 0.0;
  double C1 = 0.0;
};

/// Branch-tagged auxiliary sequence v_i = (4 delta^2/eps) lambda_i + C.
struct UpsilonSequence {
  std::vector<double> values;
  bool positive_branch;  // true when a(n,eps,delta) > 0 contributes a/d^2
  double shift;          // the constant C
  BoundParams params;
  bool first_negative = false;  // hypothesis-violation indicator
};

/// Quadratic eigenvalue inequality for domains in hyperbolic space of
/// curvature -kappa^2 with radially constant drift:
///   sum (l_{k+1}-l_i)^2 <= (1/eps) sum (l_{k+1}-l_i)
///                          ((4 delta^2/eps) l_i - (n-1)^2 eps^2 kappa^2).
InequalityReport check_universal(const Spectrum& spec, int n, double eps,
                                 double delta, double kappa, int k);

/// Pinched-space version with drift constants; the branch follows the sign
/// of a_const(n, eps, delta) and adds a/d^2 when positive.
InequalityReport check_thm2(const Spectrum& spec, const BoundParams& params,
                            int k);

/// Closed-form lower bound for lambda_1 under the pinched hypotheses.
double lambda1_lower(const BoundParams& params);

/// Positivity condition for the constant-tensor specialization of the
/// lower bound: sqrt(n+1) kappa2 > sqrt(2) kappa1.
bool lambda1_lower_positive_condition(const BoundParams& params);

UpsilonSequence upsilon(const Spectrum& spec, const BoundParams& params);
UpsilonSequence upsilon(const std::vector<double>& eigenvalues,
                        const BoundParams& params);

/// The four recursion bounds on the auxiliary sequence: the k^(2t) growth
/// bound, the mean bound, the quadratic-mean bound and the gap bound
/// (reported not-applicable when its discriminant is negative).
std::vector<InequalityReport> check_recursions(const UpsilonSequence& ups,
                                               int k);

/// Gap reports for a validated wedge: the two strict gap bounds, the
/// diameter product bound and the normalization inequality of the
/// csc^2-normalized ground states.
std::vector<InequalityReport> check_gap(const Wedge& wedge,
                                        const GapResult& gap, double D,
                                        int grid = 2048);

/// Leading Weyl coefficient for T = phi I in dimension 2:
/// (4 pi)^(-1) integral of rho/phi over the chart, midpoint quadrature.
double weyl_constant(const ConformalChart& chart, const TensorSpec& tensor,
                     int quad_n = 512);

/// Trend reports against the three asymptotic identities
/// N(lambda)/lambda^(n/2) -> c0, mean and quadratic-mean Cesaro limits.
/// Fits over the top half of the supplied eigenvalues.
std::vector<InequalityReport> check_weyl(const std::vector<double>& eigenvalues,
                                         double c0, int n,
                                         double rel_tol = 0.10);

/// Hyperbolic diameter of the wedge by maximizing the pairwise distance
/// over boundary samples.
double wedge_diameter(const Wedge& wedge, int boundary_samples = 256);

std::string reports_to_json(const std::vector<InequalityReport>& reports);
std::string reports_to_csv(const std::vector<InequalityReport>& reports);

}  // namespace hypspec
