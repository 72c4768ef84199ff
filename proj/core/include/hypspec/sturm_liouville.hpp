#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hypspec/domains.hpp"

namespace hypspec {

/// 1-D Dirichlet problem -(p h')' + q h = lambda w h on (a,b).
/// With `cell_centered` set, nodes sit at half-cell offsets so singular
/// endpoint coefficients are never evaluated at the boundary itself;
/// `left_dirichlet` then picks the boundary flux at a (Dirichlet vs natural).
struct SLProblem {
  std::function<double(double)> p;
  std::function<double(double)> q;
  std::function<double(double)> w;
  double a;
  double b;
  bool cell_centered = false;
  bool left_dirichlet = true;
};

struct SLSolution {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenfunctions;  // normalized: sum w h^2 h_step = 1
  std::vector<double> nodes;
  int grid_size;
  double h;
  std::vector<double> refinement_estimate;
};

/// Symmetric tridiagonal reduction of the conservative 3-point scheme;
/// exposed so tests can rebuild the pencil independently.
struct SLTridiag {
  std::vector<double> diag;   // of W^(-1/2) K W^(-1/2)
  std::vector<double> off;
  std::vector<double> wdiag;  // mass diagonal (w at nodes)
  std::vector<double> kdiag;  // stiffness diagonal before mass scaling
  std::vector<double> koff;
  std::vector<double> nodes;
  double h;
};

SLTridiag sl_discretize(const SLProblem& prob, int grid);

/// First `count` eigenpairs by Sturm-sequence bisection plus inverse
/// iteration; refinement estimates from a half-resolution solve.
SLSolution sl_eigs(const SLProblem& prob, int count, int grid);

/// Angular problem of the wedge: p = phi(theta), q = mu phi(theta),
/// w = csc^2(theta) on (theta0, theta1).
SLProblem theta_problem(const Wedge& wedge, double mu);

/// Radial separation constant and profile: mu = (k ell)^2,
/// t -> sin(k ell t) on (0, pi/ell).
struct RadialMode {
  double mu;
  std::function<double(double)> profile;
};
RadialMode radial_mode(double ell, int k);

/// Radial geodesic-ball problem in hyperbolic n-space of curvature
/// -kappa^2, in Liouville normal form: -u'' + V u = lambda u on (0,a) with
///   V(r) = (n-1)^2 kappa^2/4
///        + ((n-1)(n-3)/4 + m(m+n-2)) kappa^2 / sinh^2(kappa r).
SLProblem ball_problem(int n, double kappa, double a, int m);

/// Euclidean disk radial mode m: -(r u')' + (m^2/r) u = lambda r u on
/// (0, radius); lambda1 at m=0 is the squared first Bessel J0 root.
SLProblem disk_radial_problem(double radius, int m);

enum class GapBranch { MuFourEllSq, MuEllSqSecond };

struct GapResult {
  double lambda1;
  double lambda2;
  GapBranch branch;
  bool tie = false;
  double lambda1_mu4;    // first eigenvalue of the mu = 4 ell^2 problem
  double lambda2_mu1;    // second eigenvalue of the mu = ell^2 problem
  double estimate_mu4;
  double estimate_mu1;
};

/// lambda1/lambda2 of the separated wedge problem; lambda2 is the smaller
/// of the mu = 4 ell^2 first branch and the mu = ell^2 second branch.
/// Throws if the refinement estimates cannot separate the branches
/// (ties are reported on the mu = 4 ell^2 branch instead).
GapResult gap_wedge(const Wedge& wedge, int grid);

/// Plain integral of h^2 for the first eigenfunction of the theta problem
/// at parameter mu, normalized against the csc^2 weight.
double theta_ground_state_l2(const Wedge& wedge, double mu, int grid);

}  // namespace hypspec
