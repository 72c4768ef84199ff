#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

namespace hypspec {

/// Ascending eigenvalues with M-orthonormal eigenvectors of K u = lambda M u.
struct Spectrum {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;  // one column per pair
  std::vector<double> residuals;  // ||K u - lambda M u|| / ||M u||
  std::string meta;

  int count() const { return static_cast<int>(eigenvalues.size()); }
};

enum class SolveMethod { Auto, Dense, Iterative };

/// Lowest `count` eigenpairs of the symmetric pencil (K, M) with M diagonal
/// positive. Dense path: Cholesky reduction to a standard symmetric problem.
/// Iterative path (dof > 1200 under Auto): shift-invert subspace iteration
/// at sigma = 0 with deflation against converged M-orthonormal vectors,
/// deterministic start vectors.
Spectrum solve_generalized(const Eigen::SparseMatrix<double>& K,
                           const Eigen::VectorXd& Mdiag, int count,
                           SolveMethod method = SolveMethod::Auto);

/// Number of computed eigenvalues strictly below lambda. Refuses to count
/// beyond the largest converged eigenvalue.
int counting_function(const Spectrum& spec, double lambda);

/// Inertia of K - sigma M by pivoted LDL^T: the number of eigenvalues of
/// the pencil below sigma. Independent cross-check for counting_function.
int inertia_count(const Eigen::SparseMatrix<double>& K,
                  const Eigen::VectorXd& Mdiag, double sigma);

}  // namespace hypspec
