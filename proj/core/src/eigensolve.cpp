#include "hypspec/eigensolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <stdexcept>

namespace hypspec {

namespace {

void fill_residuals(const Eigen::SparseMatrix<double>& K,
                    const Eigen::VectorXd& Mdiag, Spectrum& spec) {
  const int m = spec.count();
  spec.residuals.resize(m);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd u = spec.eigenvectors.col(i);
    const Eigen::VectorXd Mu = Mdiag.cwiseProduct(u);
    const Eigen::VectorXd r = K * u - spec.eigenvalues[i] * Mu;
    spec.residuals[i] = r.norm() / Mu.norm();
  }
}

Spectrum solve_dense(const Eigen::SparseMatrix<double>& K,
                     const Eigen::VectorXd& Mdiag, int count) {
  const int n = static_cast<int>(Mdiag.size());
  Eigen::MatrixXd A = Eigen::MatrixXd(K);
  A = 0.5 * (A + A.transpose());  // enforce exact symmetry
  // M diagonal: the Cholesky reduction is a diagonal scaling
  Eigen::VectorXd s = Mdiag.cwiseSqrt();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) /= s(i) * s(j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("solve_generalized: dense eigensolver failed");

  Spectrum spec;
  spec.meta = "dense";
  spec.eigenvalues.resize(count);
  spec.eigenvectors.resize(n, count);
  for (int i = 0; i < count; ++i) {
    spec.eigenvalues[i] = es.eigenvalues()(i);
    spec.eigenvectors.col(i) = es.eigenvectors().col(i).cwiseQuotient(s);
  }
  fill_residuals(K, Mdiag, spec);
  return spec;
}

// M-orthonormalize the columns of V in place by the Gram-Cholesky method,
// applied twice for stability.
void m_orthonormalize(const Eigen::VectorXd& Mdiag, Eigen::MatrixXd& V) {
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::MatrixXd G = V.transpose() * Mdiag.asDiagonal() * V;
    G = 0.5 * (G + G.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success) {
      // nearly dependent columns: fall back to a rank-revealing basis
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
      const double floor = 1e-14 * es.eigenvalues().maxCoeff();
      Eigen::VectorXd d = es.eigenvalues().cwiseMax(floor).cwiseSqrt();
      V = V * es.eigenvectors() * d.cwiseInverse().asDiagonal();
      continue;
    }
    const Eigen::MatrixXd U = llt.matrixU();
    V = U.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(V);
  }
}

Spectrum solve_iterative(const Eigen::SparseMatrix<double>& K,
                         const Eigen::VectorXd& Mdiag, int count) {
  const int n = static_cast<int>(Mdiag.size());
  const int block = std::min(n, count + std::max(20, count / 2));

  Eigen::SparseMatrix<double> A = K;
  double sigma = 0.0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(A);
  if (chol.info() != Eigen::Success)
    throw std::runtime_error("solve_generalized: factorization of K failed");

  // Shift just below the lowest Ritz estimate once sigma = 0 stagnates; the
  // pivot signs of the factorization certify that sigma stayed below
  // lambda_1, so the smallest eigenvalues stay the dominant ones.
  auto refactor = [&](double lo, double hi) {
    double margin = std::max(0.35 * (hi - lo), 0.05 * std::abs(lo));
    if (!(margin > 0.0)) margin = std::max(1.0, std::abs(lo));
    for (int attempt = 0; attempt < 6; ++attempt) {
      const double s = lo - margin;
      if (!(s > 0.0)) break;
      A = K;
      for (int i = 0; i < n; ++i) A.coeffRef(i, i) -= s * Mdiag(i);
      chol.compute(A);
      bool ok = chol.info() == Eigen::Success;
      if (ok) {
        const Eigen::VectorXd d = chol.vectorD();
        for (int i = 0; i < n; ++i)
          if (d(i) <= 0.0) ok = false;
      }
      if (ok) {
        sigma = s;
        return;
      }
      margin *= 2.0;
    }
    A = K;
    chol.compute(A);
    sigma = 0.0;
  };

  // deterministic start block
  Eigen::MatrixXd X(n, block);
  for (int j = 0; j < block; ++j)
    for (int i = 0; i < n; ++i)
      X(i, j) = std::sin(1.0 + i * (j + 1) * 0.618033988749895);
  m_orthonormalize(Mdiag, X);

  Eigen::VectorXd prev = Eigen::VectorXd::Constant(count, 1e300);
  Eigen::VectorXd ritz;
  double ritz_top = 0.0;
  const int max_iter = 500;
  const int reshift_at = 25;
  Spectrum spec;
  spec.meta = "iterative";

  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::MatrixXd Y(n, block);
    for (int j = 0; j < block; ++j)
      Y.col(j) = chol.solve(Mdiag.cwiseProduct(X.col(j)));
    m_orthonormalize(Mdiag, Y);

    // Rayleigh-Ritz against the unshifted pencil
    Eigen::MatrixXd H = Y.transpose() * (K * Y);
    H = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    X = Y * es.eigenvectors();
    ritz = es.eigenvalues().head(count);
    ritz_top = es.eigenvalues()(block - 1);

    const double scale = std::max(1.0, std::abs(ritz(count - 1)));
    if ((ritz - prev).cwiseAbs().maxCoeff() < 1e-10 * scale) {
      spec.eigenvalues.assign(ritz.data(), ritz.data() + count);
      spec.eigenvectors = X.leftCols(count);
      fill_residuals(K, Mdiag, spec);
      bool ok = true;
      for (int i = 0; i < count; ++i)
        if (spec.residuals[i] >
            1e-8 * std::max(1.0, std::abs(spec.eigenvalues[i])))
          ok = false;
      if (ok) return spec;
      if (sigma == 0.0) refactor(ritz(0), ritz_top);
    }
    prev = ritz;

    if (iter + 1 == reshift_at && sigma == 0.0)
      refactor(ritz(0), ritz_top);
  }

  spec.eigenvalues.assign(prev.data(), prev.data() + count);
  spec.eigenvectors = X.leftCols(count);
  fill_residuals(K, Mdiag, spec);
  double worst = 0.0;
  for (double r : spec.residuals) worst = std::max(worst, r);
  throw std::runtime_error(
      "solve_generalized: iteration did not converge, best residual " +
      std::to_string(worst));
}

}  // namespace

Spectrum solve_generalized(const Eigen::SparseMatrix<double>& K,
                           const Eigen::VectorXd& Mdiag, int count,
                           SolveMethod method) {
  const int n = static_cast<int>(Mdiag.size());
  if (count < 1)
    throw std::invalid_argument("solve_generalized: count must be >= 1");
  if (count > n)
    throw std::invalid_argument("solve_generalized: count exceeds dof");
  if (Mdiag.minCoeff() <= 0.0)
    throw std::runtime_error("solve_generalized: M not positive definite");

  if (method == SolveMethod::Dense || (method == SolveMethod::Auto && n <= 1200))
    return solve_dense(K, Mdiag, count);
  return solve_iterative(K, Mdiag, count);
}

int counting_function(const Spectrum& spec, double lambda) {
  if (spec.eigenvalues.empty())
    throw std::invalid_argument("counting_function: empty spectrum");
  if (lambda > spec.eigenvalues.back())
    throw std::out_of_range(
        "counting_function: lambda beyond the computed range");
  int count = 0;
  for (double v : spec.eigenvalues)
    if (v < lambda) ++count;
  return count;
}

int inertia_count(const Eigen::SparseMatrix<double>& K,
                  const Eigen::VectorXd& Mdiag, double sigma) {
  Eigen::MatrixXd A = Eigen::MatrixXd(K);
  A.diagonal() -= sigma * Mdiag;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  const Eigen::VectorXd d = ldlt.vectorD();
  int negatives = 0;
  for (int i = 0; i < d.size(); ++i)
    if (d(i) < 0.0) ++negatives;
  return negatives;
}

}  // namespace hypspec
