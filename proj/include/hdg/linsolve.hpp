// Solvers for the condensed SPD trace system: sparse Cholesky (default) and
// Jacobi-preconditioned conjugate gradients.

#ifndef HDG_LINSOLVE_HPP
#define HDG_LINSOLVE_HPP

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace hdg {

// Symmetric sparse matrix stored as lower-triangle triplets.
struct SparseSymmetric {
  int n = 0;
  std::vector<Eigen::Triplet<double>> lower;  // row >= col

  void add(int row, int col, double value);  // accepts either triangle
  Eigen::SparseMatrix<double> to_eigen() const;  // full symmetric matrix
};

// Sparse Cholesky (AMD-ordered). Throws on a non-positive pivot.
Eigen::VectorXd solve_direct(const SparseSymmetric& A, const Eigen::VectorXd& b);

// Jacobi-preconditioned CG. Throws on non-convergence, reporting the final
// residual.
Eigen::VectorXd solve_pcg(const SparseSymmetric& A, const Eigen::VectorXd& b,
                          double tol = 1e-11, int max_iter = 10000);

}  // namespace hdg

#endif
