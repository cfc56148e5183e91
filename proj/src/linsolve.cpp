#include "hdg/linsolve.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/SparseCholesky>

namespace hdg {

void SparseSymmetric::add(int row, int col, double value) {
  if (row < col) std::swap(row, col);
  lower.emplace_back(row, col, value);
}

Eigen::SparseMatrix<double> SparseSymmetric::to_eigen() const {
  std::vector<Eigen::Triplet<double>> full;
  full.reserve(2 * lower.size());
  for (const auto& t : lower) {
    full.push_back(t);
    if (t.row() != t.col()) full.emplace_back(t.col(), t.row(), t.value());
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(full.begin(), full.end());
  return A;
}

Eigen::VectorXd solve_direct(const SparseSymmetric& A, const Eigen::VectorXd& b) {
  const Eigen::SparseMatrix<double> M = A.to_eigen();
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(M);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("solve_direct: Cholesky failed (matrix not SPD)");
  return llt.solve(b);
}

Eigen::VectorXd solve_pcg(const SparseSymmetric& A, const Eigen::VectorXd& b,
                          double tol, int max_iter) {
  const Eigen::SparseMatrix<double> M = A.to_eigen();
  const double bnorm = b.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(A.n);
  if (bnorm == 0.0) return x;

  Eigen::VectorXd dinv(A.n);
  for (int i = 0; i < A.n; ++i) {
    const double d = M.coeff(i, i);
    if (d <= 0.0) throw std::runtime_error("solve_pcg: non-positive diagonal");
    dinv[i] = 1.0 / d;
  }

  Eigen::VectorXd r = b;
  Eigen::VectorXd z = dinv.asDiagonal() * r;
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  for (int it = 0; it < max_iter; ++it) {
    if (r.norm() <= tol * bnorm) return x;
    const Eigen::VectorXd Ap = M * p;
    const double alpha = rz / p.dot(Ap);
    x += alpha * p;
    r -= alpha * Ap;
    if (r.norm() <= tol * bnorm) return x;
    z = dinv.asDiagonal() * r;
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  std::ostringstream msg;
  msg << "solve_pcg: no convergence after " << max_iter
      << " iterations, relative residual " << r.norm() / bnorm;
  throw std::runtime_error(msg.str());
}

}  // namespace hdg
