#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "hdg/linsolve.hpp"

using namespace hdg;

namespace {

SparseSymmetric dense_to_sparse(const Eigen::MatrixXd& A) {
  SparseSymmetric S;
  S.n = static_cast<int>(A.rows());
  for (int i = 0; i < S.n; ++i)
    for (int j = 0; j <= i; ++j)
      if (A(i, j) != 0.0) S.add(i, j, A(i, j));
  return S;
}

}  // namespace

TEST_CASE("direct solver basics") {
  SparseSymmetric I;
  I.n = 3;
  for (int i = 0; i < 3; ++i) I.add(i, i, 1.0);
  Eigen::VectorXd b(3);
  b << 1, 2, 3;
  CHECK((solve_direct(I, b) - b).norm() == doctest::Approx(0.0));

  SparseSymmetric A;
  A.n = 2;
  A.add(0, 0, 2.0);
  A.add(1, 1, 2.0);
  A.add(1, 0, 1.0);
  Eigen::VectorXd b2(2);
  b2 << 1, 1;
  const Eigen::VectorXd x = solve_direct(A, b2);
  CHECK(x[0] == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(1.0 / 3).epsilon(1e-14));
}

TEST_CASE("solvers agree on random SPD systems") {
  std::mt19937 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd R(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) R(i, j) = gauss(rng);
  const Eigen::MatrixXd A = R.transpose() * R + Eigen::MatrixXd::Identity(50, 50);
  Eigen::VectorXd b(50);
  for (int i = 0; i < 50; ++i) b[i] = gauss(rng);

  const SparseSymmetric S = dense_to_sparse(A);
  const Eigen::VectorXd xd = solve_direct(S, b);
  CHECK((A * xd - b).norm() <= 1e-10 * b.norm());
  const Eigen::VectorXd xi = solve_pcg(S, b, 1e-12, 2000);
  CHECK((A * xi - b).norm() <= 1e-10 * b.norm());
  CHECK((xd - xi).norm() <= 1e-8 * xd.norm());
}

TEST_CASE("pcg edge cases") {
  SparseSymmetric D;
  D.n = 4;
  for (int i = 0; i < 4; ++i) D.add(i, i, double(i + 1));

  // zero rhs -> zero solution without iterating
  CHECK(solve_pcg(D, Eigen::VectorXd::Zero(4)).norm() == 0.0);

  // diagonal matrix: the Jacobi preconditioner is exact, one iteration
  Eigen::VectorXd b(4);
  b << 4, 3, 2, 1;
  const Eigen::VectorXd x = solve_pcg(D, b, 1e-13, 1);
  for (int i = 0; i < 4; ++i)
    CHECK(x[i] == doctest::Approx(b[i] / (i + 1)).epsilon(1e-13));

  // non-convergence reports the residual
  SparseSymmetric A;
  A.n = 2;
  A.add(0, 0, 1.0);
  A.add(1, 1, 1e8);
  A.add(1, 0, 9999.0);
  Eigen::VectorXd b2(2);
  b2 << 1, -1;
  CHECK_THROWS_WITH_AS(solve_pcg(A, b2, 1e-15, 1), doctest::Contains("residual"),
                       std::runtime_error);

  // direct solver rejects non-SPD input
  SparseSymmetric N;
  N.n = 2;
  N.add(0, 0, 1.0);
  N.add(1, 1, -1.0);
  CHECK_THROWS_AS(solve_direct(N, b2), std::runtime_error);
}
