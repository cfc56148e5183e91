#include "hdg/projections.hpp"

#include <stdexcept>

namespace hdg {

namespace {

// Solve the Gram system G c = r with a conditioning check.
Eigen::VectorXd solve_gram(const Eigen::MatrixXd& G, const Eigen::VectorXd& r,
                           const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(std::string(what) + ": singular Gram matrix");
  return llt.solve(r);
}

}  // namespace

Eigen::MatrixXd element_mass_matrix(const Mesh& mesh, int elem, int degree) {
  const ElementBasis basis(mesh, elem, degree);
  const auto rule = quadrature_element(mesh, elem, 2 * degree);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const Eigen::VectorXd v = basis.eval(rule.points[q]);
    G.noalias() += rule.weights[q] * v * v.transpose();
  }
  return G;
}

Eigen::MatrixXd face_mass_matrix(const Mesh& mesh, int face, int degree) {
  const FaceBasis basis(mesh, face, degree);
  const auto rule = quadrature_face(mesh, face, 2 * degree);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const Eigen::VectorXd v = basis.eval(rule.points[q]);
    G.noalias() += rule.weights[q] * v * v.transpose();
  }
  return G;
}

Eigen::VectorXd project_element(const Mesh& mesh, int elem, int degree,
                                const ScalarFn& f, int quad_degree) {
  const ElementBasis basis(mesh, elem, degree);
  if (quad_degree < 0) quad_degree = 2 * degree + 2;
  const auto rule = quadrature_element(mesh, elem, quad_degree);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  Eigen::VectorXd r = Eigen::VectorXd::Zero(basis.size());
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const Eigen::VectorXd v = basis.eval(rule.points[q]);
    G.noalias() += rule.weights[q] * v * v.transpose();
    r.noalias() += rule.weights[q] * f(rule.points[q]) * v;
  }
  return solve_gram(G, r, "project_element");
}

Eigen::VectorXd project_face(const Mesh& mesh, int face, int degree,
                             const ScalarFn& g, int quad_degree) {
  const FaceBasis basis(mesh, face, degree);
  if (quad_degree < 0) quad_degree = 2 * degree + 2;
  const auto rule = quadrature_face(mesh, face, quad_degree);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  Eigen::VectorXd r = Eigen::VectorXd::Zero(basis.size());
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const Eigen::VectorXd v = basis.eval(rule.points[q]);
    G.noalias() += rule.weights[q] * v * v.transpose();
    r.noalias() += rule.weights[q] * g(rule.points[q]) * v;
  }
  return solve_gram(G, r, "project_face");
}

Eigen::MatrixXd projection_matrix_face(const Mesh& mesh, int elem, int face,
                                       int elem_degree, int face_degree) {
  const ElementBasis ebasis(mesh, elem, elem_degree);
  const FaceBasis fbasis(mesh, face, face_degree);
  const auto rule = quadrature_face(mesh, face, elem_degree + face_degree + 2);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(fbasis.size(), fbasis.size());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(fbasis.size(), ebasis.size());
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const Eigen::VectorXd fv = fbasis.eval(rule.points[q]);
    const Eigen::VectorXd ev = ebasis.eval(rule.points[q]);
    G.noalias() += rule.weights[q] * fv * fv.transpose();
    B.noalias() += rule.weights[q] * fv * ev.transpose();
  }
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("projection_matrix_face: singular Gram matrix");
  return llt.solve(B);
}

}  // namespace hdg
