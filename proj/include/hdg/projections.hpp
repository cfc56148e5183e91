// Element and face L2 projections: the face projection enters the HDG
// numerical flux; the element projection doubles as a test oracle for
// approximation rates.

#ifndef HDG_PROJECTIONS_HPP
#define HDG_PROJECTIONS_HPP

#include <functional>

#include <Eigen/Dense>

#include "hdg/basis.hpp"
#include "hdg/mesh.hpp"

namespace hdg {

using ScalarFn = std::function<double(const Vec3&)>;

// L2 projection of f onto P^degree(K); returns coefficients in the
// element's monomial basis.  quad_degree < 0 picks 2*degree + 2, which is
// only adequate when f is (close to) polynomial.
Eigen::VectorXd project_element(const Mesh& mesh, int elem, int degree,
                                const ScalarFn& f, int quad_degree = -1);

// L2 projection of g onto P^degree(F); coefficients in the face basis.
Eigen::VectorXd project_face(const Mesh& mesh, int face, int degree,
                             const ScalarFn& g, int quad_degree = -1);

// Matrix mapping coefficients of w in P^{elem_degree}(K) to coefficients of
// the face L2 projection of its trace onto P^{face_degree}(F).
// Size: dim P^{face_degree}(F) x dim P^{elem_degree}(K).
Eigen::MatrixXd projection_matrix_face(const Mesh& mesh, int elem, int face,
                                       int elem_degree, int face_degree);

// Gram (mass) matrix of the element basis under the module quadrature.
Eigen::MatrixXd element_mass_matrix(const Mesh& mesh, int elem, int degree);

// Gram matrix of the face basis.
Eigen::MatrixXd face_mass_matrix(const Mesh& mesh, int face, int degree);

}  // namespace hdg

#endif
