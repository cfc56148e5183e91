// Total-degree polynomial bases on elements and faces, with gradients, and
// quadrature rules on triangles, tetrahedra, rectangles, boxes and segments.
//
// Element bases are shifted-scaled monomials ((x - c_K)/h_K)^alpha ordered by
// graded lexicographic multi-index; face bases are monomials in an
// orthonormal in-plane frame anchored at the face centroid, scaled by the
// face diameter.

#ifndef HDG_BASIS_HPP
#define HDG_BASIS_HPP

#include <vector>

#include <Eigen/Dense>

#include "hdg/mesh.hpp"

namespace hdg {

// dim P^deg in d variables = C(deg+d, d)
int poly_space_dim(int deg, int d);

struct QuadratureRule {
  std::vector<Vec3> points;  // physical coordinates
  Eigen::VectorXd weights;   // sum to the element/face measure
};

// Gauss-Legendre rule on the segment [a, b] exact to target_degree.
QuadratureRule quadrature_segment(const Vec3& a, const Vec3& b, int target_degree);

// Quadrature on a mesh element (triangle, tetrahedron or rectangle),
// exact for polynomials up to target_degree. Simplex rules are collapsed
// tensor Gauss-Legendre (Duffy transform); rectangles are tensor products.
QuadratureRule quadrature_element(const Mesh& mesh, int elem, int target_degree);

// Quadrature on a mesh face (segment in 2D, triangle in 3D).
QuadratureRule quadrature_face(const Mesh& mesh, int face, int target_degree);

class ElementBasis {
 public:
  ElementBasis(const Mesh& mesh, int elem, int degree);

  int size() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }
  int dim() const { return dim_; }

  // values of all basis functions at a physical point
  Eigen::VectorXd eval(const Vec3& p) const;
  // gradients, size() x dim()
  Eigen::MatrixXd grad(const Vec3& p) const;

 private:
  int degree_, dim_;
  Vec3 center_;
  double scale_;
  std::vector<std::array<int, 3>> exponents_;  // graded lex order
};

class FaceBasis {
 public:
  FaceBasis(const Mesh& mesh, int face, int degree);

  int size() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }

  // values at a physical point assumed to lie on the face plane
  Eigen::VectorXd eval(const Vec3& p) const;

  // in-plane coordinates of a physical point (diameter-scaled)
  Eigen::Vector2d local(const Vec3& p) const;

 private:
  int degree_;
  int fdim_;  // 1 for segments, 2 for planar 3D faces
  Vec3 origin_;
  Vec3 t1_, t2_;
  double scale_;
  std::vector<std::array<int, 2>> exponents_;
};

}  // namespace hdg

#endif
