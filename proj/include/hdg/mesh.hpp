// Structured meshes of the unit square/cube with face topology.
//
// Two families are provided: simplicial meshes (triangles in 2D via a
// diagonal split, tetrahedra in 3D via the Kuhn triangulation) and a
// non-matching "ladder" rectangle mesh whose alternate rows are offset by
// half a cell, producing hanging vertices. Faces are the minimal segments
// (or triangles) so that every face is shared by at most two elements;
// trace unknowns live on these minimal faces.

#ifndef HDG_MESH_HPP
#define HDG_MESH_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace hdg {

using Vec3 = Eigen::Vector3d;

enum class ElementShape { Triangle, Tetrahedron, Rectangle };

struct Element {
  ElementShape shape;
  std::vector<int> vertices;
  double volume = 0.0;    // area in 2D
  double diameter = 0.0;  // h_K, max pairwise vertex distance
  Vec3 centroid = Vec3::Zero();
};

struct Face {
  std::vector<int> vertices;          // 2 in 2D (segment), 3 in 3D (triangle)
  std::array<int, 2> elements{-1, -1};  // adjacent element ids; [1] = -1 on boundary
  double area = 0.0;                  // length in 2D
  Vec3 centroid = Vec3::Zero();
  Vec3 normal = Vec3::Zero();         // outward w.r.t. elements[0], unit length
  bool boundary = false;
};

struct Mesh {
  int dim = 2;
  std::vector<Vec3> vertices;
  std::vector<Element> elements;
  std::vector<Face> faces;
  std::vector<std::vector<int>> element_faces;  // faces on the boundary of each element
  double h_max = 0.0;

  int n_interior_faces() const;
};

// n x n grid of squares, each split into two triangles by the diagonal from
// the lower-left to the upper-right corner. h_max = sqrt(2)/n.
Mesh build_unit_square_simplex(int n);

// n x n x n grid of cubes, each split into 6 positively oriented tetrahedra
// by the Kuhn triangulation along the main diagonal.
Mesh build_unit_cube_simplex(int n);

// Non-matching rectangle mesh of the unit square: n rows of height 1/n,
// alternate rows offset horizontally by half a cell (end cells of width
// 1/(2n)), so horizontal interfaces carry hanging vertices. Requires n >= 2
// and n even.
Mesh build_ladder_mesh(int n);

// Recompute element volumes, centroids, diameters and h_max from vertex
// coordinates. Throws on non-positive element volume.
void compute_element_geometry(Mesh& mesh);

// Populate faces/adjacency/normals from the element list. Faces under
// hanging vertices are split into minimal sub-segments, each with at most
// two adjacent elements. Throws on non-conforming input.
void build_face_topology(Mesh& mesh);

// Plain-text dump: header `dim nv ne nf`, then vertices, elements
// (shape tag + vertex ids), faces (vertex ids + adjacent elements + boundary
// flag). Ordering is deterministic (construction order).
void write_mesh(std::ostream& os, const Mesh& mesh);

}  // namespace hdg

#endif
