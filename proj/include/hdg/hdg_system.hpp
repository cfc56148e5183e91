// HDG scheme for the mixed-form Poisson problem with projected-jump
// stabilization: per-element assembly, static condensation onto the face
// traces, global trace system, field recovery, and the scheme's bilinear
// form for invariant checks.
//
// Unknowns per element: flux q in [P^k(K)]^d, scalar u in P^{k+1}(K); per
// face: trace u-hat in P^k(F), zero on boundary faces. The numerical flux is
//   q-hat . n = q . n + h_K^{-1} (P_k u - u-hat)
// with P_k the face L2 projection from P^{k+1}(F) traces to P^k(F).

#ifndef HDG_SYSTEM_HPP
#define HDG_SYSTEM_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hdg/basis.hpp"
#include "hdg/linsolve.hpp"
#include "hdg/mesh.hpp"
#include "hdg/projections.hpp"

namespace hdg {

// Per-element blocks of the mixed system, arranged symmetrically
// (the scalar equation rows are negated):
//   [ A  B ] [x]   [b]        x = (q, u) interior unknowns,
//   [ B' D ] [y] = [0],       y = stacked face trace coefficients.
struct LocalSystem {
  int elem = -1;
  int k = 0;
  std::vector<int> faces;        // mesh face ids, element_faces order
  std::vector<int> face_offset;  // offsets of each face's dofs within y
  int nq = 0, nu = 0, nt = 0;    // d*dimP^k, dimP^{k+1}, total trace dofs

  Eigen::MatrixXd A;  // (nq+nu) x (nq+nu), symmetric indefinite
  Eigen::MatrixXd B;  // (nq+nu) x nt
  Eigen::MatrixXd D;  // nt x nt
  Eigen::VectorXd b;  // interior load

  // filled by local_condense
  Eigen::MatrixXd K;     // nt x nt Schur complement D - B' A^{-1} B
  Eigen::VectorXd load;  // -B' A^{-1} b
  Eigen::MatrixXd R;     // recovery: x = R y + r
  Eigen::VectorXd r;
  bool condensed = false;
};

struct TraceSystem {
  int k = 0;
  SparseSymmetric matrix;
  Eigen::VectorXd rhs;
  std::vector<int> face_dof;  // face id -> global offset, -1 for boundary
  int face_dofs_per_face = 0;
};

struct SolutionFields {
  const Mesh* mesh = nullptr;
  int k = 0;
  // q coefficients are component-major: coefficient of basis i for
  // component delta sits at index delta * dimP^k + i.
  std::vector<Eigen::VectorXd> q_coeff;
  std::vector<Eigen::VectorXd> u_coeff;
  std::vector<Eigen::VectorXd> trace_coeff;  // zero vectors on boundary faces

  double u_at(int elem, const Vec3& p) const;
  Vec3 q_at(int elem, const Vec3& p) const;
  double trace_at(int face, const Vec3& p) const;
};

LocalSystem local_assemble(const Mesh& mesh, int elem, int k, const ScalarFn& f);

// Eliminate the interior unknowns. Throws if the interior block is
// numerically singular (pivot below 1e-12 x block norm).
void local_condense(LocalSystem& ls);

// Assemble the condensed SPD system over interior-face trace dofs.
TraceSystem assemble_global(const Mesh& mesh, int k, const ScalarFn& f);

// Recover element fields from the solved traces (re-runs the local solves).
SolutionFields recover_fields(const Mesh& mesh, int k, const ScalarFn& f,
                              const TraceSystem& ts, const Eigen::VectorXd& trace);

// The HDG bilinear form evaluated by quadrature on two coefficient bundles.
double apply_bilinear_B(const SolutionFields& a, const SolutionFields& b);

// Max over interior faces of the flux-conservation residual
// |<q-hat . n, mu>_F summed over both sides| over all face test functions,
// normalized by the face measure.
double conservation_residual(const SolutionFields& sol);

}  // namespace hdg

#endif
