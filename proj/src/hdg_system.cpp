#include "hdg/hdg_system.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hdg {

namespace {

// +1 if the stored face normal is outward for `elem`, -1 otherwise
double normal_sign(const Face& f, int elem) {
  return f.elements[0] == elem ? 1.0 : -1.0;
}

int quad_degree(int k) { return 2 * (k + 1) + 2; }

}  // namespace

LocalSystem local_assemble(const Mesh& mesh, int elem, int k, const ScalarFn& f) {
  if (k < 0) throw std::invalid_argument("local_assemble: k must be >= 0");
  const int d = mesh.dim;
  const Element& el = mesh.elements[elem];
  const ElementBasis qb(mesh, elem, k);
  const ElementBasis ub(mesh, elem, k + 1);
  const int mq = qb.size(), mu = ub.size();

  LocalSystem ls;
  ls.elem = elem;
  ls.k = k;
  ls.faces = mesh.element_faces[elem];
  ls.nq = d * mq;
  ls.nu = mu;
  const int mf = poly_space_dim(k, d - 1);
  for (size_t i = 0; i < ls.faces.size(); ++i) ls.face_offset.push_back(int(i) * mf);
  ls.nt = int(ls.faces.size()) * mf;

  const int ni = ls.nq + ls.nu;
  ls.A = Eigen::MatrixXd::Zero(ni, ni);
  ls.B = Eigen::MatrixXd::Zero(ni, ls.nt);
  ls.D = Eigen::MatrixXd::Zero(ls.nt, ls.nt);
  ls.b = Eigen::VectorXd::Zero(ni);

  // volume terms: (q,v), -(u, div v), -(f,w)
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(mq, mq);
  Eigen::MatrixXd Aqu = Eigen::MatrixXd::Zero(ls.nq, mu);
  const auto vrule = quadrature_element(mesh, elem, quad_degree(k));
  for (size_t p = 0; p < vrule.points.size(); ++p) {
    const double w = vrule.weights[p];
    const Eigen::VectorXd phi = qb.eval(vrule.points[p]);
    const Eigen::MatrixXd dphi = qb.grad(vrule.points[p]);
    const Eigen::VectorXd psi = ub.eval(vrule.points[p]);
    M.noalias() += w * phi * phi.transpose();
    for (int dl = 0; dl < d; ++dl)
      Aqu.block(dl * mq, 0, mq, mu).noalias() -= w * dphi.col(dl) * psi.transpose();
    ls.b.tail(mu).noalias() -= w * f(vrule.points[p]) * psi;
  }
  for (int dl = 0; dl < d; ++dl) ls.A.block(dl * mq, dl * mq, mq, mq) = M;
  ls.A.block(0, ls.nq, ls.nq, mu) = Aqu;
  ls.A.block(ls.nq, 0, mu, ls.nq) = Aqu.transpose();

  // face terms with the projected-jump stabilization
  const double hinv = 1.0 / el.diameter;
  for (size_t fi = 0; fi < ls.faces.size(); ++fi) {
    const Face& face = mesh.faces[ls.faces[fi]];
    const FaceBasis fb(mesh, ls.faces[fi], k);
    const double sgn = normal_sign(face, elem);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(mf, mf);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mf, mu);
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(mf, ls.nq);
    const auto frule = quadrature_face(mesh, ls.faces[fi], quad_degree(k));
    for (size_t p = 0; p < frule.points.size(); ++p) {
      const double w = frule.weights[p];
      const Eigen::VectorXd muv = fb.eval(frule.points[p]);
      const Eigen::VectorXd psi = ub.eval(frule.points[p]);
      const Eigen::VectorXd phi = qb.eval(frule.points[p]);
      G.noalias() += w * muv * muv.transpose();
      T.noalias() += w * muv * psi.transpose();
      for (int dl = 0; dl < d; ++dl)
        N.block(0, dl * mq, mf, mq).noalias() +=
            (w * sgn * face.normal[dl]) * muv * phi.transpose();
    }
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("local_assemble: degenerate face Gram matrix");
    const Eigen::MatrixXd P = llt.solve(T);  // face projection of u traces

    const int off = ls.face_offset[fi];
    ls.A.block(ls.nq, ls.nq, mu, mu).noalias() -= hinv * T.transpose() * P;
    ls.B.block(0, off, ls.nq, mf) = N.transpose();
    ls.B.block(ls.nq, off, mu, mf) = hinv * T.transpose();
    ls.D.block(off, off, mf, mf) = -hinv * G;
  }
  return ls;
}

void local_condense(LocalSystem& ls) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(ls.A);
  const double scale = ls.A.norm();
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "local_condense: singular interior block on element " << ls.elem
        << " (pivot " << min_pivot << ", scale " << scale << ")";
    throw std::runtime_error(msg.str());
  }
  ls.r = lu.solve(ls.b);
  ls.R = -lu.solve(ls.B);
  // Negated Schur complement, so that the element matrix is PSD and the
  // assembled trace system is SPD.
  ls.K = ls.B.transpose() * lu.solve(ls.B) - ls.D;
  ls.K = 0.5 * (ls.K + ls.K.transpose().eval());
  ls.load = ls.B.transpose() * ls.r;
  ls.condensed = true;
}

TraceSystem assemble_global(const Mesh& mesh, int k, const ScalarFn& f) {
  TraceSystem ts;
  ts.k = k;
  ts.face_dofs_per_face = poly_space_dim(k, mesh.dim - 1);
  ts.face_dof.assign(mesh.faces.size(), -1);
  int ndof = 0;
  for (size_t fi = 0; fi < mesh.faces.size(); ++fi)
    if (!mesh.faces[fi].boundary) {
      ts.face_dof[fi] = ndof;
      ndof += ts.face_dofs_per_face;
    }
  ts.matrix.n = ndof;
  ts.rhs = Eigen::VectorXd::Zero(ndof);

  for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e) {
    LocalSystem ls;
    try {
      ls = local_assemble(mesh, e, k, f);
      local_condense(ls);
    } catch (const std::exception& ex) {
      std::ostringstream msg;
      msg << "assemble_global: element " << e << ": " << ex.what();
      throw std::runtime_error(msg.str());
    }
    const int mf = ts.face_dofs_per_face;
    for (size_t fi = 0; fi < ls.faces.size(); ++fi) {
      const int gi = ts.face_dof[ls.faces[fi]];
      if (gi < 0) continue;
      ts.rhs.segment(gi, mf) += ls.load.segment(ls.face_offset[fi], mf);
      for (size_t fj = 0; fj < ls.faces.size(); ++fj) {
        const int gj = ts.face_dof[ls.faces[fj]];
        if (gj < 0) continue;
        for (int a = 0; a < mf; ++a)
          for (int b2 = 0; b2 < mf; ++b2) {
            const int row = gi + a, col = gj + b2;
            if (row >= col)
              ts.matrix.add(row, col, ls.K(ls.face_offset[fi] + a,
                                           ls.face_offset[fj] + b2));
          }
      }
    }
  }
  return ts;
}

SolutionFields recover_fields(const Mesh& mesh, int k, const ScalarFn& f,
                              const TraceSystem& ts, const Eigen::VectorXd& trace) {
  if (trace.size() != ts.matrix.n)
    throw std::invalid_argument("recover_fields: trace dimension mismatch");
  const int d = mesh.dim;
  const int mq = poly_space_dim(k, d);
  const int mf = ts.face_dofs_per_face;

  SolutionFields sol;
  sol.mesh = &mesh;
  sol.k = k;
  sol.trace_coeff.resize(mesh.faces.size());
  for (size_t fi = 0; fi < mesh.faces.size(); ++fi) {
    const int gi = ts.face_dof[fi];
    sol.trace_coeff[fi] =
        gi < 0 ? Eigen::VectorXd::Zero(mf) : trace.segment(gi, mf).eval();
  }
  sol.q_coeff.resize(mesh.elements.size());
  sol.u_coeff.resize(mesh.elements.size());
  for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e) {
    LocalSystem ls = local_assemble(mesh, e, k, f);
    local_condense(ls);
    Eigen::VectorXd y(ls.nt);
    for (size_t fi = 0; fi < ls.faces.size(); ++fi)
      y.segment(ls.face_offset[fi], mf) = sol.trace_coeff[ls.faces[fi]];
    const Eigen::VectorXd x = ls.R * y + ls.r;
    sol.q_coeff[e] = x.head(d * mq);
    sol.u_coeff[e] = x.tail(ls.nu);
  }
  return sol;
}

double SolutionFields::u_at(int elem, const Vec3& p) const {
  const ElementBasis ub(*mesh, elem, k + 1);
  return ub.eval(p).dot(u_coeff[elem]);
}

Vec3 SolutionFields::q_at(int elem, const Vec3& p) const {
  const ElementBasis qb(*mesh, elem, k);
  const Eigen::VectorXd phi = qb.eval(p);
  const int mq = qb.size();
  Vec3 q = Vec3::Zero();
  for (int dl = 0; dl < mesh->dim; ++dl)
    q[dl] = phi.dot(q_coeff[elem].segment(dl * mq, mq));
  return q;
}

double SolutionFields::trace_at(int face, const Vec3& p) const {
  const FaceBasis fb(*mesh, face, k);
  return fb.eval(p).dot(trace_coeff[face]);
}

double apply_bilinear_B(const SolutionFields& a, const SolutionFields& b) {
  if (a.mesh != b.mesh || a.k != b.k)
    throw std::invalid_argument("apply_bilinear_B: mismatched discretizations");
  const Mesh& mesh = *a.mesh;
  const int k = a.k;
  const int d = mesh.dim;
  double result = 0.0;

  for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e) {
    const ElementBasis qb(mesh, e, k);
    const ElementBasis ub(mesh, e, k + 1);
    const int mq = qb.size();
    const auto vrule = quadrature_element(mesh, e, quad_degree(k));
    for (size_t p = 0; p < vrule.points.size(); ++p) {
      const double w = vrule.weights[p];
      const Eigen::VectorXd phi = qb.eval(vrule.points[p]);
      const Eigen::MatrixXd dphi = qb.grad(vrule.points[p]);
      const Eigen::VectorXd psi = ub.eval(vrule.points[p]);
      double qq = 0.0, div_qa = 0.0, div_qb = 0.0;
      for (int dl = 0; dl < d; ++dl) {
        qq += phi.dot(a.q_coeff[e].segment(dl * mq, mq)) *
              phi.dot(b.q_coeff[e].segment(dl * mq, mq));
        div_qa += dphi.col(dl).dot(a.q_coeff[e].segment(dl * mq, mq));
        div_qb += dphi.col(dl).dot(b.q_coeff[e].segment(dl * mq, mq));
      }
      const double ua = psi.dot(a.u_coeff[e]);
      const double ub_v = psi.dot(b.u_coeff[e]);
      result += w * (qq - ua * div_qb - div_qa * ub_v);
    }
    // face terms
    const double hinv = 1.0 / mesh.elements[e].diameter;
    for (int fid : mesh.element_faces[e]) {
      const Face& face = mesh.faces[fid];
      const double sgn = normal_sign(face, e);
      const FaceBasis fb(mesh, fid, k);
      const Eigen::MatrixXd P = projection_matrix_face(mesh, e, fid, k + 1, k);
      const Eigen::VectorXd pa = P * a.u_coeff[e];  // face coeffs of Pi u_a
      const Eigen::VectorXd pb = P * b.u_coeff[e];
      const auto frule = quadrature_face(mesh, fid, quad_degree(k));
      for (size_t p = 0; p < frule.points.size(); ++p) {
        const double w = frule.weights[p];
        const Eigen::VectorXd muv = fb.eval(frule.points[p]);
        const double hat_a = muv.dot(a.trace_coeff[fid]);
        const double hat_b = muv.dot(b.trace_coeff[fid]);
        const double qa_n = sgn * a.q_at(e, frule.points[p]).dot(face.normal);
        const double qb_n = sgn * b.q_at(e, frule.points[p]).dot(face.normal);
        const double pia = muv.dot(pa), pib = muv.dot(pb);
        result += w * (hat_a * qb_n + qa_n * hat_b -
                       hinv * (pia - hat_a) * (pib - hat_b));
      }
    }
  }
  return result;
}

double conservation_residual(const SolutionFields& sol) {
  const Mesh& mesh = *sol.mesh;
  const int k = sol.k;
  double worst = 0.0;
  for (size_t fid = 0; fid < mesh.faces.size(); ++fid) {
    const Face& face = mesh.faces[fid];
    if (face.boundary) continue;
    const FaceBasis fb(mesh, int(fid), k);
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(fb.size());
    const auto frule = quadrature_face(mesh, int(fid), quad_degree(k));
    for (int e : face.elements) {
      const double sgn = normal_sign(face, e);
      const double hinv = 1.0 / mesh.elements[e].diameter;
      const Eigen::MatrixXd P = projection_matrix_face(mesh, e, int(fid), k + 1, k);
      const Eigen::VectorXd pu = P * sol.u_coeff[e];
      for (size_t p = 0; p < frule.points.size(); ++p) {
        const double w = frule.weights[p];
        const Eigen::VectorXd muv = fb.eval(frule.points[p]);
        const double qn = sgn * sol.q_at(e, frule.points[p]).dot(face.normal);
        const double jump = muv.dot(pu) - muv.dot(sol.trace_coeff[fid]);
        rho.noalias() += w * (qn + hinv * jump) * muv;
      }
    }
    worst = std::max(worst, rho.cwiseAbs().maxCoeff() / face.area);
  }
  return worst;
}

}  // namespace hdg
