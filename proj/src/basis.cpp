#include "hdg/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace hdg {

int poly_space_dim(int deg, int d) {
  int num = 1, den = 1;
  for (int i = 1; i <= d; ++i) {
    num *= deg + i;
    den *= i;
  }
  return num / den;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // evaluate P_n and P_n' by recurrence
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

int gl_points_for(int degree) { return degree / 2 + 1; }

QuadratureRule triangle_rule(const Vec3& v0, const Vec3& v1, const Vec3& v2,
                             double area, int target_degree) {
  // collapsed tensor rule via the Duffy map (a,b) -> (a, b(1-a))
  const int na = gl_points_for(target_degree + 2);
  const int nb = gl_points_for(target_degree + 1);
  std::vector<double> xa, wa, xb, wb;
  gauss_legendre(na, xa, wa);
  gauss_legendre(nb, xb, wb);
  QuadratureRule rule;
  rule.weights.resize(na * nb);
  int idx = 0;
  for (int i = 0; i < na; ++i) {
    const double a = 0.5 * (xa[i] + 1.0);
    for (int j = 0; j < nb; ++j) {
      const double b = 0.5 * (xb[j] + 1.0);
      const double xr = a, yr = b * (1.0 - a);
      rule.points.push_back(v0 + xr * (v1 - v0) + yr * (v2 - v0));
      rule.weights[idx++] = 0.25 * wa[i] * wb[j] * (1.0 - a) * 2.0 * area;
    }
  }
  return rule;
}

}  // namespace

QuadratureRule quadrature_segment(const Vec3& a, const Vec3& b, int target_degree) {
  if (target_degree < 0) throw std::invalid_argument("quadrature: negative degree");
  const int n = gl_points_for(target_degree);
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  const double len = (b - a).norm();
  QuadratureRule rule;
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = 0.5 * (x[i] + 1.0);
    rule.points.push_back(a + t * (b - a));
    rule.weights[i] = 0.5 * w[i] * len;
  }
  return rule;
}

QuadratureRule quadrature_element(const Mesh& mesh, int elem, int target_degree) {
  if (target_degree < 0) throw std::invalid_argument("quadrature: negative degree");
  const Element& el = mesh.elements[elem];
  const auto& V = mesh.vertices;
  switch (el.shape) {
    case ElementShape::Triangle:
      return triangle_rule(V[el.vertices[0]], V[el.vertices[1]], V[el.vertices[2]],
                           el.volume, target_degree);
    case ElementShape::Rectangle: {
      const Vec3 p0 = V[el.vertices[0]], p2 = V[el.vertices[2]];
      const int n = gl_points_for(target_degree);
      std::vector<double> x, w;
      gauss_legendre(n, x, w);
      QuadratureRule rule;
      rule.weights.resize(n * n);
      const double hx = p2.x() - p0.x(), hy = p2.y() - p0.y();
      int idx = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          rule.points.emplace_back(p0.x() + 0.5 * (x[i] + 1.0) * hx,
                                   p0.y() + 0.5 * (x[j] + 1.0) * hy, 0.0);
          rule.weights[idx++] = 0.25 * w[i] * w[j] * hx * hy;
        }
      return rule;
    }
    case ElementShape::Tetrahedron: {
      // collapsed map (a,b,c) -> (a, b(1-a), c(1-a)(1-b))
      const Vec3 v0 = V[el.vertices[0]], v1 = V[el.vertices[1]],
                 v2 = V[el.vertices[2]], v3 = V[el.vertices[3]];
      const int n = gl_points_for(target_degree + 3);
      std::vector<double> x, w;
      gauss_legendre(n, x, w);
      QuadratureRule rule;
      rule.weights.resize(n * n * n);
      int idx = 0;
      for (int i = 0; i < n; ++i) {
        const double a = 0.5 * (x[i] + 1.0);
        for (int j = 0; j < n; ++j) {
          const double b = 0.5 * (x[j] + 1.0);
          for (int k = 0; k < n; ++k) {
            const double c = 0.5 * (x[k] + 1.0);
            const double xr = a;
            const double yr = b * (1.0 - a);
            const double zr = c * (1.0 - a) * (1.0 - b);
            rule.points.push_back(v0 + xr * (v1 - v0) + yr * (v2 - v0) + zr * (v3 - v0));
            rule.weights[idx++] = 0.125 * w[i] * w[j] * w[k] *
                                  (1.0 - a) * (1.0 - a) * (1.0 - b) * 6.0 * el.volume;
          }
        }
      }
      return rule;
    }
  }
  throw std::invalid_argument("quadrature: unsupported shape");
}

QuadratureRule quadrature_face(const Mesh& mesh, int face, int target_degree) {
  const Face& f = mesh.faces[face];
  if (mesh.dim == 2)
    return quadrature_segment(mesh.vertices[f.vertices[0]],
                              mesh.vertices[f.vertices[1]], target_degree);
  return triangle_rule(mesh.vertices[f.vertices[0]], mesh.vertices[f.vertices[1]],
                       mesh.vertices[f.vertices[2]], f.area, target_degree);
}

// ---------------------------------------------------------------------------
// ElementBasis
// ---------------------------------------------------------------------------

ElementBasis::ElementBasis(const Mesh& mesh, int elem, int degree)
    : degree_(degree), dim_(mesh.dim) {
  if (degree < 0) throw std::invalid_argument("element_basis: degree must be >= 0");
  const Element& el = mesh.elements[elem];
  center_ = el.centroid;
  scale_ = el.diameter;
  // graded lexicographic multi-indices
  for (int total = 0; total <= degree; ++total) {
    if (dim_ == 2) {
      for (int ax = total; ax >= 0; --ax)
        exponents_.push_back({ax, total - ax, 0});
    } else {
      for (int ax = total; ax >= 0; --ax)
        for (int ay = total - ax; ay >= 0; --ay)
          exponents_.push_back({ax, ay, total - ax - ay});
    }
  }
}

Eigen::VectorXd ElementBasis::eval(const Vec3& p) const {
  const Vec3 q = (p - center_) / scale_;
  Eigen::VectorXd out(size());
  for (int i = 0; i < size(); ++i) {
    const auto& a = exponents_[i];
    out[i] = std::pow(q.x(), a[0]) * std::pow(q.y(), a[1]) *
             (dim_ == 3 ? std::pow(q.z(), a[2]) : 1.0);
  }
  return out;
}

Eigen::MatrixXd ElementBasis::grad(const Vec3& p) const {
  const Vec3 q = (p - center_) / scale_;
  Eigen::MatrixXd out(size(), dim_);
  auto mono = [](double x, int e) { return e < 0 ? 0.0 : std::pow(x, e); };
  for (int i = 0; i < size(); ++i) {
    const auto& a = exponents_[i];
    const double px = mono(q.x(), a[0]), py = mono(q.y(), a[1]);
    const double pz = dim_ == 3 ? mono(q.z(), a[2]) : 1.0;
    out(i, 0) = a[0] * mono(q.x(), a[0] - 1) * py * pz / scale_;
    out(i, 1) = px * a[1] * mono(q.y(), a[1] - 1) * pz / scale_;
    if (dim_ == 3) out(i, 2) = px * py * a[2] * mono(q.z(), a[2] - 1) / scale_;
  }
  return out;
}

// ---------------------------------------------------------------------------
// FaceBasis
// ---------------------------------------------------------------------------

FaceBasis::FaceBasis(const Mesh& mesh, int face, int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("face_basis: degree must be >= 0");
  const Face& f = mesh.faces[face];
  if (f.area <= 0.0) throw std::invalid_argument("face_basis: degenerate face");
  fdim_ = mesh.dim - 1;
  origin_ = f.centroid;
  if (fdim_ == 1) {
    t1_ = (mesh.vertices[f.vertices[1]] - mesh.vertices[f.vertices[0]]).normalized();
    t2_ = Vec3::Zero();
    scale_ = f.area;  // segment length
    for (int a = 0; a <= degree; ++a) exponents_.push_back({a, 0});
  } else {
    t1_ = (mesh.vertices[f.vertices[1]] - mesh.vertices[f.vertices[0]]).normalized();
    Vec3 e2 = mesh.vertices[f.vertices[2]] - mesh.vertices[f.vertices[0]];
    t2_ = (e2 - e2.dot(t1_) * t1_).normalized();
    double diam = 0.0;
    for (size_t i = 0; i < f.vertices.size(); ++i)
      for (size_t j = i + 1; j < f.vertices.size(); ++j)
        diam = std::max(diam, (mesh.vertices[f.vertices[i]] -
                               mesh.vertices[f.vertices[j]]).norm());
    scale_ = diam;
    for (int total = 0; total <= degree; ++total)
      for (int ax = total; ax >= 0; --ax) exponents_.push_back({ax, total - ax});
  }
}

Eigen::Vector2d FaceBasis::local(const Vec3& p) const {
  const Vec3 d = p - origin_;
  return Eigen::Vector2d(d.dot(t1_) / scale_, fdim_ == 2 ? d.dot(t2_) / scale_ : 0.0);
}

Eigen::VectorXd FaceBasis::eval(const Vec3& p) const {
  const Eigen::Vector2d s = local(p);
  Eigen::VectorXd out(size());
  for (int i = 0; i < size(); ++i)
    out[i] = std::pow(s[0], exponents_[i][0]) *
             (fdim_ == 2 ? std::pow(s[1], exponents_[i][1]) : 1.0);
  return out;
}

}  // namespace hdg
