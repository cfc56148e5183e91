#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "hdg/basis.hpp"
#include "hdg/projections.hpp"

using namespace hdg;

namespace {

// reference triangle (0,0)-(1,0)-(0,1) as a one-element mesh
Mesh reference_triangle() {
  Mesh m;
  m.dim = 2;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  m.elements.push_back({ElementShape::Triangle, {0, 1, 2}});
  compute_element_geometry(m);
  build_face_topology(m);
  return m;
}

Mesh reference_tetrahedron() {
  Mesh m;
  m.dim = 3;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  m.elements.push_back({ElementShape::Tetrahedron, {0, 1, 2, 3}});
  compute_element_geometry(m);
  build_face_topology(m);
  return m;
}

Mesh unit_square_rect() {
  Mesh m;
  m.dim = 2;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
  m.elements.push_back({ElementShape::Rectangle, {0, 1, 2, 3}});
  compute_element_geometry(m);
  build_face_topology(m);
  return m;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

double quad_integrate(const QuadratureRule& rule,
                      const std::function<double(const Vec3&)>& f) {
  double s = 0.0;
  for (size_t i = 0; i < rule.points.size(); ++i) s += rule.weights[i] * f(rule.points[i]);
  return s;
}

}  // namespace

TEST_CASE("polynomial space dimensions") {
  CHECK(poly_space_dim(0, 2) == 1);
  CHECK(poly_space_dim(2, 2) == 6);
  CHECK(poly_space_dim(3, 3) == 20);
  CHECK(poly_space_dim(1, 1) == 2);
}

TEST_CASE("element basis counts and gradients") {
  const Mesh tri = reference_triangle();
  CHECK(ElementBasis(tri, 0, 0).size() == 1);
  CHECK(ElementBasis(tri, 0, 2).size() == 6);
  // degree-0 basis is the constant 1
  CHECK(ElementBasis(tri, 0, 0).eval(Vec3(0.3, 0.2, 0))[0] == doctest::Approx(1.0));

  const Mesh tet = reference_tetrahedron();
  const ElementBasis b1(tet, 0, 1);
  // graded lex: after the constant, the (1,0,0) monomial comes first;
  // its gradient is (1/h_K, 0, 0) everywhere
  const double h = tet.elements[0].diameter;
  const Eigen::MatrixXd g = b1.grad(Vec3(0.1, 0.2, 0.3));
  CHECK(g(1, 0) == doctest::Approx(1.0 / h).epsilon(1e-14));
  CHECK(g(1, 1) == doctest::Approx(0.0));
  CHECK(g(1, 2) == doctest::Approx(0.0));
}

TEST_CASE("face basis counts and segment mass matrix") {
  const Mesh sq = unit_square_rect();
  CHECK(FaceBasis(sq, 0, 0).size() == 1);

  const Mesh tet = reference_tetrahedron();
  CHECK(FaceBasis(tet, 0, 2).size() == 6);  // C(4,2) on a planar 3D face

  // segment of length L: basis {1, s/L}, mass matrix diag(L, L/12)
  const double L = sq.faces[0].area;
  const Eigen::MatrixXd M = face_mass_matrix(sq, 0, 1);
  CHECK(M(0, 0) == doctest::Approx(L).epsilon(1e-13));
  CHECK(M(1, 1) == doctest::Approx(L / 12).epsilon(1e-13));
  CHECK(std::abs(M(0, 1)) < 1e-14);
}

TEST_CASE("quadrature spot checks") {
  // 2-point Gauss on [0,1] integrates x^3 exactly
  const auto seg = quadrature_segment(Vec3(0, 0, 0), Vec3(1, 0, 0), 3);
  CHECK(seg.points.size() == 2);
  CHECK(quad_integrate(seg, [](const Vec3& p) { return std::pow(p.x(), 3); }) ==
        doctest::Approx(0.25).epsilon(1e-14));

  const Mesh tri = reference_triangle();
  const auto trule = quadrature_element(tri, 0, 2);
  CHECK(quad_integrate(trule, [](const Vec3& p) { return p.x() * p.y(); }) ==
        doctest::Approx(1.0 / 24).epsilon(1e-14));

  const Mesh tet = reference_tetrahedron();
  CHECK(quadrature_element(tet, 0, 0).weights.sum() ==
        doctest::Approx(1.0 / 6).epsilon(1e-14));

  CHECK_THROWS_AS(quadrature_segment(Vec3(0, 0, 0), Vec3(1, 0, 0), -1),
                  std::invalid_argument);
}

TEST_CASE("quadrature monomial exactness on reference shapes") {
  const Mesh tri = reference_triangle();
  const Mesh tet = reference_tetrahedron();
  const Mesh sq = unit_square_rect();
  for (int deg = 0; deg <= 10; ++deg) {
    // triangle: int x^a y^b = a! b! / (a+b+2)!
    const auto tr = quadrature_element(tri, 0, deg);
    for (int a = 0; a + 0 <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b) {
        const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
        const double got = quad_integrate(
            tr, [&](const Vec3& p) { return std::pow(p.x(), a) * std::pow(p.y(), b); });
        CHECK(got == doctest::Approx(exact).epsilon(1e-12));
      }
    // square: int x^a y^b = 1/((a+1)(b+1))
    const auto qr = quadrature_element(sq, 0, deg);
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b) {
        const double got = quad_integrate(
            qr, [&](const Vec3& p) { return std::pow(p.x(), a) * std::pow(p.y(), b); });
        CHECK(got == doctest::Approx(1.0 / ((a + 1.0) * (b + 1.0))).epsilon(1e-12));
      }
    // tetrahedron: int x^a y^b z^c = a! b! c! / (a+b+c+3)!
    const auto ter = quadrature_element(tet, 0, deg);
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b)
        for (int c = 0; a + b + c <= deg; ++c) {
          const double exact =
              factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
          const double got = quad_integrate(ter, [&](const Vec3& p) {
            return std::pow(p.x(), a) * std::pow(p.y(), b) * std::pow(p.z(), c);
          });
          CHECK(got == doctest::Approx(exact).epsilon(1e-12));
        }
  }
}

TEST_CASE("basis gradients match finite differences") {
  const Mesh mesh = build_unit_square_simplex(2);
  const Mesh cube = build_unit_cube_simplex(1);
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> unif(0.2, 0.8);
  for (const Mesh* m : {&mesh, &cube}) {
    for (int e : {0, 1}) {
      const ElementBasis basis(*m, e, 3);
      const double h = m->elements[e].diameter;
      const double step = 1e-6 * h;
      for (int trial = 0; trial < 100; ++trial) {
        Vec3 p(unif(rng), unif(rng), m->dim == 3 ? unif(rng) : 0.0);
        const Eigen::MatrixXd g = basis.grad(p);
        for (int dl = 0; dl < m->dim; ++dl) {
          Vec3 dp = Vec3::Zero();
          dp[dl] = step;
          const Eigen::VectorXd fd = (basis.eval(p + dp) - basis.eval(p - dp)) / (2 * step);
          for (int i = 0; i < basis.size(); ++i) {
            const double scale = std::max(std::abs(g(i, dl)), 1.0);
            CHECK(std::abs(fd[i] - g(i, dl)) <= 1e-6 * scale);
          }
        }
      }
    }
  }
}

TEST_CASE("mass matrix conditioning is h-independent") {
  double prev_cond = 0.0;
  int level = 0;
  for (int n : {2, 4, 8}) {
    const Mesh m = build_unit_square_simplex(n);
    const Eigen::MatrixXd M = element_mass_matrix(m, 0, 3);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    const double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    if (level > 0) CHECK(std::abs(cond / prev_cond - 1.0) < 0.05);
    prev_cond = cond;
    ++level;
  }
}
