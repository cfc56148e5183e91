#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hdg/analysis.hpp"

using namespace hdg;

TEST_CASE("manufactured problem values") {
  const ManufacturedProblem s = manufactured("sine2d");
  CHECK(s.u(Vec3(0.5, 0.5, 0)) == doctest::Approx(1.0).epsilon(1e-14));

  const ManufacturedProblem p3 = manufactured("poly3d");
  CHECK(p3.u(Vec3(0.5, 0.5, 0.5)) == doctest::Approx(-1.0 / 64).epsilon(1e-14));

  CHECK_THROWS_AS(manufactured("nope"), std::invalid_argument);
}

TEST_CASE("manufactured problems vanish on the boundary") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const char* name : {"sine2d", "poly3d", "poly2d-quartic"}) {
    const ManufacturedProblem p = manufactured(name);
    for (int i = 0; i < 1000; ++i) {
      Vec3 x(unif(rng), unif(rng), p.dim == 3 ? unif(rng) : 0.0);
      const int axis = i % p.dim;
      x[axis] = (i / p.dim) % 2 == 0 ? 0.0 : 1.0;
      CHECK(std::abs(p.u(x)) <= 1e-12);
    }
  }
}

TEST_CASE("source terms match the finite-difference Laplacian") {
  std::mt19937 rng(78);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  const double h = 1e-5;
  for (const char* name : {"sine2d", "poly3d", "poly2d-quartic"}) {
    const ManufacturedProblem p = manufactured(name);
    for (int i = 0; i < 1000; ++i) {
      const Vec3 x(unif(rng), unif(rng), p.dim == 3 ? unif(rng) : 0.0);
      double lap = 0.0;
      for (int d = 0; d < p.dim; ++d) {
        Vec3 dp = Vec3::Zero();
        dp[d] = h;
        lap += (p.u(x + dp) - 2 * p.u(x) + p.u(x - dp)) / (h * h);
      }
      const double scale = std::max(1.0, std::abs(p.f(x)));
      CHECK(std::abs(-lap - p.f(x)) <= 1e-4 * scale);
      // q must equal -grad u
      for (int d = 0; d < p.dim; ++d) {
        Vec3 dp = Vec3::Zero();
        dp[d] = h;
        const double du = (p.u(x + dp) - p.u(x - dp)) / (2 * h);
        CHECK(std::abs(p.q(x)[d] + du) <= 1e-6 * std::max(1.0, std::abs(du)));
      }
    }
  }
}

TEST_CASE("convergence table rates") {
  const auto r1 = convergence_table({"e"}, {{0.1, {1e-2}}, {0.05, {2.5e-3}}});
  CHECK(r1.rows[1].rates[0] == doctest::Approx(2.0).epsilon(1e-12));

  // a published pair: 5.79e-5 -> 6.96e-6 under halving gives 3.06
  const auto r2 = convergence_table({"e"}, {{0.1, {5.79e-5}}, {0.05, {6.96e-6}}});
  CHECK(r2.rows[1].rates[0] == doctest::Approx(3.06).epsilon(0.01));

  // constant errors -> rate 0
  const auto r3 = convergence_table({"e"}, {{0.1, {1.0}}, {0.05, {1.0}}});
  CHECK(r3.rows[1].rates[0] == doctest::Approx(0.0));

  // non-halving h sequences use log(e ratio)/log(h ratio)
  const auto r4 = convergence_table({"e"}, {{0.3, {9e-2}}, {0.1, {1e-2}}});
  CHECK(r4.rows[1].rates[0] == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(convergence_table({"e"}, {{0.1, {1.0}}}), std::invalid_argument);
}

TEST_CASE("report writers are deterministic") {
  const auto rep = convergence_table(
      {"q_inf", "u_inf"}, {{0.25, {1e-1, 2e-2}}, {0.125, {5e-2, 5e-3}}});
  std::ostringstream a, b;
  write_csv(a, rep);
  write_csv(b, rep);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 1) == "h");
  CHECK(a.str().find("err_q_inf") != std::string::npos);
  std::ostringstream md;
  write_markdown(md, rep);
  CHECK(md.str().find("| h") != std::string::npos);
}
