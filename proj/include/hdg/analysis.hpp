// Manufactured problems, L-infinity and interface L2 error norms, and
// convergence-rate tables.

#ifndef HDG_ANALYSIS_HPP
#define HDG_ANALYSIS_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hdg/hdg_system.hpp"
#include "hdg/mesh.hpp"

namespace hdg {

struct ManufacturedProblem {
  std::string name;
  int dim = 2;
  std::function<double(const Vec3&)> u;
  std::function<Vec3(const Vec3&)> q;  // q = -grad u
  std::function<double(const Vec3&)> f;  // f = div q = -lap u
};

// Known problems: "sine2d", "poly3d", "poly2d-quartic".
ManufacturedProblem manufactured(const std::string& name);

// Max-norm errors (e_q, e_u) sampled per element at the nodes of a
// degree-(2k+4) quadrature rule plus element vertices and face midpoints.
// sample_degree overrides the quadrature degree when >= 0.
std::pair<double, double> linf_error(const SolutionFields& sol,
                                     const ManufacturedProblem& prob,
                                     int sample_degree = -1);

// L2 errors (e_q, e_u) on the mesh-aligned hyperplane {x = coord}, taking
// one-sided traces from each face's first adjacent element. Throws if the
// plane does not coincide with mesh faces.
std::pair<double, double> interface_l2_error(const SolutionFields& sol,
                                             const ManufacturedProblem& prob,
                                             double coord);

struct ErrorRow {
  double h = 0.0;
  std::vector<double> errors;
  std::vector<double> rates;  // empty on the first row
};

struct ErrorReport {
  std::vector<std::string> columns;  // error column names
  std::vector<ErrorRow> rows;
};

// Fit rates between successive levels: r = log(e_prev/e_cur)/log(h_prev/h_cur).
ErrorReport convergence_table(const std::vector<std::string>& columns,
                              const std::vector<std::pair<double, std::vector<double>>>& runs);

// CSV: h,err_<c0>,rate_<c0>,err_<c1>,rate_<c1>,...
void write_csv(std::ostream& os, const ErrorReport& report);

// Aligned markdown table with Error/Rate column pairs.
void write_markdown(std::ostream& os, const ErrorReport& report);

}  // namespace hdg

#endif
