#include "hdg/analysis.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hdg {

ManufacturedProblem manufactured(const std::string& name) {
  ManufacturedProblem p;
  p.name = name;
  if (name == "sine2d") {
    p.dim = 2;
    p.u = [](const Vec3& x) {
      return std::pow(std::sin(M_PI * x.x()), 2) * std::pow(std::sin(M_PI * x.y()), 2);
    };
    p.q = [](const Vec3& x) {
      const double sx = std::sin(M_PI * x.x()), sy = std::sin(M_PI * x.y());
      return Vec3(-M_PI * std::sin(2 * M_PI * x.x()) * sy * sy,
                  -M_PI * sx * sx * std::sin(2 * M_PI * x.y()), 0.0);
    };
    p.f = [](const Vec3& x) {
      const double sx = std::sin(M_PI * x.x()), sy = std::sin(M_PI * x.y());
      return -2 * M_PI * M_PI *
             (std::cos(2 * M_PI * x.x()) * sy * sy + sx * sx * std::cos(2 * M_PI * x.y()));
    };
  } else if (name == "poly3d") {
    p.dim = 3;
    p.u = [](const Vec3& x) {
      return x.x() * (x.x() - 1) * x.y() * (x.y() - 1) * x.z() * (x.z() - 1);
    };
    p.q = [](const Vec3& x) {
      const double gx = x.x() * (x.x() - 1), gy = x.y() * (x.y() - 1),
                   gz = x.z() * (x.z() - 1);
      return Vec3(-(2 * x.x() - 1) * gy * gz, -gx * (2 * x.y() - 1) * gz,
                  -gx * gy * (2 * x.z() - 1));
    };
    p.f = [](const Vec3& x) {
      const double gx = x.x() * (x.x() - 1), gy = x.y() * (x.y() - 1),
                   gz = x.z() * (x.z() - 1);
      return -2 * (gy * gz + gx * gz + gx * gy);
    };
  } else if (name == "poly2d-quartic") {
    p.dim = 2;
    p.u = [](const Vec3& x) {
      return x.x() * (1 - x.x()) * x.y() * (1 - x.y());
    };
    p.q = [](const Vec3& x) {
      return Vec3(-(1 - 2 * x.x()) * x.y() * (1 - x.y()),
                  -x.x() * (1 - x.x()) * (1 - 2 * x.y()), 0.0);
    };
    p.f = [](const Vec3& x) {
      return 2 * (x.y() * (1 - x.y()) + x.x() * (1 - x.x()));
    };
  } else {
    throw std::invalid_argument("manufactured: unknown problem '" + name + "'");
  }
  return p;
}

std::pair<double, double> linf_error(const SolutionFields& sol,
                                     const ManufacturedProblem& prob,
                                     int sample_degree) {
  const Mesh& mesh = *sol.mesh;
  const int deg = sample_degree >= 0 ? sample_degree : 2 * sol.k + 4;
  double eq = 0.0, eu = 0.0;
  for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e) {
    std::vector<Vec3> pts;
    const auto rule = quadrature_element(mesh, e, deg);
    pts.insert(pts.end(), rule.points.begin(), rule.points.end());
    for (int vi : mesh.elements[e].vertices) pts.push_back(mesh.vertices[vi]);
    for (int fid : mesh.element_faces[e]) pts.push_back(mesh.faces[fid].centroid);
    for (const Vec3& p : pts) {
      eu = std::max(eu, std::abs(sol.u_at(e, p) - prob.u(p)));
      const Vec3 dq = sol.q_at(e, p) - prob.q(p);
      for (int dl = 0; dl < mesh.dim; ++dl) eq = std::max(eq, std::abs(dq[dl]));
    }
  }
  return {eq, eu};
}

std::pair<double, double> interface_l2_error(const SolutionFields& sol,
                                             const ManufacturedProblem& prob,
                                             double coord) {
  const Mesh& mesh = *sol.mesh;
  const double tol = 1e-12;
  double eq2 = 0.0, eu2 = 0.0;
  int nfound = 0;
  for (size_t fid = 0; fid < mesh.faces.size(); ++fid) {
    const Face& f = mesh.faces[fid];
    bool on_plane = true;
    for (int vi : f.vertices)
      if (std::abs(mesh.vertices[vi].x() - coord) > tol) on_plane = false;
    if (!on_plane) continue;
    ++nfound;
    const int e = f.elements[0];
    const auto rule = quadrature_face(mesh, int(fid), 2 * (sol.k + 1) + 2);
    for (size_t p = 0; p < rule.points.size(); ++p) {
      const double w = rule.weights[p];
      const double du = sol.u_at(e, rule.points[p]) - prob.u(rule.points[p]);
      const Vec3 dq = sol.q_at(e, rule.points[p]) - prob.q(rule.points[p]);
      eu2 += w * du * du;
      eq2 += w * dq.squaredNorm();
    }
  }
  if (nfound == 0)
    throw std::invalid_argument("interface_l2_error: plane not aligned with mesh faces");
  return {std::sqrt(eq2), std::sqrt(eu2)};
}

ErrorReport convergence_table(
    const std::vector<std::string>& columns,
    const std::vector<std::pair<double, std::vector<double>>>& runs) {
  if (runs.size() < 2)
    throw std::invalid_argument("convergence_table: need at least 2 levels");
  ErrorReport report;
  report.columns = columns;
  for (size_t i = 0; i < runs.size(); ++i) {
    ErrorRow row;
    row.h = runs[i].first;
    row.errors = runs[i].second;
    if (i > 0) {
      const double lh = std::log(runs[i - 1].first / runs[i].first);
      for (size_t c = 0; c < row.errors.size(); ++c)
        row.rates.push_back(std::log(runs[i - 1].second[c] / row.errors[c]) / lh);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_csv(std::ostream& os, const ErrorReport& report) {
  os << "h";
  for (const auto& c : report.columns) os << ",err_" << c << ",rate_" << c;
  os << '\n';
  os << std::scientific << std::setprecision(6);
  for (const auto& row : report.rows) {
    os << row.h;
    for (size_t c = 0; c < row.errors.size(); ++c) {
      os << ',' << row.errors[c] << ',';
      if (row.rates.empty())
        os << "-";
      else
        os << std::fixed << std::setprecision(2) << row.rates[c]
           << std::scientific << std::setprecision(6);
    }
    os << '\n';
  }
}

void write_markdown(std::ostream& os, const ErrorReport& report) {
  os << "| h        |";
  for (const auto& c : report.columns) os << " " << c << " Error | Rate |";
  os << "\n|----------|";
  for (size_t c = 0; c < report.columns.size(); ++c) os << "---------:|-----:|";
  os << '\n';
  for (const auto& row : report.rows) {
    std::ostringstream line;
    line << "| " << std::scientific << std::setprecision(2) << row.h << " |";
    for (size_t c = 0; c < row.errors.size(); ++c) {
      line << " " << std::scientific << std::setprecision(2) << row.errors[c] << " | ";
      if (row.rates.empty())
        line << "-";
      else
        line << std::fixed << std::setprecision(2) << row.rates[c];
      line << " |";
    }
    os << line.str() << '\n';
  }
}

}  // namespace hdg
