#include "hdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace hdg {

namespace {

double element_volume(const Mesh& mesh, const Element& el) {
  const auto& v = mesh.vertices;
  switch (el.shape) {
    case ElementShape::Triangle: {
      Vec3 a = v[el.vertices[1]] - v[el.vertices[0]];
      Vec3 b = v[el.vertices[2]] - v[el.vertices[0]];
      return 0.5 * (a.x() * b.y() - a.y() * b.x());
    }
    case ElementShape::Tetrahedron: {
      Vec3 a = v[el.vertices[1]] - v[el.vertices[0]];
      Vec3 b = v[el.vertices[2]] - v[el.vertices[0]];
      Vec3 c = v[el.vertices[3]] - v[el.vertices[0]];
      return a.cross(b).dot(c) / 6.0;
    }
    case ElementShape::Rectangle: {
      // axis-aligned, vertices in CCW order (ll, lr, ur, ul)
      Vec3 d = v[el.vertices[2]] - v[el.vertices[0]];
      return d.x() * d.y();
    }
  }
  return 0.0;
}

}  // namespace

void compute_element_geometry(Mesh& mesh) {
  mesh.h_max = 0.0;
  for (auto& el : mesh.elements) {
    el.volume = element_volume(mesh, el);
    if (el.volume <= 0.0)
      throw std::runtime_error("mesh: non-positive element volume");
    el.centroid = Vec3::Zero();
    for (int vi : el.vertices) el.centroid += mesh.vertices[vi];
    el.centroid /= static_cast<double>(el.vertices.size());
    el.diameter = 0.0;
    for (size_t i = 0; i < el.vertices.size(); ++i)
      for (size_t j = i + 1; j < el.vertices.size(); ++j)
        el.diameter = std::max(
            el.diameter,
            (mesh.vertices[el.vertices[i]] - mesh.vertices[el.vertices[j]]).norm());
    mesh.h_max = std::max(mesh.h_max, el.diameter);
  }
}

namespace {

// Edges of a 2D element, ordered so the element interior is to the left
// (outward normal = (t_y, -t_x) for tangent t = b - a).
std::vector<std::array<int, 2>> element_edges_2d(const Element& el) {
  const auto& v = el.vertices;
  std::vector<std::array<int, 2>> edges;
  const int nv = static_cast<int>(v.size());
  for (int i = 0; i < nv; ++i) edges.push_back({v[i], v[(i + 1) % nv]});
  return edges;
}

struct EdgeOnLine {
  int elem;
  int va, vb;      // oriented CCW w.r.t. elem
  double ta, tb;   // line parameters, ta < tb after normalization
  bool reversed;   // true if (va,vb) runs against the line direction
};

}  // namespace

int Mesh::n_interior_faces() const {
  int n = 0;
  for (const auto& f : faces)
    if (!f.boundary) ++n;
  return n;
}

Mesh build_unit_square_simplex(int n) {
  if (n < 1) throw std::invalid_argument("build_unit_square_simplex: n must be >= 1");
  Mesh mesh;
  mesh.dim = 2;
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.emplace_back(double(i) / n, double(j) / n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      // diagonal from lower-left (i,j) to upper-right (i+1,j+1)
      mesh.elements.push_back(
          {ElementShape::Triangle, {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)}});
      mesh.elements.push_back(
          {ElementShape::Triangle, {vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)}});
    }
  compute_element_geometry(mesh);
  build_face_topology(mesh);
  return mesh;
}

Mesh build_unit_cube_simplex(int n) {
  if (n < 1) throw std::invalid_argument("build_unit_cube_simplex: n must be >= 1");
  Mesh mesh;
  mesh.dim = 3;
  auto vid = [n](int i, int j, int k) { return (k * (n + 1) + j) * (n + 1) + i; };
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        mesh.vertices.emplace_back(double(i) / n, double(j) / n, double(k) / n);
  // Kuhn triangulation: one tetrahedron per permutation of the axes, all
  // sharing the main diagonal of the cube.
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        for (const auto& p : perms) {
          std::array<int, 3> c = {i, j, k};
          std::vector<int> verts;
          verts.push_back(vid(c[0], c[1], c[2]));
          for (int axis : p) {
            c[axis] += 1;
            verts.push_back(vid(c[0], c[1], c[2]));
          }
          Element el{ElementShape::Tetrahedron, verts};
          // orient positively
          Vec3 a = mesh.vertices[verts[1]] - mesh.vertices[verts[0]];
          Vec3 b = mesh.vertices[verts[2]] - mesh.vertices[verts[0]];
          Vec3 d = mesh.vertices[verts[3]] - mesh.vertices[verts[0]];
          if (a.cross(b).dot(d) < 0.0) std::swap(el.vertices[2], el.vertices[3]);
          mesh.elements.push_back(el);
        }
      }
  compute_element_geometry(mesh);
  build_face_topology(mesh);
  return mesh;
}

Mesh build_ladder_mesh(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("build_ladder_mesh: n must be even and >= 2");
  Mesh mesh;
  mesh.dim = 2;
  // All coordinates are integer multiples of 1/(2n) so shared vertex
  // positions compare bitwise equal.
  const int m = 2 * n;
  std::map<std::pair<int, int>, int> vindex;  // (x half-steps, y half-steps) -> id
  auto vid = [&](int ix2, int iy2) {
    auto it = vindex.find({ix2, iy2});
    if (it != vindex.end()) return it->second;
    int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.emplace_back(double(ix2) / m, double(iy2) / m, 0.0);
    vindex[{ix2, iy2}] = id;
    return id;
  };
  // x breakpoints per row type, in half-steps of 1/(2n)
  auto row_breaks = [&](int row) {
    std::vector<int> xs;
    if (row % 2 == 0) {
      for (int i = 0; i <= n; ++i) xs.push_back(2 * i);
    } else {
      xs.push_back(0);
      for (int i = 0; i < n; ++i) xs.push_back(2 * i + 1);
      xs.push_back(2 * n);
    }
    return xs;
  };
  for (int row = 0; row < n; ++row) {
    const int y0 = 2 * row, y1 = 2 * (row + 1);
    const auto xs = row_breaks(row);
    for (size_t c = 0; c + 1 < xs.size(); ++c) {
      mesh.elements.push_back({ElementShape::Rectangle,
                               {vid(xs[c], y0), vid(xs[c + 1], y0),
                                vid(xs[c + 1], y1), vid(xs[c], y1)}});
    }
  }
  compute_element_geometry(mesh);
  build_face_topology(mesh);
  return mesh;
}

namespace {

void face_topology_2d(Mesh& mesh) {
  // Group oriented element edges by supporting line, then split each line
  // at every endpoint present on it. Minimal sub-segments become faces.
  const double tol = 1e-12;
  const double line_tol = 1e-9;  // distinct lines differ by >= grid spacing
  struct RawEdge {
    double dx, dy, offset;
    int elem, va, vb;
  };
  std::vector<RawEdge> raw;
  for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e) {
    for (const auto& ed : element_edges_2d(mesh.elements[e])) {
      Vec3 a = mesh.vertices[ed[0]], b = mesh.vertices[ed[1]];
      Vec3 t = b - a;
      const double len = t.norm();
      if (len <= tol) throw std::runtime_error("face_topology: degenerate edge");
      t /= len;
      // canonical direction: prefer positive x, then positive y
      Vec3 dir = t;
      if (dir.x() < -line_tol || (std::abs(dir.x()) <= line_tol && dir.y() < 0)) dir = -dir;
      const double offset = dir.y() * a.x() - dir.x() * a.y();
      raw.push_back({dir.x(), dir.y(), offset, e, ed[0], ed[1]});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RawEdge& l, const RawEdge& r) {
    return std::tie(l.dx, l.dy, l.offset) < std::tie(r.dx, r.dy, r.offset);
  });
  std::vector<std::vector<EdgeOnLine>> lines;
  const RawEdge* prev = nullptr;
  for (const auto& re : raw) {
    if (!prev || std::abs(re.dx - prev->dx) > line_tol ||
        std::abs(re.dy - prev->dy) > line_tol ||
        std::abs(re.offset - prev->offset) > line_tol)
      lines.emplace_back();
    prev = &re;
    lines.back().push_back({re.elem, re.va, re.vb, 0, 0, false});
  }
  mesh.faces.clear();
  mesh.element_faces.assign(mesh.elements.size(), {});
  for (auto& edges : lines) {
    // parameterize all edges of the line with one representative direction
    {
      Vec3 a0 = mesh.vertices[edges.front().va], b0 = mesh.vertices[edges.front().vb];
      Vec3 dir = (b0 - a0).normalized();
      if (dir.x() < -line_tol || (std::abs(dir.x()) <= line_tol && dir.y() < 0)) dir = -dir;
      for (auto& ed : edges) {
        const double ta = dir.dot(mesh.vertices[ed.va]);
        const double tb = dir.dot(mesh.vertices[ed.vb]);
        ed.ta = std::min(ta, tb);
        ed.tb = std::max(ta, tb);
        ed.reversed = ta > tb;
      }
    }
    // collect breakpoints along the line
    std::vector<std::pair<double, int>> pts;  // (t, vertex id)
    for (const auto& ed : edges) {
      pts.push_back({ed.reversed ? ed.tb : ed.ta, ed.va});
      pts.push_back({ed.reversed ? ed.ta : ed.tb, ed.vb});
    }
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<double, int>> brk;
    for (const auto& p : pts)
      if (brk.empty() || p.first - brk.back().first > tol) brk.push_back(p);
    // assign each covered sub-interval its adjacent elements
    for (size_t s = 0; s + 1 < brk.size(); ++s) {
      const double t0 = brk[s].first, t1 = brk[s + 1].first;
      const double tm = 0.5 * (t0 + t1);
      std::vector<const EdgeOnLine*> covering;
      for (const auto& ed : edges)
        if (ed.ta < tm && tm < ed.tb) covering.push_back(&ed);
      if (covering.empty()) continue;
      if (covering.size() > 2)
        throw std::runtime_error("face_topology: face fragment bounded by >2 elements");
      Face f;
      f.vertices = {brk[s].second, brk[s + 1].second};
      f.elements[0] = covering[0]->elem;
      if (covering.size() == 2) f.elements[1] = covering[1]->elem;
      f.boundary = covering.size() == 1;
      Vec3 a = mesh.vertices[f.vertices[0]], b = mesh.vertices[f.vertices[1]];
      f.area = (b - a).norm();
      f.centroid = 0.5 * (a + b);
      // outward normal of elements[0]: edge (va,vb) is CCW for its element,
      // outward normal is the right-hand rotation of the tangent
      Vec3 t = (mesh.vertices[covering[0]->vb] - mesh.vertices[covering[0]->va]).normalized();
      f.normal = Vec3(t.y(), -t.x(), 0.0);
      const int fid = static_cast<int>(mesh.faces.size());
      for (const auto* ed : covering) mesh.element_faces[ed->elem].push_back(fid);
      mesh.faces.push_back(std::move(f));
    }
  }
}

void face_topology_3d(Mesh& mesh) {
  // Tetrahedral meshes only: faces match vertex-triple to vertex-triple.
  // Local faces ordered so their vertices are CCW seen from outside.
  static const std::array<std::array<int, 3>, 4> local = {
      {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}}};
  std::map<std::array<int, 3>, int> seen;  // sorted triple -> face id
  mesh.faces.clear();
  mesh.element_faces.assign(mesh.elements.size(), {});
  for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e) {
    const auto& ev = mesh.elements[e].vertices;
    if (ev.size() != 4)
      throw std::runtime_error("face_topology: 3D supports tetrahedra only");
    for (const auto& lf : local) {
      std::array<int, 3> tri = {ev[lf[0]], ev[lf[1]], ev[lf[2]]};
      std::array<int, 3> key = tri;
      std::sort(key.begin(), key.end());
      auto it = seen.find(key);
      if (it == seen.end()) {
        Face f;
        f.vertices = {tri[0], tri[1], tri[2]};
        f.elements[0] = e;
        Vec3 a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
        Vec3 cr = (b - a).cross(c - a);
        f.area = 0.5 * cr.norm();
        f.normal = cr.normalized();
        f.centroid = (a + b + c) / 3.0;
        f.boundary = true;
        const int fid = static_cast<int>(mesh.faces.size());
        seen[key] = fid;
        mesh.element_faces[e].push_back(fid);
        mesh.faces.push_back(std::move(f));
      } else {
        Face& f = mesh.faces[it->second];
        if (f.elements[1] != -1)
          throw std::runtime_error("face_topology: face fragment bounded by >2 elements");
        f.elements[1] = e;
        f.boundary = false;
        mesh.element_faces[e].push_back(it->second);
      }
    }
  }
}

}  // namespace

void build_face_topology(Mesh& mesh) {
  if (mesh.elements.empty())
    throw std::runtime_error("face_topology: no elements");
  if (mesh.dim == 2)
    face_topology_2d(mesh);
  else
    face_topology_3d(mesh);
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os << mesh.dim << ' ' << mesh.vertices.size() << ' ' << mesh.elements.size()
     << ' ' << mesh.faces.size() << '\n';
  for (const auto& v : mesh.vertices) {
    os << v.x() << ' ' << v.y();
    if (mesh.dim == 3) os << ' ' << v.z();
    os << '\n';
  }
  for (const auto& el : mesh.elements) {
    switch (el.shape) {
      case ElementShape::Triangle: os << "tri"; break;
      case ElementShape::Tetrahedron: os << "tet"; break;
      case ElementShape::Rectangle: os << "rect"; break;
    }
    for (int v : el.vertices) os << ' ' << v;
    os << '\n';
  }
  for (const auto& f : mesh.faces) {
    for (int v : f.vertices) os << v << ' ';
    os << f.elements[0] << ' ' << f.elements[1] << ' ' << (f.boundary ? 1 : 0) << '\n';
  }
}

}  // namespace hdg
