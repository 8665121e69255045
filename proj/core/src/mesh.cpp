#include "dgelast/mesh.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <utility>

#include "dgelast/errors.hpp"

namespace dgelast {

namespace {

struct EdgeBuild {
  int plus = -1;
  int minus = -1;
  int order = 0; // first-appearance rank, keeps edge numbering deterministic
};

} // namespace

Mesh build_grid(int nx, int ny, const Rect& domain, std::int64_t max_cells) {
  if (nx < 1 || ny < 1) throw ContractError("build_grid: nx and ny must be positive");
  if (domain.degenerate()) throw ContractError("build_grid: degenerate domain");
  if (static_cast<std::int64_t>(nx) * ny > max_cells)
    throw ResourceLimitError("build_grid: cell count " + std::to_string(static_cast<std::int64_t>(nx) * ny) +
                             " exceeds maximum " + std::to_string(max_cells));

  Mesh mesh;
  mesh.domain = domain;
  const double dx = domain.width() / nx;
  const double dy = domain.height() / ny;
  mesh.h_cell = std::max(dx, dy);
  mesh.h_diameter = std::hypot(dx, dy);

  mesh.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.vertices.emplace_back(domain.x0 + i * dx, domain.y0 + j * dy);

  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };

  // Cells split along the lower-left-to-upper-right diagonal; both triangles
  // are counterclockwise.
  mesh.elements.reserve(static_cast<std::size_t>(nx) * ny * 2);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int ll = vid(i, j), lr = vid(i + 1, j);
      const int ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
      mesh.elements.push_back({ll, lr, ur});
      mesh.elements.push_back({ll, ur, ul});
    }
  }

  // Gather edges; plus element = smaller element index = first appearance.
  std::map<std::pair<int, int>, EdgeBuild> table;
  int order = 0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto& el = mesh.elements[e];
    for (int k = 0; k < 3; ++k) {
      const int a = std::min(el[k], el[(k + 1) % 3]);
      const int b = std::max(el[k], el[(k + 1) % 3]);
      auto [it, inserted] = table.try_emplace({a, b});
      if (inserted) {
        it->second.plus = e;
        it->second.order = order++;
      } else {
        it->second.minus = e;
      }
    }
  }

  mesh.edges.resize(table.size());
  for (const auto& [key, build] : table) {
    Edge edge;
    edge.endpoints = {key.first, key.second};
    edge.plus_element = build.plus;
    edge.minus_element = build.minus;
    edge.length = (mesh.vertices[key.second] - mesh.vertices[key.first]).norm();
    edge.tag = build.minus < 0 ? BoundaryTag::dirichlet : BoundaryTag::interior;
    mesh.edges[build.order] = edge;
  }
  for (auto& edge : mesh.edges)
    edge.unit_normal = outward_normal(mesh, edge.plus_element, edge.endpoints[0], edge.endpoints[1]);

  mesh.element_edges.assign(mesh.elements.size(), {-1, -1, -1});
  for (int id = 0; id < mesh.n_edges(); ++id) {
    const Edge& edge = mesh.edges[id];
    for (int side = 0; side < 2; ++side) {
      const int e = side == 0 ? edge.plus_element : edge.minus_element;
      if (e < 0) continue;
      mesh.element_edges[e][find_local_edge(mesh, e, edge.endpoints[0], edge.endpoints[1]).index] = id;
    }
  }
  return mesh;
}

Mesh build_structured(int level, const Rect& domain, std::int64_t max_cells) {
  if (level < 1) throw ContractError("build_structured: level must be >= 1");
  if (domain.degenerate()) throw ContractError("build_structured: degenerate domain");

  // h_cell = width * 2^-level / 2, i.e. 2^(level+1) cells across the width.
  const std::int64_t nx = std::int64_t{1} << (level + 1);
  const double h = domain.width() / static_cast<double>(nx);
  const double ny_real = domain.height() / h;
  const auto ny = static_cast<std::int64_t>(std::llround(ny_real));
  if (ny < 1 || std::abs(ny_real - static_cast<double>(ny)) > 1e-9)
    throw ContractError("build_structured: domain height must be a multiple of the cell size");
  if (nx > (std::int64_t{1} << 30) || ny > (std::int64_t{1} << 30) || nx * ny > max_cells)
    throw ResourceLimitError("build_structured: level " + std::to_string(level) + " exceeds the cell maximum");

  Mesh mesh = build_grid(static_cast<int>(nx), static_cast<int>(ny), domain, max_cells);
  mesh.level = level;
  return mesh;
}

Mesh classify_boundary(Mesh mesh, const BoundaryPredicate& dirichlet_region) {
  for (auto& edge : mesh.edges) {
    if (!edge.is_boundary()) continue;
    const Vec2 mid = 0.5 * (mesh.vertices[edge.endpoints[0]] + mesh.vertices[edge.endpoints[1]]);
    edge.tag = dirichlet_region(mid) ? BoundaryTag::dirichlet : BoundaryTag::neumann;
  }
  return mesh;
}

ElementGeometry element_geometry(const Mesh& mesh, int element) {
  if (element < 0 || element >= mesh.n_elements())
    throw ContractError("element_geometry: element index out of range");
  const auto& el = mesh.elements[element];
  const Vec2& p0 = mesh.vertices[el[0]];

  ElementGeometry geom;
  geom.origin = p0;
  geom.jacobian.col(0) = mesh.vertices[el[1]] - p0;
  geom.jacobian.col(1) = mesh.vertices[el[2]] - p0;
  geom.det = geom.jacobian.determinant();
  if (geom.det <= 0.0)
    throw GeometryError("element_geometry: degenerate or inverted element " + std::to_string(element));
  geom.area = 0.5 * geom.det;
  geom.jacobian_inv = geom.jacobian.inverse();
  return geom;
}

LocalEdge find_local_edge(const Mesh& mesh, int element, int a, int b) {
  const auto& el = mesh.elements[element];
  for (int k = 0; k < 3; ++k) {
    const int va = el[k], vb = el[(k + 1) % 3];
    if (va == a && vb == b) return {k, false};
    if (va == b && vb == a) return {k, true};
  }
  throw ContractError("find_local_edge: edge (" + std::to_string(a) + "," + std::to_string(b) +
                      ") not part of element " + std::to_string(element));
}

Vec2 outward_normal(const Mesh& mesh, int element, int a, int b) {
  const LocalEdge local = find_local_edge(mesh, element, a, b);
  const auto& el = mesh.elements[element];
  const Vec2& pa = mesh.vertices[el[local.index]];
  const Vec2& pb = mesh.vertices[el[(local.index + 1) % 3]];
  // For a counterclockwise element the right-hand normal of v_k -> v_{k+1}
  // points outward.
  const Vec2 t = pb - pa;
  return Vec2(t.y(), -t.x()) / t.norm();
}

void dump_mesh(const Mesh& mesh, std::ostream& os) {
  os << "# dgelast mesh: vertices=" << mesh.n_vertices() << " elements=" << mesh.n_elements()
     << " edges=" << mesh.n_edges() << " h_cell=" << mesh.h_cell << " level=" << mesh.level << "\n";
  os << "# v <id> <x> <y>\n";
  for (int i = 0; i < mesh.n_vertices(); ++i)
    os << "v " << i << " " << mesh.vertices[i].x() << " " << mesh.vertices[i].y() << "\n";
  os << "# e <id> <v0> <v1> <v2>\n";
  for (int i = 0; i < mesh.n_elements(); ++i)
    os << "e " << i << " " << mesh.elements[i][0] << " " << mesh.elements[i][1] << " " << mesh.elements[i][2] << "\n";
  os << "# s <id> <v0> <v1> <plus> <minus> <tag> <nx> <ny>\n";
  for (int i = 0; i < mesh.n_edges(); ++i) {
    const Edge& edge = mesh.edges[i];
    const char* tag = edge.tag == BoundaryTag::interior ? "interior"
                      : edge.tag == BoundaryTag::dirichlet ? "dirichlet"
                                                           : "neumann";
    os << "s " << i << " " << edge.endpoints[0] << " " << edge.endpoints[1] << " " << edge.plus_element << " "
       << edge.minus_element << " " << tag << " " << edge.unit_normal.x() << " " << edge.unit_normal.y() << "\n";
  }
}

} // namespace dgelast
