#ifndef DGELAST_MESH_HPP
#define DGELAST_MESH_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "dgelast/types.hpp"

namespace dgelast {

enum class BoundaryTag { interior, dirichlet, neumann };

/// One mesh edge. Interior edges reference two elements ("plus" is the one
/// with the smaller element index), boundary edges only the plus side.
/// unit_normal points from plus to minus, i.e. out of plus_element; on the
/// boundary it is the outward normal of the domain.
struct Edge {
  std::array<int, 2> endpoints{-1, -1}; // vertex indices, endpoints[0] < endpoints[1]
  int plus_element = -1;
  int minus_element = -1; // -1 on the boundary
  Vec2 unit_normal = Vec2::Zero();
  double length = 0.0;
  BoundaryTag tag = BoundaryTag::interior;

  bool is_boundary() const { return minus_element < 0; }
};

/// Structured triangular mesh of an axis-aligned rectangle. Immutable once
/// built; every query below is safe for concurrent readers.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> elements; // counterclockwise vertex triples
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> element_edges; // edge id of local edge k = (v_k, v_{k+1})
  Rect domain;
  double h_cell = 0.0;     // axis cell size (max of dx, dy for anisotropic grids)
  double h_diameter = 0.0; // max element diameter
  int level = 0;           // refinement index, 0 for meshes not built by level

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
};

/// Affine map x = origin + J * (xi, eta) from the reference triangle
/// {(0,0),(1,0),(0,1)} to a physical element.
struct ElementGeometry {
  Vec2 origin;
  Mat2 jacobian;
  Mat2 jacobian_inv;
  double det = 0.0; // equals 2 * area
  double area = 0.0;

  Vec2 to_physical(const Vec2& ref) const { return origin + jacobian * ref; }
  Vec2 to_reference(const Vec2& x) const { return jacobian_inv * (x - origin); }
};

/// Predicate deciding whether a boundary point belongs to the Dirichlet part.
using BoundaryPredicate = std::function<bool(const Vec2&)>;

/// nx-by-ny grid of rectangular cells, each split into two triangles along
/// the lower-left-to-upper-right diagonal. All boundary edges start tagged
/// dirichlet.
Mesh build_grid(int nx, int ny, const Rect& domain, std::int64_t max_cells = (std::int64_t{1} << 24));

/// Uniform square-cell mesh with h_cell = domain.width() * 2^-level / 2, so
/// level 1 on (-1,1)^2 gives a 4x4 cell grid with h_cell = 0.5.
Mesh build_structured(int level, const Rect& domain, std::int64_t max_cells = (std::int64_t{1} << 24));

/// Retags every boundary edge: dirichlet where the predicate holds at the
/// edge midpoint, neumann elsewhere. Interior edges are untouched.
Mesh classify_boundary(Mesh mesh, const BoundaryPredicate& dirichlet_region);

ElementGeometry element_geometry(const Mesh& mesh, int element);

/// Outward unit normal of `element` on its edge (a, b); (a, b) must be two of
/// the element's vertices.
Vec2 outward_normal(const Mesh& mesh, int element, int a, int b);

/// Local edge index k in {0,1,2} of `element` whose vertex set is {a, b},
/// plus whether the local direction v_k -> v_{k+1} runs b -> a.
struct LocalEdge {
  int index = -1;
  bool reversed = false;
};
LocalEdge find_local_edge(const Mesh& mesh, int element, int a, int b);

/// Line-oriented text dump (debugging aid, not a stable format).
void dump_mesh(const Mesh& mesh, std::ostream& os);

} // namespace dgelast

#endif
