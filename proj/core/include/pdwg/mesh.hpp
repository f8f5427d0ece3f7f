#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pdwg {

using Point2 = Eigen::Vector2d;

enum class BoundaryTag { Interior, Dirichlet, Neumann };

std::string to_string(BoundaryTag tag);

/// The five test geometries, each tiled by unit cells.
enum class DomainId {
  Omega1,  ///< (0,1)^2
  Omega2,  ///< L-shape A1=(0,0) .. A6=(0,2)
  Omega3,  ///< (-1,1)^2
  Omega4,  ///< (-1,1)^2 cut along (0,1)x{0}
  Omega5,  ///< L-shape B1=(-1,-1) .. B6=(-1,1)
};

std::string to_string(DomainId domain);
/// Boundary polygon of the domain (counter-clockwise). The crack of Omega4 is
/// not part of this outline.
std::vector<Point2> domain_outline(DomainId domain);
double domain_area(DomainId domain);

/// Maps a boundary edge (midpoint, outward unit normal) to Dirichlet or Neumann.
using BoundaryPredicate =
    std::function<BoundaryTag(const Point2& midpoint, const Point2& normal)>;

struct Edge {
  std::array<int, 2> vertices;
  /// Adjacent triangles; the second entry is -1 on the boundary.
  std::array<int, 2> elements{-1, -1};
  /// Local edge index of this edge inside each adjacent triangle.
  std::array<int, 2> local_index{-1, -1};
  BoundaryTag tag = BoundaryTag::Interior;

  bool is_boundary() const { return elements[1] < 0; }
};

struct ElementGeometry {
  double area = 0.0;
  double diameter = 0.0;
  Point2 centroid = Point2::Zero();
  /// Outward unit normal and length of local edge i, which runs from vertex
  /// i to vertex (i+1)%3.
  std::array<Point2, 3> normals;
  std::array<double, 3> lengths{};
};

/// Conforming triangulation with tagged boundary edges. Triangles are stored
/// counter-clockwise; local edge i joins local vertices i and (i+1)%3.
class Mesh {
 public:
  Mesh() = default;

  /// Builds the edge structure from raw triangles. Boundary edges are tagged
  /// Dirichlet until a predicate is applied.
  Mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles);

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Point2& vertex(int i) const { return vertices_[i]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }
  /// Global edge id of local edge i of triangle t.
  int triangle_edge(int t, int i) const { return triangle_edges_[t][i]; }
  /// +1 if local edge i of t runs in the same direction as the global edge.
  int edge_orientation(int t, int i) const;

  ElementGeometry element_geometry(int t) const;
  Point2 edge_midpoint(int e) const;
  double edge_length(int e) const;
  /// Outward unit normal of a boundary edge.
  Point2 boundary_normal(int e) const;

  double max_diameter() const;
  double total_area() const;

  /// Vertices that share their coordinates with another vertex (slit sides).
  int duplicated_vertex_count() const;

  /// Returns a copy with every boundary edge re-tagged by the predicate.
  Mesh with_boundary(const BoundaryPredicate& predicate) const;

  /// Writes vertices, triangles and tagged edges, one record per line.
  void write_text(std::ostream& out) const;

 private:
  friend Mesh refine_uniform(const Mesh& mesh);

  void build_edges();

  std::vector<Point2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
};

/// Which diagonal splits each unit cell of the coarse tiling.
enum class CellDiagonal {
  LowerLeftUpperRight,  ///< (0,0)-(1,1)
  UpperLeftLowerRight,  ///< (0,1)-(1,0)
};

std::string to_string(CellDiagonal diagonal);

inline constexpr CellDiagonal kDefaultDiagonal = CellDiagonal::UpperLeftLowerRight;

/// Level-0 triangulation: every unit cell split into two triangles along the
/// given diagonal. For Omega4 the vertices on the slit (0,1]x{0} are
/// duplicated below the cut, leaving the tip (0,0) shared.
Mesh coarse_mesh(DomainId domain, CellDiagonal diagonal = kDefaultDiagonal);

/// Red refinement: each triangle is split into four congruent children by
/// joining edge midpoints. Boundary tags are inherited from the parent edges.
Mesh refine_uniform(const Mesh& mesh);

/// coarse_mesh refined `level` times.
Mesh build_mesh(DomainId domain, int level, CellDiagonal diagonal = kDefaultDiagonal);

}  // namespace pdwg
