#include "pdwg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace pdwg {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey make_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

std::vector<std::array<int, 2>> unit_cells(DomainId domain) {
  switch (domain) {
    case DomainId::Omega1:
      return {{0, 0}};
    case DomainId::Omega2:
      return {{0, 0}, {1, 0}, {0, 1}};
    case DomainId::Omega3:
    case DomainId::Omega4:
      return {{-1, -1}, {0, -1}, {-1, 0}, {0, 0}};
    case DomainId::Omega5:
      return {{-1, -1}, {0, -1}, {-1, 0}};
  }
  throw std::invalid_argument("unknown domain");
}

}  // namespace

std::string to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Interior:
      return "interior";
    case BoundaryTag::Dirichlet:
      return "dirichlet";
    case BoundaryTag::Neumann:
      return "neumann";
  }
  return "?";
}

std::string to_string(DomainId domain) {
  switch (domain) {
    case DomainId::Omega1:
      return "omega1";
    case DomainId::Omega2:
      return "omega2";
    case DomainId::Omega3:
      return "omega3";
    case DomainId::Omega4:
      return "omega4";
    case DomainId::Omega5:
      return "omega5";
  }
  return "?";
}

std::vector<Point2> domain_outline(DomainId domain) {
  switch (domain) {
    case DomainId::Omega1:
      return {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    case DomainId::Omega2:
      return {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    case DomainId::Omega3:
    case DomainId::Omega4:
      return {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    case DomainId::Omega5:
      return {{-1, -1}, {1, -1}, {1, 0}, {0, 0}, {0, 1}, {-1, 1}};
  }
  throw std::invalid_argument("unknown domain");
}

double domain_area(DomainId domain) {
  const auto pts = domain_outline(domain);
  double twice = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % pts.size()];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice;
}

Mesh::Mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  build_edges();
}

void Mesh::build_edges() {
  edges_.clear();
  triangle_edges_.assign(triangles_.size(), {-1, -1, -1});
  std::map<EdgeKey, int> lookup;
  for (int t = 0; t < num_triangles(); ++t) {
    const auto& tri = triangles_[t];
    const Point2 d1 = vertices_[tri[1]] - vertices_[tri[0]];
    const Point2 d2 = vertices_[tri[2]] - vertices_[tri[0]];
    if (d1.x() * d2.y() - d1.y() * d2.x() <= 0.0) {
      throw std::invalid_argument("triangle " + std::to_string(t) +
                                  " is not counter-clockwise");
    }
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i];
      const int b = tri[(i + 1) % 3];
      auto [it, inserted] = lookup.try_emplace(make_key(a, b), num_edges());
      if (inserted) {
        Edge e;
        e.vertices = {a, b};
        e.elements = {t, -1};
        e.local_index = {i, -1};
        edges_.push_back(e);
      } else {
        Edge& e = edges_[it->second];
        if (e.elements[1] >= 0) {
          throw std::invalid_argument("edge shared by more than two triangles");
        }
        e.elements[1] = t;
        e.local_index[1] = i;
      }
      triangle_edges_[t][i] = it->second;
    }
  }
  for (auto& e : edges_) {
    e.tag = e.is_boundary() ? BoundaryTag::Dirichlet : BoundaryTag::Interior;
  }
}

int Mesh::edge_orientation(int t, int i) const {
  const Edge& e = edges_[triangle_edges_[t][i]];
  return e.vertices[0] == triangles_[t][i] ? 1 : -1;
}

ElementGeometry Mesh::element_geometry(int t) const {
  const auto& tri = triangles_[t];
  ElementGeometry g;
  const Point2& p0 = vertices_[tri[0]];
  const Point2& p1 = vertices_[tri[1]];
  const Point2& p2 = vertices_[tri[2]];
  const Point2 d1 = p1 - p0;
  const Point2 d2 = p2 - p0;
  g.area = 0.5 * (d1.x() * d2.y() - d1.y() * d2.x());
  g.centroid = (p0 + p1 + p2) / 3.0;
  for (int i = 0; i < 3; ++i) {
    const Point2 d = vertices_[tri[(i + 1) % 3]] - vertices_[tri[i]];
    g.lengths[i] = d.norm();
    g.normals[i] = Point2(d.y(), -d.x()) / g.lengths[i];
    g.diameter = std::max(g.diameter, g.lengths[i]);
  }
  return g;
}

Point2 Mesh::edge_midpoint(int e) const {
  return 0.5 * (vertices_[edges_[e].vertices[0]] + vertices_[edges_[e].vertices[1]]);
}

double Mesh::edge_length(int e) const {
  return (vertices_[edges_[e].vertices[1]] - vertices_[edges_[e].vertices[0]]).norm();
}

Point2 Mesh::boundary_normal(int e) const {
  const Edge& edge = edges_[e];
  return element_geometry(edge.elements[0]).normals[edge.local_index[0]];
}

double Mesh::max_diameter() const {
  double h = 0.0;
  for (int t = 0; t < num_triangles(); ++t) h = std::max(h, element_geometry(t).diameter);
  return h;
}

double Mesh::total_area() const {
  double area = 0.0;
  for (int t = 0; t < num_triangles(); ++t) area += element_geometry(t).area;
  return area;
}

int Mesh::duplicated_vertex_count() const {
  std::map<std::pair<double, double>, int> seen;
  for (const auto& v : vertices_) ++seen[{v.x(), v.y()}];
  int count = 0;
  for (const auto& [key, n] : seen) {
    if (n > 1) count += n;
  }
  return count;
}

Mesh Mesh::with_boundary(const BoundaryPredicate& predicate) const {
  Mesh copy = *this;
  for (int e = 0; e < num_edges(); ++e) {
    if (!edges_[e].is_boundary()) continue;
    const BoundaryTag tag = predicate(edge_midpoint(e), boundary_normal(e));
    if (tag == BoundaryTag::Interior) {
      throw std::invalid_argument("boundary predicate returned Interior");
    }
    copy.edges_[e].tag = tag;
  }
  return copy;
}

void Mesh::write_text(std::ostream& out) const {
  out.precision(17);
  for (int i = 0; i < num_vertices(); ++i) {
    out << "vertex " << i << ' ' << vertices_[i].x() << ' ' << vertices_[i].y() << '\n';
  }
  for (int t = 0; t < num_triangles(); ++t) {
    const auto& tri = triangles_[t];
    out << "triangle " << t << ' ' << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  }
  for (int e = 0; e < num_edges(); ++e) {
    const auto& edge = edges_[e];
    out << "edge " << e << ' ' << edge.vertices[0] << ' ' << edge.vertices[1] << ' '
        << to_string(edge.tag) << '\n';
  }
}

std::string to_string(CellDiagonal diagonal) {
  return diagonal == CellDiagonal::LowerLeftUpperRight ? "lower-left/upper-right"
                                                       : "upper-left/lower-right";
}

Mesh coarse_mesh(DomainId domain, CellDiagonal diagonal) {
  std::vector<Point2> vertices;
  std::map<std::pair<int, int>, int> grid_index;
  std::map<std::pair<int, int>, int> slit_copy;

  // Cells strictly below the slit of Omega4 see their own copy of the slit
  // vertices (x > 0, y == 0).
  auto vertex_id = [&](int x, int y, bool below_slit) {
    const bool on_slit = domain == DomainId::Omega4 && y == 0 && x > 0;
    auto& table = (on_slit && below_slit) ? slit_copy : grid_index;
    auto [it, inserted] = table.try_emplace({x, y}, static_cast<int>(vertices.size()));
    if (inserted) vertices.emplace_back(x, y);
    return it->second;
  };

  std::vector<std::array<int, 3>> triangles;
  for (const auto& [cx, cy] : unit_cells(domain)) {
    const bool below = cy < 0 && cx >= 0;
    const int p00 = vertex_id(cx, cy, below);
    const int p10 = vertex_id(cx + 1, cy, below);
    const int p11 = vertex_id(cx + 1, cy + 1, below);
    const int p01 = vertex_id(cx, cy + 1, below);
    if (diagonal == CellDiagonal::LowerLeftUpperRight) {
      triangles.push_back({p00, p10, p11});
      triangles.push_back({p00, p11, p01});
    } else {
      triangles.push_back({p00, p10, p01});
      triangles.push_back({p10, p11, p01});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Point2> vertices = mesh.vertices();
  std::vector<int> midpoint(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    midpoint[e] = static_cast<int>(vertices.size());
    vertices.push_back(mesh.edge_midpoint(e));
  }

  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(4 * mesh.triangles().size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& [a, b, c] = mesh.triangle(t);
    const int mab = midpoint[mesh.triangle_edge(t, 0)];
    const int mbc = midpoint[mesh.triangle_edge(t, 1)];
    const int mca = midpoint[mesh.triangle_edge(t, 2)];
    triangles.push_back({a, mab, mca});
    triangles.push_back({mab, b, mbc});
    triangles.push_back({mca, mbc, c});
    triangles.push_back({mab, mbc, mca});
  }

  std::map<EdgeKey, BoundaryTag> inherited;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.is_boundary()) continue;
    inherited[make_key(edge.vertices[0], midpoint[e])] = edge.tag;
    inherited[make_key(midpoint[e], edge.vertices[1])] = edge.tag;
  }

  Mesh fine(std::move(vertices), std::move(triangles));
  for (auto& edge : fine.edges_) {
    if (!edge.is_boundary()) continue;
    edge.tag = inherited.at(make_key(edge.vertices[0], edge.vertices[1]));
  }
  return fine;
}

Mesh build_mesh(DomainId domain, int level, CellDiagonal diagonal) {
  Mesh mesh = coarse_mesh(domain, diagonal);
  for (int l = 0; l < level; ++l) mesh = refine_uniform(mesh);
  return mesh;
}

}  // namespace pdwg
