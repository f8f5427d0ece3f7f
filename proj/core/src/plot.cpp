#include "pdwg/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pdwg/polyquad.hpp"

namespace pdwg {

namespace {

constexpr double kCanvas = 480.0;
constexpr double kMargin = 20.0;
constexpr double kBarWidth = 16.0;

std::string colour(double t) {
  // Piecewise-linear approximation of viridis.
  static const std::array<std::array<double, 3>, 5> anchors{{{68, 1, 84},
                                                              {59, 82, 139},
                                                              {33, 145, 140},
                                                              {94, 201, 98},
                                                              {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (anchors.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), anchors.size() - 2);
  const double w = t - static_cast<double>(i);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<int>(std::lround((1 - w) * anchors[i][c] + w * anchors[i + 1][c]));
  }
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

struct Frame {
  double xmin, ymin, scale;

  double x(const Point2& p) const { return kMargin + (p.x() - xmin) * scale; }
  double y(const Point2& p) const { return kMargin + kCanvas - (p.y() - ymin) * scale; }
};

Frame frame_for(const Mesh& mesh) {
  Point2 lo = mesh.vertex(0), hi = mesh.vertex(0);
  for (const auto& v : mesh.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double extent = std::max(hi.x() - lo.x(), hi.y() - lo.y());
  return {lo.x(), lo.y(), kCanvas / extent};
}

// Values of the field at the three vertices of every element.
std::vector<std::array<double, 3>> vertex_values(const Mesh& mesh, int s, const Eigen::VectorXd& u) {
  std::vector<std::array<double, 3>> out(mesh.num_triangles());
  if (s == 1) {
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      const ElementGeometry g = mesh.element_geometry(t);
      const TriBasis basis(1, g.centroid, g.diameter);
      for (int i = 0; i < 3; ++i) {
        out[t][i] = basis.eval(mesh.vertex(mesh.triangle(t)[i])).dot(u.segment(3 * t, 3));
      }
    }
    return out;
  }
  std::vector<double> sum(mesh.num_vertices(), 0.0);
  std::vector<int> count(mesh.num_vertices(), 0);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int v : mesh.triangle(t)) {
      sum[v] += u[t];
      ++count[v];
    }
  }
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const int v = mesh.triangle(t)[i];
      out[t][i] = sum[v] / count[v];
    }
  }
  return out;
}

double centroid_value(int s, const Eigen::VectorXd& u, int t) {
  if (s == 0) return u[t];
  return u[3 * t];  // TriBasis(1) is centred at the centroid
}

}  // namespace

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "surface") return PlotKind::Surface;
  if (name == "contour") return PlotKind::Contour;
  throw std::invalid_argument("unknown plot kind: " + name);
}

std::string render_svg(const Mesh& mesh, int s, const Eigen::VectorXd& u_h, PlotKind kind) {
  if (s < 0 || s > 1) throw std::invalid_argument("render_svg: s must be 0 or 1");
  if (u_h.size() != mesh.num_triangles() * TriBasis::dimension(s)) {
    throw std::invalid_argument("render_svg: field size does not match the mesh");
  }
  const Frame fr = frame_for(mesh);
  const auto vals = vertex_values(mesh, s, u_h);

  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double c = centroid_value(s, u_h, t);
    for (double v : {vals[t][0], vals[t][1], vals[t][2], c}) {
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;

  std::ostringstream svg;
  svg.precision(6);
  const double width = kCanvas + 3 * kMargin + kBarWidth + 60.0;
  const double height = kCanvas + 2 * kMargin;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (kind == PlotKind::Surface) {
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      const std::string fill = colour((centroid_value(s, u_h, t) - lo) / span);
      svg << "<polygon points=\"";
      for (int v : mesh.triangle(t)) svg << fr.x(mesh.vertex(v)) << ',' << fr.y(mesh.vertex(v)) << ' ';
      svg << "\" fill=\"" << fill << "\" stroke=\"" << fill << "\" stroke-width=\"0.3\"/>\n";
    }
  } else {
    for (int k = 1; k <= kContourLevels; ++k) {
      const double level = lo + span * k / (kContourLevels + 1);
      const std::string stroke = colour(double(k) / (kContourLevels + 1));
      for (int t = 0; t < mesh.num_triangles(); ++t) {
        std::vector<Point2> cut;
        for (int i = 0; i < 3; ++i) {
          const double a = vals[t][i] - level;
          const double b = vals[t][(i + 1) % 3] - level;
          if ((a < 0.0) == (b < 0.0)) continue;
          const Point2& pa = mesh.vertex(mesh.triangle(t)[i]);
          const Point2& pb = mesh.vertex(mesh.triangle(t)[(i + 1) % 3]);
          cut.push_back(pa + (a / (a - b)) * (pb - pa));
        }
        if (cut.size() != 2) continue;
        svg << "<line x1=\"" << fr.x(cut[0]) << "\" y1=\"" << fr.y(cut[0]) << "\" x2=\""
            << fr.x(cut[1]) << "\" y2=\"" << fr.y(cut[1]) << "\" stroke=\"" << stroke
            << "\" stroke-width=\"1\"/>\n";
      }
    }
  }

  for (const Edge& e : mesh.edges()) {
    if (!e.is_boundary()) continue;
    const Point2& a = mesh.vertex(e.vertices[0]);
    const Point2& b = mesh.vertex(e.vertices[1]);
    svg << "<line x1=\"" << fr.x(a) << "\" y1=\"" << fr.y(a) << "\" x2=\"" << fr.x(b)
        << "\" y2=\"" << fr.y(b) << "\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
  }

  const double bx = 2 * kMargin + kCanvas;
  constexpr int kBarSteps = 64;
  for (int i = 0; i < kBarSteps; ++i) {
    const double y = kMargin + kCanvas * (1.0 - double(i + 1) / kBarSteps);
    svg << "<rect x=\"" << bx << "\" y=\"" << y << "\" width=\"" << kBarWidth << "\" height=\""
        << kCanvas / kBarSteps + 0.5 << "\" fill=\"" << colour((i + 0.5) / kBarSteps) << "\"/>\n";
  }
  svg << "<text x=\"" << bx + kBarWidth + 4 << "\" y=\"" << kMargin + 10
      << "\" font-size=\"11\" font-family=\"sans-serif\">" << hi << "</text>\n";
  svg << "<text x=\"" << bx + kBarWidth + 4 << "\" y=\"" << kMargin + kCanvas
      << "\" font-size=\"11\" font-family=\"sans-serif\">" << lo << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const Mesh& mesh, int s, const Eigen::VectorXd& u_h, PlotKind kind,
               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << render_svg(mesh, s, u_h, kind);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace pdwg
