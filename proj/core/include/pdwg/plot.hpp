#pragma once

#include <string>

#include <Eigen/Dense>

#include "pdwg/mesh.hpp"

namespace pdwg {

enum class PlotKind { Surface, Contour };

/// Throws std::invalid_argument for anything but "surface" or "contour".
PlotKind parse_plot_kind(const std::string& name);

inline constexpr int kContourLevels = 12;

/// Static SVG of a piecewise P_s field given in TriBasis(s) coefficients.
/// Surface: every element filled with the colour of its centroid value.
/// Contour: kContourLevels equally spaced levels traced per element on the
/// linear interpolant of vertex values; for s=0 the vertex values are the
/// average of the adjacent element constants.
std::string render_svg(const Mesh& mesh, int s, const Eigen::VectorXd& u_h, PlotKind kind);

/// Writes render_svg to `path`; throws std::runtime_error if it cannot be opened.
void emit_plot(const Mesh& mesh, int s, const Eigen::VectorXd& u_h, PlotKind kind,
               const std::string& path);

}  // namespace pdwg
