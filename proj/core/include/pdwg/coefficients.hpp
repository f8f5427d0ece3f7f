#pragma once

#include <functional>

#include <Eigen/Dense>

#include "pdwg/mesh.hpp"
#include "pdwg/polyquad.hpp"

namespace pdwg {

/// PDE data for -div(a grad u) + div(b u) = f and the stabilizer weight.
struct Coefficients {
  std::function<Eigen::Matrix2d(const Point2&)> a;
  /// Row-wise divergence of a.
  std::function<Eigen::Vector2d(const Point2&)> div_a;
  std::function<Eigen::Vector2d(const Point2&)> b;
  std::function<double(const Point2&)> div_b;
  double gamma = 0.0;

  /// a = diffusion * I, constant b.
  static Coefficients constant(double diffusion, const Eigen::Vector2d& convection,
                               double gamma = 0.0);

  /// |a|_T: the largest Frobenius norm of a over the rule's points.
  double a_norm(const QuadRule& rule) const;

  /// a:H + div_a . g, i.e. div(a grad w) for a function with gradient g and
  /// Hessian entries (w_xx, w_xy, w_yy).
  double apply_L(const Point2& p, const Eigen::Vector2d& g, const Eigen::Vector3d& hess) const;
};

/// Throws std::invalid_argument unless a is symmetric with positive minimum
/// eigenvalue at every point of the rule.
void check_ellipticity(const Coefficients& c, const QuadRule& rule);

}  // namespace pdwg
