#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "pdwg/mesh.hpp"

namespace pdwg {

/// Quadrature points in physical coordinates with positive weights.
struct QuadRule {
  std::vector<Point2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

inline constexpr int kTriangleQuadDegree = 6;
inline constexpr int kEdgeQuadPoints = 5;

/// Collapsed (Stroud) product rule on the triangle, exact for polynomials of
/// total degree <= `degree`.
QuadRule triangle_rule(const Point2& p0, const Point2& p1, const Point2& p2,
                       int degree = kTriangleQuadDegree);
/// Gauss rule on the segment [a, b].
QuadRule edge_rule(const Point2& a, const Point2& b, int points = kEdgeQuadPoints);

/// Scaled monomials ((x-xc)/h)^i ((y-yc)/h)^j, ordered by total degree and
/// then by ascending power of y.
class TriBasis {
 public:
  TriBasis(int degree, const Point2& center, double scale);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(powers_.size()); }
  const Point2& center() const { return center_; }
  double scale() const { return scale_; }

  Eigen::VectorXd eval(const Point2& p) const;
  /// size() x 2 matrix of gradients.
  Eigen::MatrixX2d grad(const Point2& p) const;
  /// Rows hold (d_xx, d_xy, d_yy) of each basis function.
  Eigen::MatrixX3d hessian(const Point2& p) const;

  static int dimension(int degree) { return (degree + 1) * (degree + 2) / 2; }

 private:
  int degree_;
  Point2 center_;
  double scale_;
  std::vector<std::array<int, 2>> powers_;
};

/// Scaled monomials t^m, t = (p - midpoint).tangent / length, on one edge.
class EdgeBasis {
 public:
  EdgeBasis(int degree, const Point2& a, const Point2& b);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }
  double length() const { return length_; }

  double parameter(const Point2& p) const;
  Eigen::VectorXd eval(const Point2& p) const;

 private:
  int degree_;
  Point2 midpoint_;
  Point2 tangent_;
  double length_;
};

/// Thrown when an element mass matrix is not positive definite.
class DegenerateElement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Eigen::MatrixXd mass_matrix(const TriBasis& basis, const QuadRule& rule);
Eigen::MatrixXd mass_matrix(const EdgeBasis& basis, const QuadRule& rule);

using ScalarField = std::function<double(const Point2&)>;

/// L2 projection onto the span of the basis over the region the rule covers.
Eigen::VectorXd project(const ScalarField& f, const TriBasis& basis, const QuadRule& rule);
Eigen::VectorXd project(const ScalarField& f, const EdgeBasis& basis, const QuadRule& rule);

/// Basis of P_degree(T) together with its quadrature on triangle t.
struct ElementSpace {
  ElementGeometry geometry;
  TriBasis basis;
  QuadRule rule;
};

ElementSpace element_space(const Mesh& mesh, int t, int degree);

}  // namespace pdwg
