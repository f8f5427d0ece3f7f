#include "pdwg/polyquad.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdwg {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {  // Newton on P_n
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadRule triangle_rule(const Point2& p0, const Point2& p1, const Point2& p2, int degree) {
  // x = (1+a)/2, y = (1-x)(1+b)/2 maps the square onto the reference
  // triangle; the Jacobian factor (1-x) raises the degree in x by one.
  const int n = (degree + 2) / 2 + ((degree + 2) % 2);
  std::vector<double> gx;
  std::vector<double> gw;
  gauss_legendre(n, gx, gw);
  const Point2 e1 = p1 - p0;
  const Point2 e2 = p2 - p0;
  const double jac = std::abs(e1.x() * e2.y() - e1.y() * e2.x());

  QuadRule rule;
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int i = 0; i < n; ++i) {
    const double xi = 0.5 * (1.0 + gx[i]);
    for (int j = 0; j < n; ++j) {
      const double eta = (1.0 - xi) * 0.5 * (1.0 + gx[j]);
      rule.points.push_back(p0 + xi * e1 + eta * e2);
      rule.weights.push_back(0.25 * gw[i] * gw[j] * (1.0 - xi) * jac);
    }
  }
  return rule;
}

QuadRule edge_rule(const Point2& a, const Point2& b, int points) {
  std::vector<double> gx;
  std::vector<double> gw;
  gauss_legendre(points, gx, gw);
  const double half = 0.5 * (b - a).norm();
  QuadRule rule;
  for (int i = 0; i < points; ++i) {
    rule.points.push_back(0.5 * (a + b) + 0.5 * gx[i] * (b - a));
    rule.weights.push_back(gw[i] * half);
  }
  return rule;
}

TriBasis::TriBasis(int degree, const Point2& center, double scale)
    : degree_(degree), center_(center), scale_(scale) {
  if (degree < 0) throw std::invalid_argument("TriBasis: negative degree");
  for (int d = 0; d <= degree; ++d) {
    for (int j = 0; j <= d; ++j) powers_.push_back({d - j, j});
  }
}

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

Eigen::VectorXd TriBasis::eval(const Point2& p) const {
  const double sx = (p.x() - center_.x()) / scale_;
  const double sy = (p.y() - center_.y()) / scale_;
  Eigen::VectorXd v(size());
  for (int m = 0; m < size(); ++m) v[m] = ipow(sx, powers_[m][0]) * ipow(sy, powers_[m][1]);
  return v;
}

Eigen::MatrixX2d TriBasis::grad(const Point2& p) const {
  const double sx = (p.x() - center_.x()) / scale_;
  const double sy = (p.y() - center_.y()) / scale_;
  Eigen::MatrixX2d g(size(), 2);
  for (int m = 0; m < size(); ++m) {
    const auto [i, j] = powers_[m];
    g(m, 0) = i > 0 ? i * ipow(sx, i - 1) * ipow(sy, j) / scale_ : 0.0;
    g(m, 1) = j > 0 ? j * ipow(sx, i) * ipow(sy, j - 1) / scale_ : 0.0;
  }
  return g;
}

Eigen::MatrixX3d TriBasis::hessian(const Point2& p) const {
  const double sx = (p.x() - center_.x()) / scale_;
  const double sy = (p.y() - center_.y()) / scale_;
  const double s2 = scale_ * scale_;
  Eigen::MatrixX3d h(size(), 3);
  for (int m = 0; m < size(); ++m) {
    const auto [i, j] = powers_[m];
    h(m, 0) = i > 1 ? i * (i - 1) * ipow(sx, i - 2) * ipow(sy, j) / s2 : 0.0;
    h(m, 1) = (i > 0 && j > 0) ? i * j * ipow(sx, i - 1) * ipow(sy, j - 1) / s2 : 0.0;
    h(m, 2) = j > 1 ? j * (j - 1) * ipow(sx, i) * ipow(sy, j - 2) / s2 : 0.0;
  }
  return h;
}

EdgeBasis::EdgeBasis(int degree, const Point2& a, const Point2& b)
    : degree_(degree), midpoint_(0.5 * (a + b)), length_((b - a).norm()) {
  if (degree < 0) throw std::invalid_argument("EdgeBasis: negative degree");
  tangent_ = (b - a) / length_;
}

double EdgeBasis::parameter(const Point2& p) const {
  return (p - midpoint_).dot(tangent_) / length_;
}

Eigen::VectorXd EdgeBasis::eval(const Point2& p) const {
  const double t = parameter(p);
  Eigen::VectorXd v(size());
  double power = 1.0;
  for (int m = 0; m <= degree_; ++m) {
    v[m] = power;
    power *= t;
  }
  return v;
}

namespace {

template <typename Basis>
Eigen::MatrixXd gram(const Basis& basis, const QuadRule& rule) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd phi = basis.eval(rule.points[q]);
    m.noalias() += rule.weights[q] * phi * phi.transpose();
  }
  return m;
}

template <typename Basis>
Eigen::VectorXd project_impl(const ScalarField& f, const Basis& basis, const QuadRule& rule) {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    rhs += rule.weights[q] * f(rule.points[q]) * basis.eval(rule.points[q]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(mass_matrix(basis, rule));
  return llt.solve(rhs);
}

}  // namespace

Eigen::MatrixXd mass_matrix(const TriBasis& basis, const QuadRule& rule) {
  Eigen::MatrixXd m = gram(basis, rule);
  if (Eigen::LLT<Eigen::MatrixXd>(m).info() != Eigen::Success) {
    throw DegenerateElement("triangle mass matrix is not positive definite");
  }
  return m;
}

Eigen::MatrixXd mass_matrix(const EdgeBasis& basis, const QuadRule& rule) {
  Eigen::MatrixXd m = gram(basis, rule);
  if (Eigen::LLT<Eigen::MatrixXd>(m).info() != Eigen::Success) {
    throw DegenerateElement("edge mass matrix is not positive definite");
  }
  return m;
}

Eigen::VectorXd project(const ScalarField& f, const TriBasis& basis, const QuadRule& rule) {
  return project_impl(f, basis, rule);
}

Eigen::VectorXd project(const ScalarField& f, const EdgeBasis& basis, const QuadRule& rule) {
  return project_impl(f, basis, rule);
}

ElementSpace element_space(const Mesh& mesh, int t, int degree) {
  ElementGeometry g = mesh.element_geometry(t);
  const auto& tri = mesh.triangle(t);
  TriBasis basis(degree, g.centroid, g.diameter);
  QuadRule rule = triangle_rule(mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2]));
  return {g, basis, std::move(rule)};
}

}  // namespace pdwg
