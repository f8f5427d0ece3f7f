#include "pdwg/coefficients.hpp"

#include <algorithm>
#include <stdexcept>

namespace pdwg {

Coefficients Coefficients::constant(double diffusion, const Eigen::Vector2d& convection,
                                    double gamma) {
  Coefficients c;
  c.a = [diffusion](const Point2&) -> Eigen::Matrix2d {
    return diffusion * Eigen::Matrix2d::Identity();
  };
  c.div_a = [](const Point2&) -> Eigen::Vector2d { return Eigen::Vector2d::Zero(); };
  c.b = [convection](const Point2&) -> Eigen::Vector2d { return convection; };
  c.div_b = [](const Point2&) { return 0.0; };
  c.gamma = gamma;
  return c;
}

double Coefficients::a_norm(const QuadRule& rule) const {
  double norm = 0.0;
  for (const auto& p : rule.points) norm = std::max(norm, a(p).norm());
  return norm;
}

double Coefficients::apply_L(const Point2& p, const Eigen::Vector2d& g,
                             const Eigen::Vector3d& hess) const {
  const Eigen::Matrix2d A = a(p);
  return A(0, 0) * hess[0] + (A(0, 1) + A(1, 0)) * hess[1] + A(1, 1) * hess[2] +
         div_a(p).dot(g);
}

void check_ellipticity(const Coefficients& c, const QuadRule& rule) {
  for (const auto& p : rule.points) {
    const Eigen::Matrix2d A = c.a(p);
    if (std::abs(A(0, 1) - A(1, 0)) > 1e-14 * A.norm()) {
      throw std::invalid_argument("diffusion tensor is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(A);
    if (eig.eigenvalues().minCoeff() <= 0.0) {
      throw std::invalid_argument("diffusion tensor is not positive definite");
    }
  }
}

}  // namespace pdwg
