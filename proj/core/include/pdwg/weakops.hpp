#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pdwg/coefficients.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/polyquad.hpp"

namespace pdwg {

/// How the weak function {v0, vb, vn} of one element is stored.
///
/// Full:       [v0 in P_k(T) | vb in P_k(e), e = 0,1,2 | vn in P_{k-1}(e), e = 0,1,2]
/// Conforming: [v0 in P_k(T) | vn in P_{k-1}(e), e = 0,1,2], vb being the trace of v0.
///
/// v0 uses the scaled monomials of TriBasis; edge components use EdgeBasis
/// oriented along local edge e (vertex e to vertex e+1).
enum class WeakLayout { Full, Conforming };

/// Element-local data needed to apply the discrete weak operators.
class WeakElement {
 public:
  WeakElement(const std::array<Point2, 3>& vertices, WeakLayout layout, int k = 2);
  WeakElement(const Mesh& mesh, int t, WeakLayout layout, int k = 2);

  WeakLayout layout() const { return layout_; }
  int k() const { return k_; }
  int num_dofs() const;
  int v0_offset() const { return 0; }
  /// Full layout only.
  int vb_offset(int edge) const;
  int vn_offset(int edge) const;

  const ElementGeometry& geometry() const { return geometry_; }
  const std::array<Point2, 3>& vertices() const { return vertices_; }
  const TriBasis& interior_basis() const { return interior_; }
  const QuadRule& rule() const { return rule_; }
  const QuadRule& edge_quadrature(int edge) const { return edge_rules_[edge]; }
  const EdgeBasis& trace_basis(int edge) const { return trace_bases_[edge]; }
  const EdgeBasis& flux_basis(int edge) const { return flux_bases_[edge]; }

  /// Row vector mapping the dofs to the value of vb at a point of edge e.
  Eigen::RowVectorXd vb_row(int edge, const Point2& p) const;
  /// Row vector mapping the dofs to the value of vn at a point of edge e.
  Eigen::RowVectorXd vn_row(int edge, const Point2& p) const;
  /// Row vector mapping the dofs to v0 at p.
  Eigen::RowVectorXd v0_row(const Point2& p) const;

 private:
  WeakLayout layout_;
  int k_;
  std::array<Point2, 3> vertices_;
  ElementGeometry geometry_;
  TriBasis interior_;
  QuadRule rule_;
  std::array<QuadRule, 3> edge_rules_;
  std::vector<EdgeBasis> trace_bases_;
  std::vector<EdgeBasis> flux_bases_;
};

/// Right-hand sides of the weak-gradient moment system:
/// row (c, m) = -(v0, d_c psi_m)_T + <vb, psi_m n_c>_dT for psi_m in P_r(T).
/// Rows are ordered x-component first.
Eigen::MatrixXd weak_gradient_moments(const WeakElement& el, int r);

/// Coefficients of grad_w v in [P_r(T)]^2 (x block then y block, in the
/// TriBasis(r) of the element) as a linear map of the dofs.
Eigen::MatrixXd weak_gradient(const WeakElement& el, int r);

/// Right-hand sides of the weak-L moment system:
/// row m = (v0, L w_m)_T - <vb, a grad w_m . n>_dT + <vn, w_m>_dT.
Eigen::MatrixXd weak_L_moments(const WeakElement& el, int s, const Coefficients& coeffs);

/// Coefficients of L_w v in P_s(T) as a linear map of the dofs.
Eigen::MatrixXd weak_L(const WeakElement& el, int s, const Coefficients& coeffs);

/// A smooth function with analytic first and second derivatives.
struct SmoothFunction {
  std::function<double(const Point2&)> value;
  std::function<Eigen::Vector2d(const Point2&)> gradient;
  /// (w_xx, w_xy, w_yy)
  std::function<Eigen::Vector3d(const Point2&)> hessian;
};

/// Q_h w = {Q_0 w, Q_b w, Q_n(a grad w . n)} in the Full layout.
Eigen::VectorXd project_weak(const WeakElement& el, const SmoothFunction& w,
                             const Coefficients& coeffs);

struct CommutativityResidual {
  /// ||grad_w(Q_h w) - Q^{r}(grad w)||_T relative to ||Q^{r}(grad w)||_T
  /// (absolute when the latter vanishes).
  double gradient = 0.0;
  /// Same for L_w(Q_h w) - Q^{s}(L w).
  double divergence = 0.0;
};

/// Residuals of the commuting projection identities with r = k-1.
CommutativityResidual verify_commutativity(const WeakElement& el, const SmoothFunction& w,
                                           const Coefficients& coeffs, int s);

}  // namespace pdwg
