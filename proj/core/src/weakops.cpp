#include "pdwg/weakops.hpp"

#include <stdexcept>

namespace pdwg {

namespace {

ElementGeometry triangle_geometry(const std::array<Point2, 3>& v) {
  ElementGeometry g;
  const Point2 d1 = v[1] - v[0];
  const Point2 d2 = v[2] - v[0];
  g.area = 0.5 * (d1.x() * d2.y() - d1.y() * d2.x());
  if (g.area <= 0.0) throw DegenerateElement("triangle has non-positive signed area");
  g.centroid = (v[0] + v[1] + v[2]) / 3.0;
  for (int i = 0; i < 3; ++i) {
    const Point2 d = v[(i + 1) % 3] - v[i];
    g.lengths[i] = d.norm();
    g.normals[i] = Point2(d.y(), -d.x()) / g.lengths[i];
    g.diameter = std::max(g.diameter, g.lengths[i]);
  }
  return g;
}

std::array<Point2, 3> triangle_vertices(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangle(t);
  return {mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2])};
}

double l2_norm(const Eigen::VectorXd& coeffs, const Eigen::MatrixXd& mass) {
  return std::sqrt(std::max(0.0, coeffs.dot(mass * coeffs)));
}

}  // namespace

WeakElement::WeakElement(const std::array<Point2, 3>& vertices, WeakLayout layout, int k)
    : layout_(layout),
      k_(k),
      vertices_(vertices),
      geometry_(triangle_geometry(vertices)),
      interior_(k, geometry_.centroid, geometry_.diameter),
      rule_(triangle_rule(vertices[0], vertices[1], vertices[2])) {
  if (k < 1) throw std::invalid_argument("WeakElement: k must be at least 1");
  for (int e = 0; e < 3; ++e) {
    const Point2& a = vertices_[e];
    const Point2& b = vertices_[(e + 1) % 3];
    edge_rules_[e] = edge_rule(a, b);
    trace_bases_.emplace_back(k, a, b);
    flux_bases_.emplace_back(k - 1, a, b);
  }
}

WeakElement::WeakElement(const Mesh& mesh, int t, WeakLayout layout, int k)
    : WeakElement(triangle_vertices(mesh, t), layout, k) {}

int WeakElement::num_dofs() const {
  const int n0 = TriBasis::dimension(k_);
  const int nn = 3 * k_;
  return layout_ == WeakLayout::Full ? n0 + 3 * (k_ + 1) + nn : n0 + nn;
}

int WeakElement::vb_offset(int edge) const {
  if (layout_ != WeakLayout::Full) {
    throw std::logic_error("vb is not stored in the conforming layout");
  }
  return TriBasis::dimension(k_) + edge * (k_ + 1);
}

int WeakElement::vn_offset(int edge) const {
  const int base = TriBasis::dimension(k_) + (layout_ == WeakLayout::Full ? 3 * (k_ + 1) : 0);
  return base + edge * k_;
}

Eigen::RowVectorXd WeakElement::v0_row(const Point2& p) const {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_dofs());
  row.head(interior_.size()) = interior_.eval(p).transpose();
  return row;
}

Eigen::RowVectorXd WeakElement::vb_row(int edge, const Point2& p) const {
  if (layout_ == WeakLayout::Conforming) return v0_row(p);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_dofs());
  row.segment(vb_offset(edge), k_ + 1) = trace_bases_[edge].eval(p).transpose();
  return row;
}

Eigen::RowVectorXd WeakElement::vn_row(int edge, const Point2& p) const {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_dofs());
  row.segment(vn_offset(edge), k_) = flux_bases_[edge].eval(p).transpose();
  return row;
}

Eigen::MatrixXd weak_gradient_moments(const WeakElement& el, int r) {
  const TriBasis test(r, el.geometry().centroid, el.geometry().diameter);
  const int nt = test.size();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2 * nt, el.num_dofs());

  const QuadRule& rule = el.rule();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::MatrixX2d dpsi = test.grad(rule.points[q]);
    const Eigen::RowVectorXd v0 = el.v0_row(rule.points[q]);
    for (int c = 0; c < 2; ++c) {
      rhs.middleRows(c * nt, nt).noalias() -= rule.weights[q] * dpsi.col(c) * v0;
    }
  }
  for (int e = 0; e < 3; ++e) {
    const QuadRule& er = el.edge_quadrature(e);
    const Point2& n = el.geometry().normals[e];
    for (std::size_t q = 0; q < er.size(); ++q) {
      const Eigen::VectorXd psi = test.eval(er.points[q]);
      const Eigen::RowVectorXd vb = el.vb_row(e, er.points[q]);
      for (int c = 0; c < 2; ++c) {
        rhs.middleRows(c * nt, nt).noalias() += er.weights[q] * n[c] * psi * vb;
      }
    }
  }
  return rhs;
}

Eigen::MatrixXd weak_gradient(const WeakElement& el, int r) {
  const TriBasis test(r, el.geometry().centroid, el.geometry().diameter);
  const int nt = test.size();
  const Eigen::LLT<Eigen::MatrixXd> mass(mass_matrix(test, el.rule()));
  const Eigen::MatrixXd rhs = weak_gradient_moments(el, r);
  Eigen::MatrixXd op(2 * nt, el.num_dofs());
  op.topRows(nt) = mass.solve(rhs.topRows(nt));
  op.bottomRows(nt) = mass.solve(rhs.bottomRows(nt));
  return op;
}

Eigen::MatrixXd weak_L_moments(const WeakElement& el, int s, const Coefficients& coeffs) {
  const TriBasis test(s, el.geometry().centroid, el.geometry().diameter);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(test.size(), el.num_dofs());

  const QuadRule& rule = el.rule();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Point2& p = rule.points[q];
    const Eigen::MatrixX2d g = test.grad(p);
    const Eigen::MatrixX3d h = test.hessian(p);
    Eigen::VectorXd lw(test.size());
    for (int m = 0; m < test.size(); ++m) {
      lw[m] = coeffs.apply_L(p, g.row(m).transpose(), h.row(m).transpose());
    }
    rhs.noalias() += rule.weights[q] * lw * el.v0_row(p);
  }
  for (int e = 0; e < 3; ++e) {
    const QuadRule& er = el.edge_quadrature(e);
    const Point2& n = el.geometry().normals[e];
    for (std::size_t q = 0; q < er.size(); ++q) {
      const Point2& p = er.points[q];
      const Eigen::VectorXd w = test.eval(p);
      const Eigen::VectorXd flux = test.grad(p) * (coeffs.a(p) * n);
      rhs.noalias() -= er.weights[q] * flux * el.vb_row(e, p);
      rhs.noalias() += er.weights[q] * w * el.vn_row(e, p);
    }
  }
  return rhs;
}

Eigen::MatrixXd weak_L(const WeakElement& el, int s, const Coefficients& coeffs) {
  const TriBasis test(s, el.geometry().centroid, el.geometry().diameter);
  const Eigen::LLT<Eigen::MatrixXd> mass(mass_matrix(test, el.rule()));
  return mass.solve(weak_L_moments(el, s, coeffs));
}

Eigen::VectorXd project_weak(const WeakElement& el, const SmoothFunction& w,
                             const Coefficients& coeffs) {
  if (el.layout() != WeakLayout::Full) {
    throw std::invalid_argument("project_weak needs the full layout");
  }
  Eigen::VectorXd dofs = Eigen::VectorXd::Zero(el.num_dofs());
  dofs.head(el.interior_basis().size()) = project(w.value, el.interior_basis(), el.rule());
  for (int e = 0; e < 3; ++e) {
    const QuadRule& er = el.edge_quadrature(e);
    const Point2 n = el.geometry().normals[e];
    dofs.segment(el.vb_offset(e), el.k() + 1) = project(w.value, el.trace_basis(e), er);
    const ScalarField flux = [&](const Point2& p) {
      return (coeffs.a(p) * w.gradient(p)).dot(n);
    };
    dofs.segment(el.vn_offset(e), el.k()) = project(flux, el.flux_basis(e), er);
  }
  return dofs;
}

CommutativityResidual verify_commutativity(const WeakElement& el, const SmoothFunction& w,
                                           const Coefficients& coeffs, int s) {
  const int r = el.k() - 1;
  const Eigen::VectorXd qw = project_weak(el, w, coeffs);
  const ElementGeometry& g = el.geometry();

  CommutativityResidual out;
  {
    const TriBasis basis(r, g.centroid, g.diameter);
    const Eigen::MatrixXd mass = mass_matrix(basis, el.rule());
    const Eigen::VectorXd weak = weak_gradient(el, r) * qw;
    const int nt = basis.size();
    double diff2 = 0.0;
    double ref2 = 0.0;
    for (int c = 0; c < 2; ++c) {
      const ScalarField component = [&](const Point2& p) { return w.gradient(p)[c]; };
      const Eigen::VectorXd exact = project(component, basis, el.rule());
      const double d = l2_norm(weak.segment(c * nt, nt) - exact, mass);
      const double e = l2_norm(exact, mass);
      diff2 += d * d;
      ref2 += e * e;
    }
    out.gradient = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
  }
  {
    const TriBasis basis(s, g.centroid, g.diameter);
    const Eigen::MatrixXd mass = mass_matrix(basis, el.rule());
    const Eigen::VectorXd weak = weak_L(el, s, coeffs) * qw;
    const ScalarField lw = [&](const Point2& p) {
      return coeffs.apply_L(p, w.gradient(p), w.hessian(p));
    };
    const Eigen::VectorXd exact = project(lw, basis, el.rule());
    const double d = l2_norm(weak - exact, mass);
    const double e = l2_norm(exact, mass);
    out.divergence = e > 0.0 ? d / e : d;
  }
  return out;
}

}  // namespace pdwg
