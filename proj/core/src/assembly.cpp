#include "pdwg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pdwg {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// [nodal P2 | flux] -> [monomial P2 | flux], the conforming WeakElement layout.
Eigen::MatrixXd conforming_transform(const P2Element& p2) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(kLocalLambdaDofs, kLocalLambdaDofs);
  T.topLeftCorner(6, 6) = p2.to_monomial();
  return T;
}

std::array<Point2, 6> p2_nodes(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangle(t);
  std::array<Point2, 6> n;
  for (int i = 0; i < 3; ++i) n[i] = mesh.vertex(tri[i]);
  for (int i = 0; i < 3; ++i) n[3 + i] = 0.5 * (n[i] + n[(i + 1) % 3]);
  return n;
}

}  // namespace

P2Element::P2Element(const Mesh& mesh, int t)
    : monomials_(2, mesh.element_geometry(t).centroid, mesh.element_geometry(t).diameter) {
  const auto nodes = p2_nodes(mesh, t);
  Eigen::Matrix<double, 6, 6> V;
  for (int i = 0; i < 6; ++i) V.row(i) = monomials_.eval(nodes[i]).transpose();
  to_monomial_ = V.inverse();
}

Eigen::Matrix<double, 6, 1> P2Element::values(const Point2& p) const {
  return to_monomial_.transpose() * monomials_.eval(p);
}

Eigen::Matrix<double, 6, 2> P2Element::gradients(const Point2& p) const {
  return to_monomial_.transpose() * monomials_.grad(p);
}

Eigen::Matrix<double, 6, 3> P2Element::hessians(const Point2& p) const {
  return to_monomial_.transpose() * monomials_.hessian(p);
}

std::string to_string(FluxCoupling coupling) {
  return coupling == FluxCoupling::Signed ? "signed" : "per-side";
}

DofMap::DofMap(const Mesh& mesh, int s, FluxCoupling coupling)
    : s_(s),
      coupling_(coupling),
      num_vertices_(mesh.num_vertices()),
      num_edges_(mesh.num_edges()),
      num_lambda_(mesh.num_vertices() + mesh.num_edges() +
                  (coupling == FluxCoupling::Signed ? 2 * mesh.num_edges()
                                                    : 6 * mesh.num_triangles())),
      num_u_(mesh.num_triangles() * TriBasis::dimension(s)),
      triangles_(mesh.triangles()) {
  if (s < 0 || s > 1) throw std::invalid_argument("DofMap: s must be 0 or 1");
  const int nt = mesh.num_triangles();
  triangle_edges_.resize(nt);
  flux_side_.resize(nt);
  edge_orientation_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    for (int i = 0; i < 3; ++i) {
      const int e = mesh.triangle_edge(t, i);
      triangle_edges_[t][i] = e;
      flux_side_[t][i] = mesh.edge(e).elements[0] == t ? 1 : -1;
      edge_orientation_[t][i] = mesh.edge_orientation(t, i);
    }
  }

  std::vector<bool> fixed(num_lambda_, false);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.is_boundary()) continue;
    if (edge.tag == BoundaryTag::Dirichlet) {
      fixed[p2_vertex(edge.vertices[0])] = true;
      fixed[p2_vertex(edge.vertices[1])] = true;
      fixed[p2_edge(e)] = true;
    } else if (edge.tag == BoundaryTag::Neumann) {
      fixed[lambda_n(edge.elements[0], edge.local_index[0], 0)] = true;
      fixed[lambda_n(edge.elements[0], edge.local_index[0], 1)] = true;
    }
  }
  lambda_to_free_.assign(num_lambda_, -1);
  for (int i = 0; i < num_lambda_; ++i) {
    if (fixed[i]) continue;
    lambda_to_free_[i] = static_cast<int>(free_to_lambda_.size());
    free_to_lambda_.push_back(i);
  }
}

int DofMap::lambda_n(int t, int local_edge, int j) const {
  const int base = num_vertices_ + num_edges_;
  if (coupling_ == FluxCoupling::Signed) return base + 2 * triangle_edges_[t][local_edge] + j;
  return base + 6 * t + 2 * local_edge + j;
}

std::array<int, kLocalLambdaDofs> DofMap::element_lambda(int t) const {
  std::array<int, kLocalLambdaDofs> d{};
  for (int i = 0; i < 3; ++i) {
    d[i] = p2_vertex(triangles_[t][i]);
    d[3 + i] = p2_edge(triangle_edges_[t][i]);
    d[6 + 2 * i] = lambda_n(t, i, 0);
    d[7 + 2 * i] = lambda_n(t, i, 1);
  }
  return d;
}

std::array<double, kLocalLambdaDofs> DofMap::element_signs(int t) const {
  std::array<double, kLocalLambdaDofs> sg;
  sg.fill(1.0);
  if (coupling_ != FluxCoupling::Signed) return sg;
  // The P1 flux basis is {1, tau} with tau measured along the local edge, so
  // the linear coefficient also flips when the local edge runs backwards.
  for (int i = 0; i < 3; ++i) {
    sg[6 + 2 * i] = flux_side_[t][i];
    sg[7 + 2 * i] = flux_side_[t][i] * edge_orientation_[t][i];
  }
  return sg;
}

Eigen::VectorXd DofMap::expand(const Eigen::VectorXd& free_values) const {
  if (free_values.size() != num_free_lambda()) {
    throw std::invalid_argument("DofMap::expand: wrong vector size");
  }
  Eigen::VectorXd full = Eigen::VectorXd::Zero(num_lambda_);
  for (int i = 0; i < num_free_lambda(); ++i) full[free_to_lambda_[i]] = free_values[i];
  return full;
}

Eigen::VectorXd DofMap::restrict_to_free(const Eigen::VectorXd& lambda) const {
  if (lambda.size() != num_lambda_) {
    throw std::invalid_argument("DofMap::restrict_to_free: wrong vector size");
  }
  Eigen::VectorXd out(num_free_lambda());
  for (int i = 0; i < num_free_lambda(); ++i) out[i] = lambda[free_to_lambda_[i]];
  return out;
}

Eigen::Matrix<double, kLocalLambdaDofs, 1> gather_local(const DofMap& dofs, int t,
                                                        const Eigen::VectorXd& lambda) {
  const auto global = dofs.element_lambda(t);
  const auto sign = dofs.element_signs(t);
  Eigen::Matrix<double, kLocalLambdaDofs, 1> local;
  for (int i = 0; i < kLocalLambdaDofs; ++i) local[i] = sign[i] * lambda[global[i]];
  return local;
}

Eigen::MatrixXd local_stabilizer(const Mesh& mesh, int t, const Coefficients& coeffs,
                                 const StabilizerOptions& options) {
  const P2Element p2(mesh, t);
  const ElementGeometry g = mesh.element_geometry(t);
  const auto& tri = mesh.triangle(t);
  const double h = g.diameter;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(kLocalLambdaDofs, kLocalLambdaDofs);

  const QuadRule rule = triangle_rule(mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2]));
  const double a_T = options.include_trace_term ? coeffs.a_norm(rule) : 0.0;

  for (int e = 0; e < 3; ++e) {
    const Point2& va = mesh.vertex(tri[e]);
    const Point2& vb = mesh.vertex(tri[(e + 1) % 3]);
    const QuadRule er = edge_rule(va, vb);
    const EdgeBasis flux(1, va, vb);
    const Point2& n = g.normals[e];
    for (std::size_t q = 0; q < er.size(); ++q) {
      const Point2& p = er.points[q];
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(kLocalLambdaDofs);
      row.head(6) = (p2.gradients(p) * (coeffs.a(p) * n)).transpose();
      row.segment(6 + 2 * e, 2) = -flux.eval(p).transpose();
      S.noalias() += (er.weights[q] / h) * row.transpose() * row;

      if (options.include_trace_term) {
        // l0 - lb: the trace of a P2 nodal function is itself, so this row is zero.
        Eigen::RowVectorXd jump = Eigen::RowVectorXd::Zero(kLocalLambdaDofs);
        jump.head(6) = (p2.values(p) - p2.values(p)).transpose();
        const double weight = (a_T + std::abs(coeffs.b(p).dot(n))) / (h * h * h);
        S.noalias() += er.weights[q] * weight * jump.transpose() * jump;
      }
    }
  }

  if (coeffs.gamma > 0.0) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2& p = rule.points[q];
      const auto grads = p2.gradients(p);
      const auto hess = p2.hessians(p);
      const Eigen::Vector2d b = coeffs.b(p);
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(kLocalLambdaDofs);
      for (int i = 0; i < 6; ++i) {
        const Eigen::Vector2d gi = grads.row(i).transpose();
        row[i] = coeffs.apply_L(p, gi, hess.row(i).transpose()) + b.dot(gi);
      }
      S.noalias() += coeffs.gamma * rule.weights[q] * row.transpose() * row;
    }
  }
  return S;
}

Eigen::MatrixXd local_coupling(const Mesh& mesh, int t, const Coefficients& coeffs, int s) {
  const P2Element p2(mesh, t);
  const WeakElement el(mesh, t, WeakLayout::Conforming);
  const Eigen::MatrixXd T = conforming_transform(p2);
  const Eigen::MatrixXd Lop = weak_L(el, s, coeffs) * T;
  const Eigen::MatrixXd Gop = weak_gradient(el, 1) * T;

  const ElementGeometry& g = el.geometry();
  const TriBasis ub(s, g.centroid, g.diameter);
  const TriBasis gb(1, g.centroid, g.diameter);
  const int ng = gb.size();

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(ub.size(), kLocalLambdaDofs);
  const QuadRule& rule = el.rule();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Point2& p = rule.points[q];
    const Eigen::VectorXd phi = ub.eval(p);
    const Eigen::VectorXd m1 = gb.eval(p);
    const Eigen::Vector2d b = coeffs.b(p);
    const Eigen::RowVectorXd action = ub.eval(p).transpose() * Lop +
                                      b.x() * m1.transpose() * Gop.topRows(ng) +
                                      b.y() * m1.transpose() * Gop.bottomRows(ng);
    B.noalias() += rule.weights[q] * phi * action;
  }
  return B;
}

Eigen::VectorXd local_load(const Mesh& mesh, int t, const ProblemData& data) {
  const P2Element p2(mesh, t);
  const ElementGeometry g = mesh.element_geometry(t);
  const auto& tri = mesh.triangle(t);
  Eigen::VectorXd F = Eigen::VectorXd::Zero(kLocalLambdaDofs);

  const QuadRule rule = triangle_rule(mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2]));
  for (std::size_t q = 0; q < rule.size(); ++q) {
    F.head(6) -= rule.weights[q] * data.f(rule.points[q]) * p2.values(rule.points[q]);
  }

  for (int e = 0; e < 3; ++e) {
    const Edge& edge = mesh.edge(mesh.triangle_edge(t, e));
    if (!edge.is_boundary()) continue;
    const Point2& va = mesh.vertex(tri[e]);
    const Point2& vb = mesh.vertex(tri[(e + 1) % 3]);
    const QuadRule er = edge_rule(va, vb);
    const Point2& n = g.normals[e];
    if (edge.tag == BoundaryTag::Neumann) {
      for (std::size_t q = 0; q < er.size(); ++q) {
        const Point2& p = er.points[q];
        F.head(6) += er.weights[q] * data.g2(p, n) * p2.values(p);
      }
    } else if (edge.tag == BoundaryTag::Dirichlet) {
      const EdgeBasis flux(1, va, vb);
      for (std::size_t q = 0; q < er.size(); ++q) {
        const Point2& p = er.points[q];
        F.segment(6 + 2 * e, 2) += er.weights[q] * data.g1(p) * flux.eval(p);
      }
    }
  }
  return F;
}

SparseMatrix assemble_S(const Mesh& mesh, const DofMap& dofs, const Coefficients& coeffs,
                        const StabilizerOptions& options) {
  Triplets trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_triangles()) * 144);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::MatrixXd local = local_stabilizer(mesh, t, coeffs, options);
    const auto global = dofs.element_lambda(t);
    const auto sign = dofs.element_signs(t);
    for (int i = 0; i < kLocalLambdaDofs; ++i) {
      const int gi = dofs.free_index(global[i]);
      if (gi < 0) continue;
      for (int j = 0; j < kLocalLambdaDofs; ++j) {
        const int gj = dofs.free_index(global[j]);
        if (gj < 0 || local(i, j) == 0.0) continue;
        trip.emplace_back(gi, gj, sign[i] * sign[j] * local(i, j));
      }
    }
  }
  SparseMatrix S(dofs.num_free_lambda(), dofs.num_free_lambda());
  S.setFromTriplets(trip.begin(), trip.end());
  return S;
}

SparseMatrix assemble_B(const Mesh& mesh, const DofMap& dofs, const Coefficients& coeffs) {
  const int nu = dofs.u_per_element();
  Triplets trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_triangles()) * nu * kLocalLambdaDofs);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::MatrixXd local = local_coupling(mesh, t, coeffs, dofs.s());
    const auto global = dofs.element_lambda(t);
    const auto sign = dofs.element_signs(t);
    for (int j = 0; j < kLocalLambdaDofs; ++j) {
      const int gj = dofs.free_index(global[j]);
      if (gj < 0) continue;
      for (int i = 0; i < nu; ++i) {
        if (local(i, j) != 0.0) trip.emplace_back(dofs.u(t, i), gj, sign[j] * local(i, j));
      }
    }
  }
  SparseMatrix B(dofs.num_u(), dofs.num_free_lambda());
  B.setFromTriplets(trip.begin(), trip.end());
  return B;
}

Eigen::VectorXd assemble_rhs(const Mesh& mesh, const DofMap& dofs, const ProblemData& data) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(dofs.num_free_lambda());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::VectorXd local = local_load(mesh, t, data);
    const auto global = dofs.element_lambda(t);
    const auto sign = dofs.element_signs(t);
    for (int i = 0; i < kLocalLambdaDofs; ++i) {
      const int gi = dofs.free_index(global[i]);
      if (gi >= 0) F[gi] += sign[i] * local[i];
    }
  }
  return F;
}

SaddleSystem build_system(const SparseMatrix& S, const SparseMatrix& B, const Eigen::VectorXd& F) {
  if (S.rows() != S.cols()) throw std::invalid_argument("build_system: S is not square");
  if (B.cols() != S.rows()) throw std::invalid_argument("build_system: B and S disagree");
  if (F.size() != S.rows()) throw std::invalid_argument("build_system: F and S disagree");

  SaddleSystem sys;
  sys.num_lambda = static_cast<int>(S.rows());
  sys.num_u = static_cast<int>(B.rows());
  Triplets trip;
  trip.reserve(static_cast<std::size_t>(S.nonZeros() + 2 * B.nonZeros()));
  for (int k = 0; k < S.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(S, k); it; ++it) {
      trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    }
  }
  for (int k = 0; k < B.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(B, k); it; ++it) {
      const int r = sys.num_lambda + static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      trip.emplace_back(r, c, it.value());
      trip.emplace_back(c, r, it.value());
    }
  }
  sys.K.resize(sys.size(), sys.size());
  sys.K.setFromTriplets(trip.begin(), trip.end());
  sys.rhs = Eigen::VectorXd::Zero(sys.size());
  sys.rhs.head(sys.num_lambda) = F;
  return sys;
}

void write_matrix(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  out.precision(17);
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  out << v.size() << " 1 " << v.size() << '\n';
  out.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << i << " 0 " << v[i] << '\n';
}

DiscreteProblem assemble_problem(const Mesh& mesh, int s, const Coefficients& coeffs,
                                 const ProblemData& data, FluxCoupling coupling) {
  DofMap dofs(mesh, s, coupling);
  SparseMatrix S = assemble_S(mesh, dofs, coeffs);
  SparseMatrix B = assemble_B(mesh, dofs, coeffs);
  Eigen::VectorXd F = assemble_rhs(mesh, dofs, data);
  SaddleSystem sys = build_system(S, B, F);
  return DiscreteProblem{std::move(dofs), std::move(S), std::move(B), std::move(F),
                         std::move(sys)};
}

Eigen::VectorXd project_primal(const Mesh& mesh, const DofMap& dofs, const ScalarField& u) {
  Eigen::VectorXd out(dofs.num_u());
  const int nu = dofs.u_per_element();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementSpace sp = element_space(mesh, t, dofs.s());
    out.segment(dofs.u(t, 0), nu) = project(u, sp.basis, sp.rule);
  }
  return out;
}

ErrorEquationCheck verify_error_equation(const Mesh& mesh, const DofMap& dofs,
                                         const Coefficients& coeffs, const SmoothFunction& u,
                                         const SparseMatrix& S, const SparseMatrix& B,
                                         const Eigen::VectorXd& lambda_free,
                                         const Eigen::VectorXd& u_h) {
  const Eigen::VectorXd qu = project_primal(mesh, dofs, u.value);
  const Eigen::VectorXd e_h = u_h - qu;
  const int nu = dofs.u_per_element();

  // l_u(w) = sum_T (L w0 + b.grad w0, u - Qu)_T
  //        + <w0 - wb, (a grad(u - Qu) - b (u - Qu)).n>_dT   (zero: wb is the trace of w0)
  //        - <a grad w0 . n - wn, u - Qu>_dT
  Eigen::VectorXd ell = Eigen::VectorXd::Zero(dofs.num_free_lambda());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementSpace sp = element_space(mesh, t, dofs.s());
    const Eigen::VectorXd qt = qu.segment(dofs.u(t, 0), nu);
    const auto defect = [&](const Point2& p) { return u.value(p) - sp.basis.eval(p).dot(qt); };
    const P2Element p2(mesh, t);
    const auto& tri = mesh.triangle(t);
    Eigen::VectorXd local = Eigen::VectorXd::Zero(kLocalLambdaDofs);

    for (std::size_t q = 0; q < sp.rule.size(); ++q) {
      const Point2& p = sp.rule.points[q];
      const auto grads = p2.gradients(p);
      const auto hess = p2.hessians(p);
      const Eigen::Vector2d b = coeffs.b(p);
      const double d = defect(p);
      for (int i = 0; i < 6; ++i) {
        const Eigen::Vector2d gi = grads.row(i).transpose();
        local[i] += sp.rule.weights[q] * d *
                    (coeffs.apply_L(p, gi, hess.row(i).transpose()) + b.dot(gi));
      }
    }
    for (int e = 0; e < 3; ++e) {
      const Point2& va = mesh.vertex(tri[e]);
      const Point2& vb = mesh.vertex(tri[(e + 1) % 3]);
      const QuadRule er = edge_rule(va, vb);
      const EdgeBasis flux(1, va, vb);
      const Point2& n = sp.geometry.normals[e];
      for (std::size_t q = 0; q < er.size(); ++q) {
        const Point2& p = er.points[q];
        const double d = defect(p);
        local.head(6) -= er.weights[q] * d * (p2.gradients(p) * (coeffs.a(p) * n));
        local.segment(6 + 2 * e, 2) += er.weights[q] * d * flux.eval(p);
      }
    }
    const auto global = dofs.element_lambda(t);
    const auto sign = dofs.element_signs(t);
    for (int i = 0; i < kLocalLambdaDofs; ++i) {
      const int gi = dofs.free_index(global[i]);
      if (gi >= 0) ell[gi] += sign[i] * local[i];
    }
  }

  const Eigen::VectorXd s_term = S * lambda_free;
  const Eigen::VectorXd b_term = B.transpose() * e_h;
  ErrorEquationCheck out;
  out.max_residual = (s_term + b_term - ell).lpNorm<Eigen::Infinity>();
  out.max_term = std::max({s_term.lpNorm<Eigen::Infinity>(), b_term.lpNorm<Eigen::Infinity>(),
                           ell.lpNorm<Eigen::Infinity>()});
  return out;
}

}  // namespace pdwg
