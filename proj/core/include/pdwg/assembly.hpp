#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "pdwg/coefficients.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/polyquad.hpp"
#include "pdwg/weakops.hpp"

namespace pdwg {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Number of lambda dofs attached to one element: six P2 nodes and two flux
/// coefficients on each of the three edges.
inline constexpr int kLocalLambdaDofs = 12;

/// Continuous P2 Lagrange element on one triangle. Local nodes 0..2 are the
/// vertices, 3..5 the midpoints of local edges 0..2.
class P2Element {
 public:
  P2Element(const Mesh& mesh, int t);

  /// Nodal-to-monomial map: coefficients in the TriBasis(2) of the element.
  const Eigen::Matrix<double, 6, 6>& to_monomial() const { return to_monomial_; }
  const TriBasis& monomials() const { return monomials_; }

  Eigen::Matrix<double, 6, 1> values(const Point2& p) const;
  Eigen::Matrix<double, 6, 2> gradients(const Point2& p) const;
  /// Rows hold (d_xx, d_xy, d_yy).
  Eigen::Matrix<double, 6, 3> hessians(const Point2& p) const;

 private:
  TriBasis monomials_;
  Eigen::Matrix<double, 6, 6> to_monomial_;
};

/// How the flux component lambda_n is shared between the two sides of an
/// interior edge.
enum class FluxCoupling {
  /// One P1 flux per geometric edge, taken along the normal pointing out of
  /// the edge's first element; the neighbour sees it with flipped sign.
  Signed,
  /// Independent P1 flux on each element-edge incidence.
  PerSide,
};

std::string to_string(FluxCoupling coupling);

/// Global numbering of the PDWG unknowns for the conforming (C0) element.
///
/// lambda dofs: [P2 vertex nodes | P2 edge nodes | flux coefficients]. The
/// flux block holds two coefficients per geometric edge (Signed) or per
/// element-edge incidence (PerSide). u dofs: dim P_s per element. Dofs on
/// which W_h^0 imposes a homogeneous value are constrained and removed from
/// the linear system; the remaining lambda dofs are numbered "free".
class DofMap {
 public:
  DofMap(const Mesh& mesh, int s, FluxCoupling coupling = FluxCoupling::Signed);

  int s() const { return s_; }
  FluxCoupling coupling() const { return coupling_; }
  int u_per_element() const { return TriBasis::dimension(s_); }

  int num_lambda() const { return num_lambda_; }
  int num_free_lambda() const { return static_cast<int>(free_to_lambda_.size()); }
  int num_u() const { return num_u_; }

  int p2_vertex(int v) const { return v; }
  int p2_edge(int e) const { return num_vertices_ + e; }
  /// Flux dof j of local edge `local_edge` of t.
  int lambda_n(int t, int local_edge, int j) const;
  int u(int t, int j) const { return t * u_per_element() + j; }

  /// [P2 nodes 0..5 | flux dofs edge 0 (2), edge 1 (2), edge 2 (2)]
  std::array<int, kLocalLambdaDofs> element_lambda(int t) const;
  /// Local coefficient = sign * global coefficient (all +1 except Signed fluxes).
  std::array<double, kLocalLambdaDofs> element_signs(int t) const;

  bool constrained(int lambda_dof) const { return lambda_to_free_[lambda_dof] < 0; }
  /// -1 for constrained dofs.
  int free_index(int lambda_dof) const { return lambda_to_free_[lambda_dof]; }
  int lambda_of_free(int free) const { return free_to_lambda_[free]; }

  /// Scatters a free-dof vector into a full lambda vector (zeros on constraints).
  Eigen::VectorXd expand(const Eigen::VectorXd& free_values) const;
  Eigen::VectorXd restrict_to_free(const Eigen::VectorXd& lambda) const;

 private:
  int s_;
  FluxCoupling coupling_;
  int num_vertices_;
  int num_edges_;
  int num_lambda_;
  int num_u_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 3>> triangle_edges_;
  /// Signed coupling: sign of the flux as seen from (t, local edge), and the
  /// orientation of the local edge relative to the global one.
  std::vector<std::array<int, 3>> flux_side_;
  std::vector<std::array<int, 3>> edge_orientation_;
  std::vector<int> lambda_to_free_;
  std::vector<int> free_to_lambda_;
};

/// Local lambda coefficients of element t ([P2 nodes | flux], flux signs
/// applied) from a full lambda vector.
Eigen::Matrix<double, kLocalLambdaDofs, 1> gather_local(const DofMap& dofs, int t,
                                                        const Eigen::VectorXd& lambda);

/// Load f and boundary data: u = g1 on Dirichlet edges, (-a grad u + b u).n = g2
/// on Neumann edges.
struct ProblemData {
  ScalarField f;
  ScalarField g1;
  std::function<double(const Point2& x, const Point2& normal)> g2;
};

struct StabilizerOptions {
  /// Also integrate h^-3 <(|a|_T + |b.n|)(l0 - lb), w0 - wb>, which vanishes
  /// identically for the conforming element.
  bool include_trace_term = false;
};

/// Element stabilizer s_T on the local lambda dofs.
Eigen::MatrixXd local_stabilizer(const Mesh& mesh, int t, const Coefficients& coeffs,
                                 const StabilizerOptions& options = {});
/// Element coupling (u, L_w w + b.grad_w w)_T, rows = u basis of P_s(T).
Eigen::MatrixXd local_coupling(const Mesh& mesh, int t, const Coefficients& coeffs, int s);
/// Element load -(f, w0)_T + <g2, wb>_{dT cap Neumann} + <g1, wn>_{dT cap Dirichlet}.
Eigen::VectorXd local_load(const Mesh& mesh, int t, const ProblemData& data);

/// Stabilizer matrix over the free lambda dofs.
SparseMatrix assemble_S(const Mesh& mesh, const DofMap& dofs, const Coefficients& coeffs,
                        const StabilizerOptions& options = {});
/// Coupling matrix: rows = u dofs, columns = free lambda dofs.
SparseMatrix assemble_B(const Mesh& mesh, const DofMap& dofs, const Coefficients& coeffs);
/// Load vector over the free lambda dofs.
Eigen::VectorXd assemble_rhs(const Mesh& mesh, const DofMap& dofs, const ProblemData& data);

/// K = [[S, B^T], [B, 0]], rhs = [F; 0].
struct SaddleSystem {
  SparseMatrix K;
  Eigen::VectorXd rhs;
  int num_lambda = 0;
  int num_u = 0;

  int size() const { return num_lambda + num_u; }
};

/// Throws std::invalid_argument on mismatched dimensions.
SaddleSystem build_system(const SparseMatrix& S, const SparseMatrix& B, const Eigen::VectorXd& F);

/// Writes "rows cols nnz" followed by zero-based "row col value" records.
void write_matrix(std::ostream& out, const SparseMatrix& m);
/// Writes "rows 1 rows" followed by zero-based "row 0 value" records.
void write_vector(std::ostream& out, const Eigen::VectorXd& v);

/// Everything needed to solve one PDWG problem on one mesh.
struct DiscreteProblem {
  DofMap dofs;
  SparseMatrix S;
  SparseMatrix B;
  Eigen::VectorXd F;
  SaddleSystem system;
};

DiscreteProblem assemble_problem(const Mesh& mesh, int s, const Coefficients& coeffs,
                                 const ProblemData& data,
                                 FluxCoupling coupling = FluxCoupling::Signed);

/// Per-element L2 projection Q^s u in the u dof numbering.
Eigen::VectorXd project_primal(const Mesh& mesh, const DofMap& dofs, const ScalarField& u);

struct ErrorEquationCheck {
  /// max_w |s(eps_h, w) + b(e_h, w) - l_u(w)| over the free lambda dofs
  double max_residual = 0.0;
  /// Largest magnitude among the three terms, for scaling.
  double max_term = 0.0;

  double relative() const { return max_term > 0.0 ? max_residual / max_term : max_residual; }
};

/// Residual of the error equation with e_h = u_h - Q^s u and eps_h = lambda_h
/// (free dofs). l_u is integrated directly on the P2 nodal basis.
ErrorEquationCheck verify_error_equation(const Mesh& mesh, const DofMap& dofs,
                                         const Coefficients& coeffs, const SmoothFunction& u,
                                         const SparseMatrix& S, const SparseMatrix& B,
                                         const Eigen::VectorXd& lambda_free,
                                         const Eigen::VectorXd& u_h);

}  // namespace pdwg
