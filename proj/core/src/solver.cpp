#include "pdwg/solver.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

namespace pdwg {

namespace {

double relative_residual(const SparseMatrix& K, const Eigen::VectorXd& x, const Eigen::VectorXd& rhs) {
  const double r = (K * x - rhs).norm();
  const double b = rhs.norm();
  return b > 0.0 ? r / b : r;
}

}  // namespace

SolveReport solve(const SaddleSystem& system) {
  const SparseMatrix& K = system.K;
  if (K.rows() != K.cols()) throw std::invalid_argument("solve: matrix is not square");
  if (system.rhs.size() != K.rows()) throw std::invalid_argument("solve: rhs size mismatch");
  if (system.num_lambda + system.num_u != K.rows()) {
    throw std::invalid_argument("solve: partition does not match matrix size");
  }

  SparseMatrix Kc = K;
  Kc.makeCompressed();
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(Kc);
  lu.factorize(Kc);
  if (lu.info() != Eigen::Success) {
    throw SingularSystem("sparse LU failed: " + lu.lastErrorMessage());
  }

  SolveReport report;
  report.solution = lu.solve(system.rhs);
  const Eigen::VectorXd correction = lu.solve(system.rhs - K * report.solution);
  report.solution += correction;
  if (!report.solution.allFinite()) throw SingularSystem("solution is not finite");

  report.residual = relative_residual(K, report.solution, system.rhs);
  if (report.residual > kSingularResidual) {
    throw SingularSystem("residual " + std::to_string(report.residual) + " exceeds tolerance");
  }
  report.lambda = report.solution.head(system.num_lambda);
  report.u = report.solution.tail(system.num_u);
  report.nnz_matrix = static_cast<long>(K.nonZeros());
  report.nnz_factors = static_cast<long>(lu.nnzL() + lu.nnzU());
  return report;
}

}  // namespace pdwg
