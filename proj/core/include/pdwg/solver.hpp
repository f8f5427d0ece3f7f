#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "pdwg/assembly.hpp"

namespace pdwg {

/// The saddle system could not be solved: factorization broke down or the
/// certified residual exceeds kSingularResidual.
class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kSingularResidual = 1e-6;

struct SolveReport {
  Eigen::VectorXd solution;
  Eigen::VectorXd lambda;  ///< free lambda dofs
  Eigen::VectorXd u;
  /// ||K x - rhs||_2 / ||rhs||_2, or the absolute norm when rhs = 0. Computed
  /// by a separate sparse mat-vec after the solve.
  double residual = 0.0;
  long nnz_matrix = 0;
  long nnz_factors = 0;

  double fill() const { return nnz_matrix > 0 ? double(nnz_factors) / double(nnz_matrix) : 0.0; }
};

/// Sparse LU (COLAMD ordering) with one step of iterative refinement.
/// Throws SingularSystem.
SolveReport solve(const SaddleSystem& system);

}  // namespace pdwg
