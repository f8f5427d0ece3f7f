#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pdwg/assembly.hpp"
#include "pdwg/cases.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/solver.hpp"

namespace pdwg {

/// (sum_T int_T (u_h - I_h u)^2)^{1/2}; both vectors in the TriBasis(s) coefficients.
double norm_e0(const Mesh& mesh, int s, const Eigen::VectorXd& u_h, const Eigen::VectorXd& Ih_u);
/// L2 norm of the P2 component; `lambda` holds all lambda dofs (DofMap::expand).
double norm_lambda0(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& lambda);
/// (sum_T h_T int_dT lambda_n^2)^{1/2}, summed per element-edge incidence.
double norm_lambda1(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& lambda);

/// log2(coarse / fine) rounded to three decimals; empty if either is not positive.
std::optional<double> observed_order(double coarse, double fine);

struct LevelResult {
  int level = 0;
  int one_over_h = 1;
  int ndof_lambda = 0;
  int ndof_u = 0;
  double nl0 = 0.0;
  std::optional<double> order_nl0;
  double nl1 = 0.0;
  std::optional<double> order_nl1;
  /// Empty for driven cases.
  std::optional<double> e0;
  std::optional<double> order_e0;
  double residual = 0.0;
  double seconds = 0.0;

  bool operator==(const LevelResult&) const = default;
};

struct ConvergenceReport {
  std::string case_id;
  int s = 1;
  double gamma = 0.0;
  std::string flux = "signed";
  std::vector<LevelResult> levels;

  bool operator==(const ConvergenceReport&) const = default;
};

/// Everything produced while solving one level, handed to RunConfig::on_level.
struct LevelState {
  int level = 0;
  const Mesh* mesh = nullptr;
  const DiscreteProblem* problem = nullptr;
  const SolveReport* solve = nullptr;
  Eigen::VectorXd lambda;  ///< all lambda dofs
};

struct RunConfig {
  std::string case_id;
  int s = 1;
  /// Replaces the case's gamma when set.
  std::optional<double> gamma;
  /// Levels 0..max_level are solved; 1/h = 2^level on the unit-cell tiling.
  int max_level = 1;
  FluxCoupling coupling = FluxCoupling::Signed;
  std::function<void(const LevelState&)> on_level;
};

/// Throws UnknownCase, std::invalid_argument for a bad config, and
/// SingularSystem naming the level that failed.
ConvergenceReport run_convergence(const RunConfig& config);

}  // namespace pdwg
