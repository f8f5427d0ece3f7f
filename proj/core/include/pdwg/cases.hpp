#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pdwg/assembly.hpp"
#include "pdwg/coefficients.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/weakops.hpp"

namespace pdwg {

class UnknownCase : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoExactSolution : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One test problem: geometry, coefficients, boundary partition and data.
/// Driven problems have no exact solution.
struct ManufacturedCase {
  std::string id;
  std::string description;
  DomainId domain = DomainId::Omega1;
  std::optional<SmoothFunction> exact;
  Coefficients coeffs;
  /// Element order the case was published with.
  int s = 1;
  BoundaryPredicate boundary;
  ProblemData data;

  bool driven() const { return !exact.has_value(); }
  /// Uniformly refined mesh with this case's boundary partition applied.
  Mesh mesh(int level) const;
};

const std::vector<ManufacturedCase>& catalog();

/// Looks a case up by id or alias. Throws UnknownCase.
const ManufacturedCase& find_case(const std::string& id);

/// All ids accepted by find_case, aliases included.
std::vector<std::string> case_ids();

/// f = -div(a grad u) + div(b u), g1 = u, g2 = (-a grad u + b u).n.
ProblemData manufactured_data(const SmoothFunction& u, const Coefficients& c);

/// Nodal interpolant: vertex values (s=1) or the centroid value (s=0) of
/// every element, as coefficients in the element's TriBasis(s). Throws
/// NoExactSolution for driven cases.
Eigen::VectorXd interpolate_Ih(const ManufacturedCase& c, const Mesh& mesh, int s);
Eigen::VectorXd interpolate_Ih(const ScalarField& u, const Mesh& mesh, int s);

/// The case with its data replaced by zero (f = g1 = g2 = 0).
ManufacturedCase with_zero_data(const ManufacturedCase& c);

}  // namespace pdwg
