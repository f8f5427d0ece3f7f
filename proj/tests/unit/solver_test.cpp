#include <gtest/gtest.h>

#include "pdwg/cases.hpp"
#include "pdwg/solver.hpp"

using namespace pdwg;

namespace {

SaddleSystem diagonal_two() {
  SaddleSystem sys;
  sys.K.resize(2, 2);
  sys.K.insert(0, 0) = 2.0;
  sys.K.insert(1, 1) = 2.0;
  sys.K.makeCompressed();
  sys.rhs = Eigen::Vector2d(2.0, 4.0);
  sys.num_lambda = 1;
  sys.num_u = 1;
  return sys;
}

}  // namespace

TEST(Solve, DiagonalSanity) {
  const SolveReport r = solve(diagonal_two());
  EXPECT_DOUBLE_EQ(r.solution[0], 1.0);
  EXPECT_DOUBLE_EQ(r.solution[1], 2.0);
  EXPECT_LE(r.residual, 1e-14);
  EXPECT_EQ(r.lambda.size(), 1);
  EXPECT_EQ(r.u.size(), 1);
  EXPECT_GT(r.nnz_factors, 0);
}

TEST(Solve, SingularMatrixIsReported) {
  SaddleSystem sys = diagonal_two();
  sys.K.coeffRef(1, 1) = 0.0;
  sys.K.prune(0.0);
  EXPECT_THROW(solve(sys), SingularSystem);
}

TEST(Solve, SizeMismatchIsRejected) {
  SaddleSystem sys = diagonal_two();
  sys.rhs = Eigen::Vector3d(1, 2, 3);
  EXPECT_THROW(solve(sys), std::invalid_argument);
}

TEST(Solve, ZeroDataGivesZeroSolution) {
  for (const char* id : {"table1", "table3", "table7"}) {
    const ManufacturedCase zero = with_zero_data(find_case(id));
    const Mesh mesh = zero.mesh(1);
    const SolveReport r = solve(assemble_problem(mesh, 1, zero.coeffs, zero.data).system);
    EXPECT_LE(r.solution.lpNorm<Eigen::Infinity>(), 1e-10) << id;
  }
}

TEST(Solve, ManufacturedSystemResidual) {
  const ManufacturedCase& c = find_case("table1");
  const Mesh mesh = c.mesh(3);
  const DiscreteProblem p = assemble_problem(mesh, 1, c.coeffs, c.data);
  const SolveReport r = solve(p.system);
  EXPECT_LE(r.residual, 1e-10);
  const Eigen::VectorXd res = p.system.K * r.solution - p.system.rhs;
  EXPECT_NEAR(res.norm() / p.system.rhs.norm(), r.residual, 1e-12);
  EXPECT_EQ(r.lambda.size(), p.dofs.num_free_lambda());
  EXPECT_EQ(r.u.size(), p.dofs.num_u());
}

TEST(Solve, BitIdenticalRepeats) {
  const ManufacturedCase& c = find_case("table13");
  const DiscreteProblem p = assemble_problem(c.mesh(2), 1, c.coeffs, c.data);
  const SolveReport a = solve(p.system);
  const SolveReport b = solve(p.system);
  EXPECT_EQ(a.solution, b.solution);
}

TEST(Solve, PerSideFluxWithoutStabilizationIsSingular) {
  // With independent fluxes on each side of an interior edge, s=0 and gamma=0
  // leave a kernel from level 2 on.
  const ManufacturedCase& c = find_case("table5");
  const Mesh mesh = c.mesh(2);
  const DiscreteProblem p = assemble_problem(mesh, 0, c.coeffs, c.data, FluxCoupling::PerSide);
  EXPECT_THROW(solve(p.system), SingularSystem);
  EXPECT_NO_THROW(solve(assemble_problem(mesh, 0, c.coeffs, c.data).system));
}
