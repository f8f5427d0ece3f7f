#include "pdwg/harness.hpp"

#include <chrono>
#include <cmath>

namespace pdwg {

double norm_e0(const Mesh& mesh, int s, const Eigen::VectorXd& u_h, const Eigen::VectorXd& Ih_u) {
  const int nu = TriBasis::dimension(s);
  if (u_h.size() != Ih_u.size() || u_h.size() != mesh.num_triangles() * nu) {
    throw std::invalid_argument("norm_e0: vector sizes do not match the mesh");
  }
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementSpace sp = element_space(mesh, t, s);
    const Eigen::VectorXd e = u_h.segment(t * nu, nu) - Ih_u.segment(t * nu, nu);
    sum += e.dot(mass_matrix(sp.basis, sp.rule) * e);
  }
  return std::sqrt(std::max(0.0, sum));
}

double norm_lambda0(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& lambda) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const P2Element p2(mesh, t);
    const auto local = gather_local(dofs, t, lambda);
    const auto& tri = mesh.triangle(t);
    const QuadRule rule =
        triangle_rule(mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2]));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double v = p2.values(rule.points[q]).dot(local.head<6>());
      sum += rule.weights[q] * v * v;
    }
  }
  return std::sqrt(sum);
}

double norm_lambda1(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& lambda) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto local = gather_local(dofs, t, lambda);
    const auto& tri = mesh.triangle(t);
    const double h = mesh.element_geometry(t).diameter;
    for (int e = 0; e < 3; ++e) {
      const Point2& a = mesh.vertex(tri[e]);
      const Point2& b = mesh.vertex(tri[(e + 1) % 3]);
      const EdgeBasis flux(1, a, b);
      const QuadRule er = edge_rule(a, b);
      for (std::size_t q = 0; q < er.size(); ++q) {
        const double v = flux.eval(er.points[q]).dot(local.segment<2>(6 + 2 * e));
        sum += h * er.weights[q] * v * v;
      }
    }
  }
  return std::sqrt(sum);
}

std::optional<double> observed_order(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return std::nullopt;
  return std::round(1000.0 * std::log2(coarse / fine)) / 1000.0;
}

ConvergenceReport run_convergence(const RunConfig& config) {
  if (config.s < 0 || config.s > 1) throw std::invalid_argument("s must be 0 or 1");
  if (config.max_level < 1) throw std::invalid_argument("at least one refinement is required");
  if (config.gamma && *config.gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");

  const ManufacturedCase& c = find_case(config.case_id);
  Coefficients coeffs = c.coeffs;
  if (config.gamma) coeffs.gamma = *config.gamma;

  ConvergenceReport report;
  report.case_id = config.case_id;
  report.s = config.s;
  report.gamma = coeffs.gamma;
  report.flux = to_string(config.coupling);

  Mesh mesh = c.mesh(0);
  for (int level = 0; level <= config.max_level; ++level) {
    if (level > 0) mesh = refine_uniform(mesh);
    const auto start = std::chrono::steady_clock::now();

    const DiscreteProblem problem = assemble_problem(mesh, config.s, coeffs, c.data, config.coupling);
    SolveReport sol;
    try {
      sol = solve(problem.system);
    } catch (const SingularSystem& e) {
      throw SingularSystem("level " + std::to_string(level) + ": " + e.what());
    }
    const Eigen::VectorXd lambda = problem.dofs.expand(sol.lambda);

    LevelResult r;
    r.level = level;
    r.one_over_h = 1 << level;
    r.ndof_lambda = problem.system.num_lambda;
    r.ndof_u = problem.system.num_u;
    r.nl0 = norm_lambda0(mesh, problem.dofs, lambda);
    r.nl1 = norm_lambda1(mesh, problem.dofs, lambda);
    if (!c.driven()) r.e0 = norm_e0(mesh, config.s, sol.u, interpolate_Ih(c, mesh, config.s));
    r.residual = sol.residual;
    if (!report.levels.empty()) {
      const LevelResult& prev = report.levels.back();
      r.order_nl0 = observed_order(prev.nl0, r.nl0);
      r.order_nl1 = observed_order(prev.nl1, r.nl1);
      if (r.e0) r.order_e0 = observed_order(*prev.e0, *r.e0);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.levels.push_back(r);

    if (config.on_level) config.on_level(LevelState{level, &mesh, &problem, &sol, lambda});
  }
  return report;
}

}  // namespace pdwg
