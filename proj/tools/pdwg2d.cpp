// pdwg2d: refinement studies for the primal-dual weak Galerkin discretization.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdwg/cases.hpp"
#include "pdwg/harness.hpp"
#include "pdwg/plot.hpp"
#include "pdwg/report.hpp"
#include "pdwg/solver.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSingular = 2;

void dump_system(const pdwg::SaddleSystem& sys, const std::string& path) {
  std::ofstream k(path);
  std::ofstream r(path + ".rhs");
  if (!k || !r) throw std::runtime_error("cannot write " + path);
  pdwg::write_matrix(k, sys.K);
  pdwg::write_vector(r, sys.rhs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDWG convection-diffusion solver"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Solve a catalog case on successive uniform refinements");
  std::string case_id;
  int s = 1;
  std::optional<double> gamma;
  int levels = 1;
  std::string out = "csv";
  std::string plot;
  std::string plot_out;
  std::string dump;
  std::string flux = "signed";
  run->add_option("--case", case_id, "Case id (see `pdwg2d list`)")->required();
  run->add_option("--s", s, "Degree of the primal space")->required()->check(CLI::IsMember({0, 1}));
  run->add_option("--gamma", gamma, "Override the stabilizer parameter (>= 0)");
  run->add_option("--levels", levels, "Finest refinement level; 1/h = 2^levels")
      ->required()
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out, "Report format written to stdout")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* plot_opt = run->add_option("--plot", plot,
                                   "Plot u_h on the finest level: surface (element colour fill, "
                                   "viridis) or contour (12 equally spaced levels)")
                       ->check(CLI::IsMember({"surface", "contour"}));
  auto* plot_out_opt = run->add_option("--plot-out", plot_out, "SVG output path");
  plot_opt->needs(plot_out_opt);
  plot_out_opt->needs(plot_opt);
  run->add_option("--dump-system", dump,
                  "Write the finest-level matrix to <path> and the right-hand side to <path>.rhs");
  run->add_option("--flux", flux, "Flux coupling across interior edges")
      ->check(CLI::IsMember({"signed", "per-side"}));

  auto* list = app.add_subcommand("list", "Print the available case ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (list->parsed()) {
    for (const auto& c : pdwg::catalog()) {
      std::cout << c.id << "  s=" << c.s << "  " << pdwg::to_string(c.domain) << "  "
                << c.description << '\n';
    }
    std::cout << "table9-s1  alias of table7\ntable9-s0  alias of table8\n";
    return 0;
  }

  try {
    pdwg::RunConfig config;
    config.case_id = case_id;
    config.s = s;
    config.gamma = gamma;
    config.max_level = levels;
    config.coupling =
        flux == "signed" ? pdwg::FluxCoupling::Signed : pdwg::FluxCoupling::PerSide;
    config.on_level = [&](const pdwg::LevelState& st) {
      if (st.level != levels) return;
      if (!dump.empty()) dump_system(st.problem->system, dump);
      if (!plot.empty()) {
        pdwg::emit_plot(*st.mesh, s, st.solve->u, pdwg::parse_plot_kind(plot), plot_out);
      }
    };
    const pdwg::ConvergenceReport report = pdwg::run_convergence(config);
    std::cout << pdwg::to_string(report, pdwg::parse_report_format(out));
  } catch (const pdwg::SingularSystem& e) {
    std::cerr << "singular system: " << e.what() << '\n';
    return kExitSingular;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
