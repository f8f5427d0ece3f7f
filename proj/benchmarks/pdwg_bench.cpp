#include <benchmark/benchmark.h>

#include "pdwg/cases.hpp"
#include "pdwg/solver.hpp"
#include "pdwg/weakops.hpp"

using namespace pdwg;

static void BM_WeakElement(benchmark::State& state) {
  const std::array<Point2, 3> v{Point2(0.1, 0.0), Point2(1.0, 0.3), Point2(0.2, 0.9)};
  const Coefficients coeffs = find_case("table9").coeffs;
  for (auto _ : state) {
    const WeakElement el(v, WeakLayout::Conforming);
    benchmark::DoNotOptimize(weak_L(el, 1, coeffs));
  }
}
BENCHMARK(BM_WeakElement);

static void BM_Assemble(benchmark::State& state) {
  const ManufacturedCase& c = find_case("table1");
  const Mesh mesh = c.mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_problem(mesh, 1, c.coeffs, c.data));
  state.counters["triangles"] = mesh.num_triangles();
}
BENCHMARK(BM_Assemble)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_Solve(benchmark::State& state) {
  const ManufacturedCase& c = find_case("table1");
  const Mesh mesh = c.mesh(static_cast<int>(state.range(0)));
  const DiscreteProblem p = assemble_problem(mesh, 1, c.coeffs, c.data);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p.system));
  state.counters["unknowns"] = static_cast<double>(p.system.rhs.size());
}
BENCHMARK(BM_Solve)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
