#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "pdwg/cases.hpp"

using namespace pdwg;

namespace {

// Sixth-order central difference of the flux F = -a grad u + b u, using only
// point values of u, a and b. The inner gradient is differenced as well.
double fd_source(const ManufacturedCase& c, const Point2& x) {
  const double h = 1e-3;
  const double w[3] = {45.0, -9.0, 1.0};
  auto d1 = [&](const std::function<double(const Point2&)>& f, const Point2& p, int dir) {
    Point2 e = Point2::Zero();
    e[dir] = h;
    double s = 0.0;
    for (int k = 1; k <= 3; ++k) s += w[k - 1] * (f(p + k * e) - f(p - k * e));
    return s / (60.0 * h);
  };
  const auto& u = c.exact->value;
  const auto flux = [&](int comp) {
    return [&, comp](const Point2& p) {
      const Eigen::Vector2d grad(d1(u, p, 0), d1(u, p, 1));
      return -(c.coeffs.a(p) * grad)[comp] + c.coeffs.b(p)[comp] * u(p);
    };
  };
  return d1(flux(0), x, 0) + d1(flux(1), x, 1);
}

Point2 sample(DomainId d, std::mt19937& rng) {
  const auto outline = domain_outline(d);
  Eigen::AlignedBox2d box;
  for (const auto& p : outline) box.extend(p);
  std::uniform_real_distribution<double> ux(box.min().x(), box.max().x());
  std::uniform_real_distribution<double> uy(box.min().y(), box.max().y());
  return {ux(rng), uy(rng)};
}

}  // namespace

TEST(Catalog, IdsAreUniqueAndResolvable) {
  std::set<std::string> seen;
  for (const auto& c : catalog()) {
    EXPECT_TRUE(seen.insert(c.id).second) << c.id;
    EXPECT_EQ(&find_case(c.id), &c);
    EXPECT_TRUE(c.s == 0 || c.s == 1);
    EXPECT_GE(c.coeffs.gamma, 0.0);
  }
  for (const auto& id : {"table1", "table5", "table9", "fig1", "fig2-a1", "fig3-omega4-f1"}) {
    EXPECT_NO_THROW(find_case(id)) << id;
  }
  EXPECT_THROW(find_case("table99"), UnknownCase);
  const auto ids = case_ids();
  EXPECT_EQ(ids.size(), catalog().size() + 2);
}

TEST(Catalog, CrackedAliases) {
  const ManufacturedCase& s1 = find_case("table9-s1");
  const ManufacturedCase& s0 = find_case("table9-s0");
  EXPECT_EQ(s1.domain, DomainId::Omega4);
  EXPECT_EQ(s0.domain, DomainId::Omega4);
  EXPECT_EQ(s1.s, 1);
  EXPECT_EQ(s0.s, 0);
  const Point2 x(0.3, -0.4);
  EXPECT_NEAR(s1.coeffs.a(x)(0, 0), 1e-5, 1e-20);
  EXPECT_EQ(s1.coeffs.b(x), Eigen::Vector2d(1, 0));
}

TEST(Catalog, ManufacturedDataIsConsistent) {
  std::mt19937 rng(42);
  for (const auto& c : catalog()) {
    if (c.driven()) continue;
    const auto& u = *c.exact;
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const Point2 x = sample(c.domain, rng);
      const double f = c.data.f(x);
      worst = std::max(worst, std::abs(f - fd_source(c, x)) / std::max(1.0, std::abs(f)));
      EXPECT_EQ(c.data.g1(x), u.value(x));
      const Point2 n = Point2(std::cos(k), std::sin(k));
      const double g2 = (-c.coeffs.a(x) * u.gradient(x) + c.coeffs.b(x) * u.value(x)).dot(n);
      EXPECT_NEAR(c.data.g2(x, n), g2, 1e-12 * std::max(1.0, std::abs(g2)));
    }
    EXPECT_LE(worst, 1e-9) << c.id;
  }
}

TEST(Catalog, DerivativesOfExactSolutions) {
  const double h = 1e-5;
  std::mt19937 rng(8);
  for (const auto& c : catalog()) {
    if (c.driven()) continue;
    const auto& u = *c.exact;
    const Point2 x = sample(c.domain, rng);
    const Point2 ex(h, 0), ey(0, h);
    const double dx = (u.value(x + ex) - u.value(x - ex)) / (2 * h);
    const double dy = (u.value(x + ey) - u.value(x - ey)) / (2 * h);
    const double scale = std::max(1.0, u.gradient(x).norm());
    EXPECT_NEAR(u.gradient(x).x(), dx, 1e-6 * scale) << c.id;
    EXPECT_NEAR(u.gradient(x).y(), dy, 1e-6 * scale) << c.id;
    const Eigen::Vector3d H = u.hessian(x);
    const double hxx = (u.gradient(x + ex) - u.gradient(x - ex)).x() / (2 * h);
    const double hxy = (u.gradient(x + ey) - u.gradient(x - ey)).x() / (2 * h);
    const double hyy = (u.gradient(x + ey) - u.gradient(x - ey)).y() / (2 * h);
    const double hs = std::max(1.0, H.norm());
    EXPECT_NEAR(H[0], hxx, 1e-5 * hs) << c.id;
    EXPECT_NEAR(H[1], hxy, 1e-5 * hs) << c.id;
    EXPECT_NEAR(H[2], hyy, 1e-5 * hs) << c.id;
  }
}

TEST(Catalog, VariableDiffusionDivergences) {
  const ManufacturedCase& c = find_case("table9");
  for (const Point2& x : {Point2(0.2, 0.7), Point2(0.9, 0.1)}) {
    EXPECT_NEAR(c.coeffs.div_a(x).x(), 2 * x.x(), 1e-15);
    EXPECT_NEAR(c.coeffs.div_a(x).y(), 2 * x.y(), 1e-15);
    EXPECT_NEAR(c.coeffs.div_b(x), 2.0, 1e-15);
    EXPECT_NEAR(c.coeffs.a(x)(0, 0), 1 + x.squaredNorm(), 1e-15);
  }
}

TEST(Catalog, BoundaryPartitionCoversTheBoundary) {
  for (const auto& c : catalog()) {
    const Mesh m = c.mesh(1);
    for (const auto& e : m.edges()) {
      if (!e.is_boundary()) continue;
      EXPECT_TRUE(e.tag == BoundaryTag::Dirichlet || e.tag == BoundaryTag::Neumann) << c.id;
    }
  }
}

TEST(Catalog, CaptionBoundaryReadings) {
  auto count = [](const Mesh& m, BoundaryTag tag) {
    int n = 0;
    for (const auto& e : m.edges()) n += e.is_boundary() && e.tag == tag;
    return n;
  };
  // Neumann on the bottom edge of the unit square.
  const Mesh t2 = find_case("table2").mesh(1);
  EXPECT_EQ(count(t2, BoundaryTag::Neumann), 2);
  for (int e = 0; e < t2.num_edges(); ++e) {
    if (t2.edge(e).tag == BoundaryTag::Neumann) EXPECT_NEAR(t2.edge_midpoint(e).y(), 0.0, 1e-15);
  }
  // Neumann on the inflow side x = -1 of the cracked square.
  const Mesh t7 = find_case("table7").mesh(0);
  for (int e = 0; e < t7.num_edges(); ++e) {
    if (t7.edge(e).tag == BoundaryTag::Neumann) EXPECT_NEAR(t7.edge_midpoint(e).x(), -1.0, 1e-15);
  }
  EXPECT_EQ(count(t7, BoundaryTag::Neumann), 2);
  // Rotational convection: Neumann exactly where b.n < 0.
  const ManufacturedCase& f3 = find_case("fig3-omega3-f0");
  const Mesh m3 = f3.mesh(2);
  for (int e = 0; e < m3.num_edges(); ++e) {
    if (!m3.edge(e).is_boundary()) continue;
    const double bn = f3.coeffs.b(m3.edge_midpoint(e)).dot(m3.boundary_normal(e));
    EXPECT_EQ(m3.edge(e).tag, bn < -1e-12 ? BoundaryTag::Neumann : BoundaryTag::Dirichlet);
  }
}

TEST(Interpolant, ReproducesPolynomials) {
  const Mesh mesh = build_mesh(DomainId::Omega2, 1);
  const ScalarField lin = [](const Point2& p) { return 2.0 - p.x() + 3.0 * p.y(); };
  const Eigen::VectorXd i1 = interpolate_Ih(lin, mesh, 1);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementSpace sp = element_space(mesh, t, 1);
    for (const auto& p : sp.rule.points) EXPECT_NEAR(sp.basis.eval(p).dot(i1.segment(3 * t, 3)), lin(p), 1e-13);
  }
  const Eigen::VectorXd i0 = interpolate_Ih([](const Point2&) { return 1.0; }, mesh, 0);
  EXPECT_EQ(i0, Eigen::VectorXd::Ones(mesh.num_triangles()));
}

TEST(Interpolant, QuadraticAtVerticesAndCentroid) {
  const Mesh mesh({{0.1, 0.2}, {0.9, 0.4}, {0.3, 1.0}}, {{0, 1, 2}});
  const ScalarField x2 = [](const Point2& p) { return p.x() * p.x(); };
  const ElementSpace sp = element_space(mesh, 0, 1);
  const Eigen::VectorXd c = interpolate_Ih(x2, mesh, 1);
  double mean = 0.0;
  for (const auto& v : mesh.vertices()) {
    EXPECT_NEAR(sp.basis.eval(v).dot(c), x2(v), 1e-14);
    mean += x2(v) / 3.0;
  }
  EXPECT_NEAR(sp.basis.eval(sp.geometry.centroid).dot(c), mean, 1e-14);
  const Eigen::VectorXd c0 = interpolate_Ih(x2, mesh, 0);
  EXPECT_NEAR(c0[0], x2(sp.geometry.centroid), 1e-15);
}

TEST(Interpolant, DrivenCasesHaveNoExactSolution) {
  const ManufacturedCase& f = find_case("fig1");
  EXPECT_TRUE(f.driven());
  EXPECT_THROW(interpolate_Ih(f, f.mesh(0), 1), NoExactSolution);
}

TEST(ZeroData, EverythingVanishes) {
  const ManufacturedCase z = with_zero_data(find_case("table4"));
  for (const Point2& x : {Point2(0.5, 0.0), Point2(1.5, 0.5)}) {
    EXPECT_EQ(z.data.f(x), 0.0);
    EXPECT_EQ(z.data.g1(x), 0.0);
    EXPECT_EQ(z.data.g2(x, Point2(0, -1)), 0.0);
  }
}
