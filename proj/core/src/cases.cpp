#include "pdwg/cases.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pdwg {

namespace {

constexpr double kTol = 1e-12;

struct Profile {
  std::function<double(double)> f, d1, d2;
};

Profile constant_profile(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

Profile sin_profile() {
  return {[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
          [](double t) { return -std::sin(t); }};
}

Profile cos_profile() {
  return {[](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); },
          [](double t) { return -std::cos(t); }};
}

// t(1-t)
Profile bubble_profile() {
  return {[](double t) { return t * (1.0 - t); }, [](double t) { return 1.0 - 2.0 * t; },
          [](double) { return -2.0; }};
}

// (1-e^{-t})(1-e^{-(1-t)}) = 1 + e^{-1} - e^{-t} - e^{t-1}
Profile layer_profile() {
  return {[](double t) { return 1.0 + std::exp(-1.0) - std::exp(-t) - std::exp(t - 1.0); },
          [](double t) { return std::exp(-t) - std::exp(t - 1.0); },
          [](double t) { return -std::exp(-t) - std::exp(t - 1.0); }};
}

// 0.5 (1 - tanh((t - 0.5)/delta))
Profile front_profile(double delta) {
  return {[delta](double t) { return 0.5 * (1.0 - std::tanh((t - 0.5) / delta)); },
          [delta](double t) {
            const double c = std::cosh((t - 0.5) / delta);
            return -0.5 / (delta * c * c);
          },
          [delta](double t) {
            const double z = (t - 0.5) / delta;
            const double c = std::cosh(z);
            return std::tanh(z) / (delta * delta * c * c);
          }};
}

// exp(-c (t - 0.5)^2)
Profile gauss_profile(double c) {
  return {[c](double t) { return std::exp(-c * (t - 0.5) * (t - 0.5)); },
          [c](double t) { return -2.0 * c * (t - 0.5) * std::exp(-c * (t - 0.5) * (t - 0.5)); },
          [c](double t) {
            const double d = t - 0.5;
            return (4.0 * c * c * d * d - 2.0 * c) * std::exp(-c * d * d);
          }};
}

SmoothFunction separable(Profile X, Profile Y) {
  SmoothFunction u;
  u.value = [X, Y](const Point2& p) { return X.f(p.x()) * Y.f(p.y()); };
  u.gradient = [X, Y](const Point2& p) -> Eigen::Vector2d {
    return {X.d1(p.x()) * Y.f(p.y()), X.f(p.x()) * Y.d1(p.y())};
  };
  u.hessian = [X, Y](const Point2& p) -> Eigen::Vector3d {
    return {X.d2(p.x()) * Y.f(p.y()), X.d1(p.x()) * Y.d1(p.y()), X.f(p.x()) * Y.d2(p.y())};
  };
  return u;
}

BoundaryPredicate all_dirichlet() {
  return [](const Point2&, const Point2&) { return BoundaryTag::Dirichlet; };
}

// Neumann on the open segment {x0} x (y0, y1).
BoundaryPredicate neumann_vertical(double x0, double y0, double y1) {
  return [=](const Point2& m, const Point2&) {
    const bool on = std::abs(m.x() - x0) < kTol && m.y() > y0 && m.y() < y1;
    return on ? BoundaryTag::Neumann : BoundaryTag::Dirichlet;
  };
}

// Neumann on the open segment (x0, x1) x {y0}.
BoundaryPredicate neumann_horizontal(double y0, double x0, double x1) {
  return [=](const Point2& m, const Point2&) {
    const bool on = std::abs(m.y() - y0) < kTol && m.x() > x0 && m.x() < x1;
    return on ? BoundaryTag::Neumann : BoundaryTag::Dirichlet;
  };
}

Coefficients variable_coefficients() {
  Coefficients c;
  c.a = [](const Point2& p) -> Eigen::Matrix2d {
    return (1.0 + p.squaredNorm()) * Eigen::Matrix2d::Identity();
  };
  c.div_a = [](const Point2& p) -> Eigen::Vector2d { return 2.0 * p; };
  c.b = [](const Point2& p) -> Eigen::Vector2d { return p; };
  c.div_b = [](const Point2&) { return 2.0; };
  return c;
}

Coefficients rotational_coefficients(double diffusion) {
  Coefficients c = Coefficients::constant(diffusion, Eigen::Vector2d::Zero());
  c.b = [](const Point2& p) -> Eigen::Vector2d { return {p.y(), -p.x()}; };
  return c;
}

ManufacturedCase manufactured(std::string id, std::string description, DomainId domain,
                              SmoothFunction u, Coefficients coeffs, int s,
                              BoundaryPredicate boundary) {
  ManufacturedCase c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.domain = domain;
  c.data = manufactured_data(u, coeffs);
  c.exact = std::move(u);
  c.coeffs = std::move(coeffs);
  c.s = s;
  c.boundary = std::move(boundary);
  return c;
}

ManufacturedCase driven(std::string id, std::string description, DomainId domain,
                        Coefficients coeffs, int s, BoundaryPredicate boundary, ProblemData data) {
  ManufacturedCase c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.domain = domain;
  c.coeffs = std::move(coeffs);
  c.s = s;
  c.boundary = std::move(boundary);
  c.data = std::move(data);
  return c;
}

std::vector<ManufacturedCase> build_catalog() {
  std::vector<ManufacturedCase> out;
  const Eigen::Vector2d diag(1.0, 1.0);
  const Eigen::Vector2d east(1.0, 0.0);

  const auto sincos = [] { return separable(sin_profile(), cos_profile()); };
  const auto sinsin = [] { return separable(sin_profile(), sin_profile()); };
  const auto bubble = [] { return separable(bubble_profile(), bubble_profile()); };
  const auto layer = [] { return separable(layer_profile(), bubble_profile()); };
  const auto front = [](double d) { return separable(front_profile(d), constant_profile(1.0)); };
  const auto gauss = [] { return separable(gauss_profile(5.0), gauss_profile(15.0)); };

  const auto c_sincos = Coefficients::constant(1e-10, diag);
  out.push_back(manufactured("table1", "sin x cos y, a=1e-10, b=(1,1), Dirichlet", DomainId::Omega1,
                             sincos(), c_sincos, 1, all_dirichlet()));
  out.push_back(manufactured("table2", "sin x cos y, a=1e-10, b=(1,1), Neumann on (0,1)x{0}",
                             DomainId::Omega1, sincos(), c_sincos, 1,
                             neumann_horizontal(0.0, 0.0, 1.0)));
  out.push_back(manufactured("table3", "sin x cos y on the L-shape, Dirichlet", DomainId::Omega2,
                             sincos(), c_sincos, 1, all_dirichlet()));
  out.push_back(manufactured("table4", "sin x cos y on the L-shape, Neumann on (0,1)x{0}",
                             DomainId::Omega2, sincos(), c_sincos, 1,
                             neumann_horizontal(0.0, 0.0, 1.0)));

  const auto c_sinsin = Coefficients::constant(1e-3, diag);
  out.push_back(manufactured("table5", "sin x sin y, a=1e-3, b=(1,1), Dirichlet", DomainId::Omega1,
                             sinsin(), c_sinsin, 0, all_dirichlet()));
  out.push_back(manufactured("table6", "sin x sin y on the L-shape, Neumann on (0,1)x{0}",
                             DomainId::Omega2, sinsin(), c_sinsin, 0,
                             neumann_horizontal(0.0, 0.0, 1.0)));

  const auto c_crack = Coefficients::constant(1e-5, east);
  out.push_back(manufactured("table7", "sin x sin y on the cracked square, Neumann inflow",
                             DomainId::Omega4, sinsin(), c_crack, 1,
                             neumann_vertical(-1.0, -1.0, 1.0)));
  out.push_back(manufactured("table8", "sin x sin y on the cracked square, Neumann inflow",
                             DomainId::Omega4, sinsin(), c_crack, 0,
                             neumann_vertical(-1.0, -1.0, 1.0)));
  out.push_back(manufactured("table9", "sin x sin y, a=(1+x^2+y^2)I, b=(x,y), Dirichlet",
                             DomainId::Omega1, sinsin(), variable_coefficients(), 0,
                             all_dirichlet()));

  const auto c_bubble = Coefficients::constant(1e-5, diag);
  out.push_back(manufactured("table10", "xy(1-x)(1-y), a=1e-5, b=(1,1), Dirichlet",
                             DomainId::Omega1, bubble(), c_bubble, 1, all_dirichlet()));
  out.push_back(manufactured("table11", "xy(1-x)(1-y), Neumann on {0}x(0,1)", DomainId::Omega1,
                             bubble(), c_bubble, 1, neumann_vertical(0.0, 0.0, 1.0)));
  out.push_back(manufactured("table12", "xy(1-x)(1-y), Dirichlet", DomainId::Omega1, bubble(),
                             c_bubble, 0, all_dirichlet()));

  out.push_back(manufactured("table13", "boundary layers, a=1e-3, b=(1,1), Neumann on {0}x(0,1)",
                             DomainId::Omega1, layer(), Coefficients::constant(1e-3, diag), 1,
                             neumann_vertical(0.0, 0.0, 1.0)));
  out.push_back(manufactured("table13b", "boundary layers, a=I, b=(1,1), Dirichlet",
                             DomainId::Omega1, layer(), Coefficients::constant(1.0, diag), 0,
                             all_dirichlet()));

  const auto c_front = Coefficients::constant(1e-5, east);
  out.push_back(manufactured("table14a", "tanh front, width 0.2", DomainId::Omega1, front(0.2),
                             c_front, 0, all_dirichlet()));
  out.push_back(manufactured("table14b", "tanh front, width 0.05", DomainId::Omega1, front(0.05),
                             c_front, 0, all_dirichlet()));
  out.push_back(manufactured("table14c", "tanh front, width 0.2", DomainId::Omega1, front(0.2),
                             c_front, 1, all_dirichlet()));
  out.push_back(manufactured("table14d", "tanh front, width 0.05", DomainId::Omega1, front(0.05),
                             c_front, 1, all_dirichlet()));

  out.push_back(manufactured("table15a", "Gaussian bump, gamma=1", DomainId::Omega1, gauss(),
                             Coefficients::constant(1e-5, east, 1.0), 0, all_dirichlet()));
  out.push_back(manufactured("table15b", "Gaussian bump, gamma=0", DomainId::Omega1, gauss(),
                             Coefficients::constant(1e-5, east, 0.0), 1, all_dirichlet()));

  {
    ProblemData d;
    d.f = [](const Point2&) { return 1.0; };
    d.g1 = [](const Point2& p) { return p.x(); };
    d.g2 = [](const Point2&, const Point2&) { return 1e-5; };
    out.push_back(driven("fig1", "f=1, a=1e-5, b=(1,0), g2=1e-5 on {0}x(0,1), g1=x", DomainId::Omega1,
                         Coefficients::constant(1e-5, east), 1, neumann_vertical(0.0, 0.0, 1.0), d));
  }
  for (const auto& [suffix, a11] : std::vector<std::pair<std::string, double>>{
           {"a1", 1e-1}, {"a3", 1e-3}, {"a6", 1e-6}}) {
    ProblemData d;
    d.f = [](const Point2&) { return 1.0; };
    d.g1 = [](const Point2&) { return 0.0; };
    d.g2 = [a = a11](const Point2&, const Point2&) { return a; };
    out.push_back(driven("fig2-" + suffix, "f=1, b=(1,0), g2=a11 on the inflow edge, g1=0",
                         DomainId::Omega1, Coefficients::constant(a11, east), 0,
                         neumann_vertical(0.0, 0.0, 1.0), d));
  }
  const auto inflow_neumann = [](const Point2& m, const Point2& n) {
    const Eigen::Vector2d b(m.y(), -m.x());
    return b.dot(n) < 0.0 ? BoundaryTag::Neumann : BoundaryTag::Dirichlet;
  };
  for (const auto& [name, domain] : std::vector<std::pair<std::string, DomainId>>{
           {"omega3", DomainId::Omega3}, {"omega4", DomainId::Omega4}, {"omega5", DomainId::Omega5}}) {
    for (int load = 0; load <= 1; ++load) {
      ProblemData d;
      d.f = [load](const Point2&) { return double(load); };
      d.g1 = [](const Point2& p) { return std::sin(3.0 * p.x()); };
      d.g2 = [](const Point2&, const Point2&) { return 0.0; };
      out.push_back(driven("fig3-" + name + "-f" + std::to_string(load),
                           "rotating flow b=(y,-x), a=1e-4, g2=0 inflow, g1=sin 3x outflow", domain,
                           rotational_coefficients(1e-4), 1, inflow_neumann, d));
    }
  }
  return out;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a{{"table9-s1", "table7"},
                                                    {"table9-s0", "table8"}};
  return a;
}

}  // namespace

Mesh ManufacturedCase::mesh(int level) const {
  return build_mesh(domain, level).with_boundary(boundary);
}

const std::vector<ManufacturedCase>& catalog() {
  static const std::vector<ManufacturedCase> cases = build_catalog();
  return cases;
}

const ManufacturedCase& find_case(const std::string& id) {
  std::string key = id;
  if (const auto it = aliases().find(id); it != aliases().end()) key = it->second;
  for (const auto& c : catalog()) {
    if (c.id == key) return c;
  }
  throw UnknownCase("unknown case id: " + id);
}

std::vector<std::string> case_ids() {
  std::vector<std::string> ids;
  for (const auto& c : catalog()) ids.push_back(c.id);
  for (const auto& [alias, target] : aliases()) ids.push_back(alias);
  return ids;
}

ProblemData manufactured_data(const SmoothFunction& u, const Coefficients& c) {
  ProblemData d;
  d.f = [u, c](const Point2& p) {
    const Eigen::Vector2d g = u.gradient(p);
    return -c.apply_L(p, g, u.hessian(p)) + c.div_b(p) * u.value(p) + c.b(p).dot(g);
  };
  d.g1 = u.value;
  d.g2 = [u, c](const Point2& p, const Point2& n) {
    return (-(c.a(p) * u.gradient(p)) + c.b(p) * u.value(p)).dot(n);
  };
  return d;
}

Eigen::VectorXd interpolate_Ih(const ScalarField& u, const Mesh& mesh, int s) {
  if (s < 0 || s > 1) throw std::invalid_argument("interpolate_Ih: s must be 0 or 1");
  const int nu = TriBasis::dimension(s);
  Eigen::VectorXd out(mesh.num_triangles() * nu);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry g = mesh.element_geometry(t);
    if (s == 0) {
      out[t] = u(g.centroid);
      continue;
    }
    const TriBasis basis(1, g.centroid, g.diameter);
    Eigen::Matrix3d V;
    Eigen::Vector3d values;
    for (int i = 0; i < 3; ++i) {
      const Point2& v = mesh.vertex(mesh.triangle(t)[i]);
      V.row(i) = basis.eval(v).transpose();
      values[i] = u(v);
    }
    out.segment(3 * t, 3) = V.partialPivLu().solve(values);
  }
  return out;
}

Eigen::VectorXd interpolate_Ih(const ManufacturedCase& c, const Mesh& mesh, int s) {
  if (c.driven()) throw NoExactSolution("case " + c.id + " has no exact solution");
  return interpolate_Ih(c.exact->value, mesh, s);
}

ManufacturedCase with_zero_data(const ManufacturedCase& c) {
  ManufacturedCase z = c;
  z.data.f = [](const Point2&) { return 0.0; };
  z.data.g1 = [](const Point2&) { return 0.0; };
  z.data.g2 = [](const Point2&, const Point2&) { return 0.0; };
  return z;
}

}  // namespace pdwg
