#include "doctest.h"
#include "warpform/immersion.hpp"

#include <cmath>

using namespace warpform;

namespace {

WarpedDomain flat_domain(int p, int n) {
  WarpedDomain d;
  d.L = FactorChart::flat(p, -10.0, 10.0);
  d.M = FactorChart::flat(n, -10.0, 10.0);
  d.rho = [](const JetVec& y) { return Jet::constant(1.0, y[0].dim()); };
  return d;
}

Immersion plane_r3() {
  Immersion f;
  f.dom = flat_domain(1, 1);
  f.space = AmbientSpace::make(0.0, 3);
  f.map = [](const JetVec& u) {
    JetVec out;
    out.push_back(u[0]);
    out.push_back(u[1]);
    out.push_back(Jet::constant(0.0, u[0].dim()));
    return out;
  };
  return f;
}

Immersion sphere_r3(double r) {
  // Chart near the north pole, (theta, phi) not used: graph-free polar chart
  // would be singular at the pole, so use a generic band instead.
  Immersion f;
  WarpedDomain d;
  d.L = FactorChart::flat(1, 0.3, 1.2);      // theta
  d.M = FactorChart::flat(1, -3.0, 3.0);     // phi
  d.rho = [r](const JetVec& y) { return Jet::constant(r, y[0].dim()) * sin(y[0]); };
  // L metric must be r^2 dtheta^2 for the chart to be isometric.
  d.L.metric_at = [r](const JetVec& x) {
    JetMat g(1, JetVec(1, Jet::constant(r * r, x[0].dim())));
    return g;
  };
  f.dom = d;
  f.space = AmbientSpace::make(0.0, 3);
  f.map = [r](const JetVec& u) {
    JetVec out;
    out.push_back(Jet::constant(r, u[0].dim()) * sin(u[0]) * cos(u[1]));
    out.push_back(Jet::constant(r, u[0].dim()) * sin(u[0]) * sin(u[1]));
    out.push_back(Jet::constant(r, u[0].dim()) * cos(u[0]));
    return out;
  };
  return f;
}

Immersion cylinder_r3() {
  // f(y, x) = (cos x, sin x, y): ruling horizontal, circle vertical.
  Immersion f;
  f.dom = flat_domain(1, 1);
  f.space = AmbientSpace::make(0.0, 3);
  f.map = [](const JetVec& u) {
    JetVec out;
    out.push_back(cos(u[1]));
    out.push_back(sin(u[1]));
    out.push_back(u[0]);
    return out;
  };
  return f;
}

Immersion clifford_torus() {
  double r = std::sqrt(0.5);
  Immersion f;
  WarpedDomain d;
  d.L = FactorChart::flat(1, -3.0, 3.0);
  d.M = FactorChart::flat(1, -3.0, 3.0);
  d.rho = [](const JetVec& y) { return Jet::constant(1.0, y[0].dim()); };
  f.dom = d;
  f.space = AmbientSpace::make(1.0, 3);
  f.map = [r](const JetVec& u) {
    Jet c = Jet::constant(r, u[0].dim());
    JetVec out;
    out.push_back(c * cos(u[0] / r));
    out.push_back(c * sin(u[0] / r));
    out.push_back(c * cos(u[1] / r));
    out.push_back(c * sin(u[1] / r));
    return out;
  };
  return f;
}

}  // namespace

TEST_CASE("plane: constant normal, zero alpha, full nullity") {
  Immersion f = plane_r3();
  Eigen::VectorXd z(2);
  z << 0.7, -1.2;
  ImmersionSample s = sample(f, z);
  CHECK(s.k == 1);
  CHECK(s.normal_frame(2, 0) == doctest::Approx(1.0));
  CHECK(s.sff.alpha[0].norm() < 1e-14);
  CHECK(relative_nullity(s).dim == 2);
  CHECK(gauss_residual(f, z) < 1e-12);
  CHECK(isometry_residual(f, z) < 1e-14);
  CHECK(codazzi_residual(f, z) < 1e-10);
}

TEST_CASE("sphere: umbilic with norm 1/r, nullity zero") {
  for (double r : {1.0, 2.0}) {
    Immersion f = sphere_r3(r);
    Eigen::VectorXd z(2);
    z << 0.8, 0.4;
    ImmersionSample s = sample(f, z);
    Eigen::MatrixXd A = shape_operator(s, Eigen::VectorXd::Ones(1));
    CHECK((A - A.transpose()).norm() < 1e-10);
    // A is proportional to the identity with |entries| = 1/r.
    CHECK(std::abs(std::abs(A(0, 0)) - 1.0 / r) < 1e-9);
    CHECK(std::abs(A(0, 0) - A(1, 1)) < 1e-9);
    CHECK(std::abs(A(0, 1)) < 1e-9);
    CHECK(relative_nullity(s).dim == 0);
    CHECK(gauss_residual(f, z) < 1e-9);
    CHECK(isometry_residual(f, z) < 1e-12);
    CHECK(codazzi_residual(f, z) < 1e-6);
  }
}

TEST_CASE("cylinder: mixed alpha vanishes, ruling is nullity") {
  Immersion f = cylinder_r3();
  Eigen::VectorXd z(2);
  z << 0.3, 1.1;
  ImmersionSample s = sample(f, z);
  CHECK(std::abs(s.sff.alpha[0](0, 1)) < 1e-14);
  CHECK(std::abs(s.sff.alpha[0](0, 0)) < 1e-14);
  NullitySpace nul = relative_nullity(s);
  CHECK(nul.dim == 1);
  // Nullity direction is the first frame vector (the ruling).
  CHECK(std::abs(std::abs(nul.basis(0, 0)) - 1.0) < 1e-12);
  // The ruling as candidate subspace: zeta = 0 (nullity), good residual.
  Eigen::MatrixXd dirs(2, 1);
  dirs << 1.0, 0.0;
  PrincipalNormal pn = principal_normal(s, dirs);
  CHECK(pn.is_nullity);
  CHECK(pn.residual < 1e-12);
  // The circle direction has a genuine principal normal of length 1.
  dirs << 0.0, 1.0;
  pn = principal_normal(s, dirs);
  CHECK(!pn.is_nullity);
  CHECK(pn.zeta.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pn.residual < 1e-12);
}

TEST_CASE("clifford torus in S^3") {
  Immersion f = clifford_torus();
  Eigen::VectorXd z(2);
  z << 0.2, -0.5;
  ImmersionSample s = sample(f, z);
  CHECK(s.k == 1);
  // Normal orthogonal to position and tangents.
  CHECK(std::abs(inner(Eigen::VectorXd(s.normal_frame.col(0)), s.value, f.space)) < 1e-10);
  for (int a = 0; a < 2; ++a)
    CHECK(std::abs(inner(Eigen::VectorXd(s.normal_frame.col(0)),
                         Eigen::VectorXd(s.tangent_frame.col(a)), f.space)) < 1e-10);
  Eigen::MatrixXd A = shape_operator(s, Eigen::VectorXd::Ones(1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  CHECK(std::abs(std::abs(es.eigenvalues()(0)) - 1.0) < 1e-9);
  CHECK(std::abs(std::abs(es.eigenvalues()(1)) - 1.0) < 1e-9);
  CHECK(es.eigenvalues()(0) * es.eigenvalues()(1) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(gauss_residual(f, z) < 1e-9);
  CHECK(isometry_residual(f, z) < 1e-10);
  CHECK(codazzi_residual(f, z) < 1e-6);
}

TEST_CASE("curvature-like tensor symmetries") {
  Immersion f = clifford_torus();
  Eigen::VectorXd z(2);
  z << 0.9, 0.1;
  ImmersionSample s = sample(f, z);
  Eigen::VectorXd a(2), b(2), c(2), d(2);
  a << 0.3, -0.8;
  b << 1.1, 0.2;
  c << -0.4, 0.9;
  d << 0.7, 0.6;
  double C1 = curvature_like_C(s, a, b, c, d);
  CHECK(curvature_like_C(s, b, a, c, d) == doctest::Approx(-C1).epsilon(1e-12));
  CHECK(curvature_like_C(s, a, b, d, c) == doctest::Approx(-C1).epsilon(1e-12));
  CHECK(curvature_like_C(s, c, d, a, b) == doctest::Approx(C1).epsilon(1e-12));
  double bianchi = C1 + curvature_like_C(s, b, c, a, d) + curvature_like_C(s, c, a, b, d);
  CHECK(std::abs(bianchi) < 1e-12);
}

TEST_CASE("mis-scaled map raises the gauss residual") {
  Immersion f = sphere_r3(1.0);
  // Keep the domain metric but shrink the map by 1%.
  JetMap base = f.map;
  f.map = [base](const JetVec& u) {
    JetVec out = base(u);
    for (auto& j : out) j = j * 0.99;
    return out;
  };
  Eigen::VectorXd z(2);
  z << 0.8, 0.4;
  CHECK(isometry_residual(f, z) > 1e-4);
  CHECK(gauss_residual(f, z) > 1e-4);
}

TEST_CASE("spherical hull of a planar circle of radius 1/2") {
  Immersion f;
  WarpedDomain curve;   // a 1-dimensional chart: trivial vertical factor
  curve.L = FactorChart::flat(1, -3.0, 3.0);
  curve.M = FactorChart::flat(0, 0.0, 0.0);
  curve.rho = [](const JetVec& y) { return Jet::constant(1.0, y[0].dim()); };
  f.dom = curve;
  f.space = AmbientSpace::make(0.0, 3);
  double r = 0.5;
  f.map = [r](const JetVec& u) {
    Jet c = Jet::constant(r, u[0].dim());
    JetVec out;
    out.push_back(c * cos(u[0] / r));
    out.push_back(c * sin(u[0] / r));
    out.push_back(Jet::constant(0.0, u[0].dim()));
    return out;
  };
  std::vector<Eigen::VectorXd> grid;
  for (double t = -1.0; t < 1.0; t += 0.25) {
    Eigen::VectorXd z(1);
    z << t;
    grid.push_back(z);
  }
  HullResult h = spherical_hull(f, grid);
  CHECK(h.determined);
  CHECK(h.mode == "umbilical");
  CHECK(h.m == 1);
  CHECK(h.ctilde == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("hull mode (ii) on a non-umbilic surface in R^4") {
  Immersion f;
  f.dom = flat_domain(1, 1);
  f.space = AmbientSpace::make(0.0, 4);
  f.map = [](const JetVec& u) {
    // Graph surface with independent curvatures in both normal directions.
    JetVec out;
    out.push_back(u[0]);
    out.push_back(u[1]);
    out.push_back(u[0] * u[0] - u[1] * u[1]);
    out.push_back(u[0] * u[1]);
    return out;
  };
  f.declared_isometric = false;
  std::vector<Eigen::VectorXd> grid;
  for (double a = 0.1; a < 0.5; a += 0.15)
    for (double b = 0.1; b < 0.5; b += 0.15) {
      Eigen::VectorXd z(2);
      z << a, b;
      grid.push_back(z);
    }
  HullResult h = spherical_hull(f, grid, 0);
  CHECK(h.determined);
  CHECK(h.mode == "no-umbilic-direction");
  CHECK(h.m == 4);
}

TEST_CASE("degenerate differential is rejected") {
  Immersion f = plane_r3();
  f.map = [](const JetVec& u) {
    JetVec out;
    out.push_back(u[0]);
    out.push_back(u[0]);
    out.push_back(Jet::constant(0.0, u[0].dim()));
    (void)u;
    return out;
  };
  Eigen::VectorXd z(2);
  z << 0.0, 0.0;
  CHECK_THROWS(sample(f, z));
}
