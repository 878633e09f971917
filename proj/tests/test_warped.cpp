#include "doctest.h"
#include "warpform/warped.hpp"

#include <cmath>

using namespace warpform;

namespace {

WarpedDomain hyperbolic_domain() {
  // R x_{e^t} R^2 has constant curvature -1.
  WarpedDomain d;
  d.L = FactorChart::flat(1, -1.0, 1.0);
  d.M = FactorChart::flat(2, -1.0, 1.0);
  d.rho = [](const JetVec& y) { return exp(y[0]); };
  return d;
}

double sectional(const WarpedDomain& dom, const Eigen::VectorXd& z,
                 const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  Eigen::MatrixXd g = dom.metric_value(z);
  Eigen::VectorXd r = dom.curvature_warped(z, u, v, v);
  double num = r.dot(g * u);
  double den = u.dot(g * u) * v.dot(g * v) - std::pow(u.dot(g * v), 2);
  return num / den;
}

}  // namespace

TEST_CASE("hyperbolic warped product has K = -1") {
  WarpedDomain dom = hyperbolic_domain();
  Eigen::VectorXd z(3);
  z << 0.3, 0.1, -0.4;
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < 3; ++i) dirs.push_back(Eigen::VectorXd::Unit(3, i));
  Eigen::VectorXd mixed(3);
  mixed << 0.5, -0.3, 0.8;
  dirs.push_back(mixed);
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t j = 0; j < dirs.size(); ++j) {
      if (i == j) continue;
      Eigen::MatrixXd g = dom.metric_value(z);
      double gram = dirs[i].dot(g * dirs[i]) * dirs[j].dot(g * dirs[j]) -
                    std::pow(dirs[i].dot(g * dirs[j]), 2);
      if (gram < 1e-8) continue;
      CHECK(sectional(dom, z, dirs[i], dirs[j]) == doctest::Approx(-1.0).epsilon(1e-8));
    }
}

TEST_CASE("warped curvature agrees with full-metric riemann") {
  WarpedDomain dom;
  dom.L = FactorChart::flat(2, -1.0, 1.0);
  dom.M = FactorChart::flat(2, -1.0, 1.0);
  dom.rho = [](const JetVec& y) {
    return Jet::constant(1.0, y[0].dim()) + y[0] * y[0] + Jet::constant(0.5, y[0].dim()) * sin(y[1]);
  };
  Eigen::VectorXd z(4);
  z << 0.4, -0.2, 0.7, 0.1;
  Tensor4 R = riemann(dom.full_metric(), z);
  Eigen::MatrixXd g = dom.metric_value(z);

  std::vector<Eigen::VectorXd> basis;
  for (int i = 0; i < 4; ++i) basis.push_back(Eigen::VectorXd::Unit(4, i));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        Eigen::VectorXd direct = Eigen::VectorXd::Zero(4);
        for (int l = 0; l < 4; ++l) direct(l) = R[i][j](k, l);
        Eigen::VectorXd assembled =
            dom.curvature_warped(z, basis[i], basis[j], basis[k]);
        CHECK((direct - assembled).norm() < 1e-9);
      }
}

TEST_CASE("connection relations for the warped metric") {
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -1.0, 1.0);
  dom.M = FactorChart::flat(2, -1.0, 1.0);
  dom.rho = [](const JetVec& y) {
    return Jet::constant(2.0, y[0].dim()) + cos(y[0]);
  };
  Eigen::VectorXd z(3);
  z << 0.6, 0.2, -0.1;
  Eigen::VectorXd X(3), Y(3), V(3), W(3);
  X << 1.0, 0, 0;
  Y << -0.7, 0, 0;
  V << 0, 0.4, 1.1;
  W << 0, -0.3, 0.9;
  ConnectionTerms ct = connection_terms(dom, z, X, Y, V, W);
  CHECK(ct.xy_residual < 1e-10);
  CHECK(ct.mixed_residual < 1e-10);
  CHECK(ct.vw_vertical_residual < 1e-10);
  CHECK(ct.vw_horizontal_residual < 1e-10);
}

TEST_CASE("distribution checks detect a broken warped structure") {
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, 0.5, 2.0);
  dom.M = FactorChart::flat(1, -1.0, 1.0);
  dom.rho = [](const JetVec& y) {
    return Jet::constant(1.5, y[0].dim()) + Jet::constant(0.5, y[0].dim()) * sin(y[0]);
  };
  std::vector<Eigen::VectorXd> grid;
  for (double y = 0.6; y < 2.0; y += 0.35)
    for (double x = -0.9; x < 1.0; x += 0.45) {
      Eigen::VectorXd z(2);
      z << y, x;
      grid.push_back(z);
    }

  DistributionReport good = check_distributions(dom.full_metric(), 1, 1, grid);
  CHECK(good.h_totally_geodesic_residual < 1e-10);
  CHECK(good.v_umbilic_residual < 1e-10);
  CHECK(good.v_spherical_residual < 1e-8);

  // Same block shape but rho depends on the vertical coordinate too:
  // still umbilic-looking pointwise trace, yet not spherical.
  MetricFn twisted = [](const JetVec& z) {
    const int d = z[0].dim();
    Jet b = Jet::constant(1.5, d) + Jet::constant(0.5, d) * sin(z[0]) +
            Jet::constant(0.1, d) * z[1];
    JetMat g(2, JetVec(2, Jet::constant(0.0, d)));
    g[0][0] = Jet::constant(1.0, d);
    g[1][1] = b * b;
    return g;
  };
  DistributionReport bad = check_distributions(twisted, 1, 1, grid);
  CHECK(bad.v_spherical_residual > 1e-3);
}

TEST_CASE("eta is minus the gradient of log rho") {
  WarpedDomain dom = hyperbolic_domain();
  Eigen::VectorXd z(3);
  z << 0.25, 0.0, 0.0;
  Eigen::VectorXd e = dom.eta(z);
  CHECK(e(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e(1) == 0.0);
  CHECK(e(2) == 0.0);
}
