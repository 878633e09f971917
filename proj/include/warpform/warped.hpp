#pragma once

#include <Eigen/Dense>

#include "warpform/geometry.hpp"
#include "warpform/jet.hpp"

namespace warpform {

// One factor of a warped product: a chart with a metric available through
// second-order jets.
struct FactorChart {
  int dim = 0;
  Eigen::VectorXd lo, hi;   // per-coordinate bounds
  MetricFn metric_at;       // chart point -> SPD matrix

  static FactorChart flat(int dim, double lo_v, double hi_v);

  bool in_bounds(const Eigen::VectorXd& x, double slack = 0.0) const {
    for (int i = 0; i < dim; ++i)
      if (x(i) < lo(i) - slack || x(i) > hi(i) + slack) return false;
    return true;
  }
};

// The domain L^p x_rho M^n. Points are stored as (y, x) with the first p
// coordinates on L. Horizontal/vertical refers to the coordinate split.
struct WarpedDomain {
  FactorChart L;   // dim p
  FactorChart M;   // dim n
  JetFn rho;       // positive function of the first p coordinates

  int p() const { return L.dim; }
  int n() const { return M.dim; }
  int dim() const { return L.dim + M.dim; }

  Eigen::VectorXd y_part(const Eigen::VectorXd& z) const { return z.head(p()); }
  Eigen::VectorXd x_part(const Eigen::VectorXd& z) const { return z.tail(n()); }
  bool in_bounds(const Eigen::VectorXd& z, double slack = 0.0) const {
    return L.in_bounds(z.head(p()), slack) && M.in_bounds(z.tail(n()), slack);
  }

  // The full warped product metric as a jet metric on p+n coordinates:
  // block diag(g_L(y), rho(y)^2 g_M(x)).
  MetricFn full_metric() const;

  Eigen::MatrixXd metric_value(const Eigen::VectorXd& z) const;
  double warped_metric(const Eigen::VectorXd& z, const Eigen::VectorXd& u,
                       const Eigen::VectorXd& v) const;

  double rho_value(const Eigen::VectorXd& z) const;

  // eta = -grad(log rho), lifted horizontally. Returned as a p+n coordinate
  // vector (vertical slots zero).
  Eigen::VectorXd eta(const Eigen::VectorXd& z) const;

  // K(X) = grad_X eta - <X,eta> eta for horizontal X, as coordinate vector.
  // Linear in X; the matrix maps horizontal components to horizontal
  // components (embedded in p+n slots).
  Eigen::MatrixXd eta_derivative_form(const Eigen::VectorXd& z) const;

  // R(E1,E2)E3 assembled from the lifted factor curvatures, eta and grad eta
  // via the warped-product curvature relations. Coordinate components in/out.
  Eigen::VectorXd curvature_warped(const Eigen::VectorXd& z, const Eigen::VectorXd& e1,
                                   const Eigen::VectorXd& e2,
                                   const Eigen::VectorXd& e3) const;
};

struct ConnectionTerms {
  double xy_residual = 0.0;        // horizontal-horizontal vs L-connection lift
  Eigen::VectorXd mixed;           // grad_X V, should equal -<X,eta> V
  Eigen::VectorXd vw_vertical;     // (grad_V W)_V, equals M-connection lift
  Eigen::VectorXd vw_horizontal;   // (grad_V W)_H, should equal <V,W> eta
  double mixed_residual = 0.0;
  double vw_vertical_residual = 0.0;
  double vw_horizontal_residual = 0.0;
};

// Compares the four warped connection relations against the Christoffel
// symbols of the full metric. Inputs are coordinate-direction indices
// interpreted as lifts.
ConnectionTerms connection_terms(const WarpedDomain& dom, const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                 const Eigen::VectorXd& V, const Eigen::VectorXd& W);

struct DistributionReport {
  double h_totally_geodesic_residual = 0.0;
  double v_umbilic_residual = 0.0;
  double v_spherical_residual = 0.0;
};

// Works on any block metric on p+n coordinates (not only genuine warped
// metrics), so deliberately perturbed metrics can be tested negatively.
DistributionReport check_distributions(const MetricFn& metric, int p, int n,
                                       const std::vector<Eigen::VectorXd>& grid);

inline DistributionReport check_distributions(const WarpedDomain& dom,
                                              const std::vector<Eigen::VectorXd>& grid) {
  return check_distributions(dom.full_metric(), dom.p(), dom.n(), grid);
}

}  // namespace warpform
