#pragma once

#include <Eigen/Dense>

#include "warpform/jet.hpp"

namespace warpform {

// Christoffel symbols and curvature of a metric given in a chart through
// second-order jets. Index convention throughout:
//   christoffel(l, i, j)  = Gamma^l_{ij}
//   riemann[i][j][k][l]   = component l of R(d_i, d_j) d_k,
// with R(X,Y)Z = grad_X grad_Y Z - grad_Y grad_X Z - grad_[X,Y] Z, so that
// the sectional curvature of a sphere comes out positive.

struct MetricJet {
  Eigen::MatrixXd g;                        // values
  Eigen::MatrixXd ginv;
  std::vector<Eigen::MatrixXd> dg;          // dg[l](i,j) = d_l g_ij
  std::vector<Eigen::MatrixXd> d2g_flat;    // d2g_flat[l*d+m](i,j) = d_l d_m g_ij
  int d = 0;

  double d2g(int l, int m, int i, int j) const { return d2g_flat[l * d + m](i, j); }
};

MetricJet metric_jet(const MetricFn& metric, const Eigen::VectorXd& x);

using Tensor3 = std::vector<Eigen::MatrixXd>;                 // [l](i,j)
using Tensor4 = std::vector<std::vector<Eigen::MatrixXd>>;    // [i][j](k,l)

// Gamma^l_{ij}, returned as Tensor3 indexed [l](i,j).
Tensor3 christoffel(const MetricJet& mj);

// d_m Gamma^l_{ij}, exact from second metric derivatives.
Tensor3 christoffel_derivative(const MetricJet& mj, int m);

// Exact (jet-based) Riemann tensor: [i][j](k,l) = comp l of R(d_i,d_j)d_k.
Tensor4 riemann(const MetricFn& metric, const Eigen::VectorXd& x);

// Finite-difference fallback: central differences of Christoffel symbols,
// step h per coordinate. Independent cross-check for `riemann`.
Tensor4 riemann_fd(const MetricFn& metric, const Eigen::VectorXd& x, double h = 1e-4);

// <R(u,v)w, t> with index lowering by g.
double riemann_component(const Tensor4& R, const Eigen::MatrixXd& g,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                         const Eigen::VectorXd& w, const Eigen::VectorXd& t);

}  // namespace warpform
