#pragma once

#include <string>

#include "warpform/ambient.hpp"
#include "warpform/warped.hpp"

namespace warpform {

// A parametrized immersion of a warped-product chart into a space form. The
// map goes to model coordinates (R^l for c=0, the quadric in R^{l+1}
// otherwise) and is evaluated through second-order jets.
struct Immersion {
  WarpedDomain dom;
  AmbientSpace space;
  JetMap map;
  bool declared_isometric = true;
};

// Second fundamental form in an orthonormal adapted frame: alpha[r](a,b) is
// the component of alpha(E_a, E_b) along the r-th normal frame vector.
struct SecondFF {
  std::vector<Eigen::MatrixXd> alpha;

  int k() const { return static_cast<int>(alpha.size()); }
  int dim() const { return alpha.empty() ? 0 : static_cast<int>(alpha[0].rows()); }

  Eigen::VectorXd vec(int i, int j) const {
    Eigen::VectorXd v(k());
    for (int r = 0; r < k(); ++r) v(r) = alpha[r](i, j);
    return v;
  }
  // alpha(u, v) for u, v in frame coordinates.
  Eigen::VectorXd apply(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  double symmetry_residual() const;
};

struct ImmersionSample {
  Eigen::VectorXd z;               // chart point
  Eigen::VectorXd value;           // model point
  MapJet jet;
  Eigen::MatrixXd tangent_frame;   // model_dim x (p+n), orthonormal
  Eigen::MatrixXd coeff;           // E_a = d1 * coeff.col(a); upper triangular
  Eigen::MatrixXd normal_frame;    // model_dim x k
  int p = 0, n = 0, k = 0;
  SecondFF sff;

  int dim() const { return p + n; }
};

ImmersionSample sample(const Immersion& f, const Eigen::VectorXd& z);

// alpha(d_i, d_j) as an ambient vector (normal projection of the raw second
// partial), for comparison against closed-form oracles.
Eigen::VectorXd ambient_alpha(const ImmersionSample& s, const AmbientSpace& space,
                              int i, int j);

// Shape operator in the tangent frame for a unit normal given in normal-frame
// coordinates.
Eigen::MatrixXd shape_operator(const ImmersionSample& s, const Eigen::VectorXd& xi);

struct NullitySpace {
  int dim = 0;
  Eigen::MatrixXd basis;            // frame coordinates, one column per vector
  Eigen::VectorXd singular_values;
  bool marginal = false;
};
NullitySpace relative_nullity(const ImmersionSample& s);

struct PrincipalNormal {
  Eigen::VectorXd zeta;   // normal-frame coordinates
  double residual = 0.0;
  bool is_nullity = false;
};
// Least-squares principal curvature normal for the subspace spanned by the
// columns of dirs (frame coordinates); residual measures how far the subspace
// is from lying in Delta_zeta.
PrincipalNormal principal_normal(const ImmersionSample& s, const Eigen::MatrixXd& dirs);

// <alpha(E1,E4), alpha(E2,E3)> - <alpha(E1,E3), alpha(E2,E4)>, arguments in
// frame coordinates.
double curvature_like_C(const ImmersionSample& s, const Eigen::VectorXd& E1,
                        const Eigen::VectorXd& E2, const Eigen::VectorXd& E3,
                        const Eigen::VectorXd& E4);

// Max deviation of the pullback metric from the domain metric at z; the
// on-manifold defect is folded in for c != 0.
double isometry_residual(const Immersion& f, const Eigen::VectorXd& z);

// Max over a frame basis of |intrinsic (R - c wedge) - extrinsic C|.
double gauss_residual(const Immersion& f, const Eigen::VectorXd& z);

// Residual of the Codazzi equation at z, stencil width h. Covers
// codimension 1 (classical form) and codimension 2 (with the normal
// connection form omega).
double codazzi_residual(const Immersion& f, const Eigen::VectorXd& z, double h = 1e-4);

struct HullResult {
  bool determined = false;
  int m = 0;
  double ctilde = 0.0;
  std::string mode;   // "umbilical", "no-umbilic-direction", or ""
};
// Two decidable modes: (i) the full normal bundle is umbilical with a
// principal normal of constant length, giving m = intrinsic dim and
// ctilde = c + |theta|^2; (ii) no normal direction has shape operator
// proportional to the identity at any grid point, giving m = l - p_offset.
HullResult spherical_hull(const Immersion& g, const std::vector<Eigen::VectorXd>& grid,
                          int p_offset = 0);

}  // namespace warpform
