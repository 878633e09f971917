#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "warpform/jet.hpp"

namespace warpform {

enum class Signature { Euclidean, Lorentzian };

// The space form Q_c^l, modeled flat for c=0 and as a quadric <z,z>=1/c in a
// Euclidean (c>0) or Lorentzian (c<0) vector space of dimension l+1. For the
// Lorentzian case the last coordinate carries the minus sign and the
// hyperboloid sheet with positive last coordinate is used.
struct AmbientSpace {
  double c = 0.0;
  int l = 0;           // intrinsic dimension
  int model_dim = 0;   // l if c==0, l+1 otherwise
  Signature signature = Signature::Euclidean;

  static AmbientSpace make(double c, int l) {
    AmbientSpace s;
    s.c = c;
    s.l = l;
    s.model_dim = (c == 0.0) ? l : l + 1;
    s.signature = (c < 0.0) ? Signature::Lorentzian : Signature::Euclidean;
    return s;
  }

  double on_manifold_tol() const {
    return c == 0.0 ? 0.0 : 1e-9 * std::abs(1.0 / c);
  }
};

double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
             const AmbientSpace& space);
Jet inner(const JetVec& u, const JetVec& v, const AmbientSpace& space);

bool on_manifold(const Eigen::VectorXd& z, const AmbientSpace& space,
                 double tol_scale = 1.0);

// Orthogonal projection of u onto the tangent space of Q_c^l at z.
Eigen::VectorXd project_tangent(const Eigen::VectorXd& z, const Eigen::VectorXd& u,
                                const AmbientSpace& space);

// A complete spherical submanifold Q_ctilde^m through zbar, with mean
// curvature vector -a at zbar. For c=0 it is the round sphere of radius
// 1/sqrt(ctilde) centered at zbar - a/ctilde inside the affine subspace
// zbar + span(tangent_basis, a).
struct SphericalSub {
  AmbientSpace space;        // the ambient Q_c^l
  Eigen::VectorXd zbar;
  Eigen::VectorXd a;         // <a,a> = ctilde
  int m = 0;
  Eigen::MatrixXd tangent_basis;  // model_dim x m, orthonormal, orthogonal to a
  double ctilde = 0.0;

  void validate(double tol = 1e-9) const;
};

// The warped product representation Psi of Q_c^l determined by
// (zbar, Q_ctilde^m): Psi(y, x) = y + sigma(y) (x - zbar).
struct WarpedRep {
  SphericalSub sub;
  AmbientSpace total;   // same as sub.space

  double sigma(const Eigen::VectorXd& z) const;
  Jet sigma(const JetVec& z) const;

  Eigen::VectorXd psi(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const;
  JetVec psi(const JetVec& y, const JetVec& x) const;
};

// Concatenated embedding of S^{l1}(r1) x S^{l2}(r2) into the quadric of
// curvature c = 1/(r1^2+r2^2), as an extrinsic Riemannian product. u and v
// are points on the two spheres (in their own coordinates, already scaled).
Eigen::VectorXd extrinsic_product_embed(double c, double r1, double r2,
                                        const Eigen::VectorXd& u,
                                        const Eigen::VectorXd& v);

}  // namespace warpform
