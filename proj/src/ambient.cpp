#include "warpform/ambient.hpp"

namespace warpform {

double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
             const AmbientSpace& space) {
  if (u.size() != space.model_dim || v.size() != space.model_dim)
    throw std::invalid_argument("inner: dimension mismatch");
  double s = u.dot(v);
  if (space.signature == Signature::Lorentzian)
    s -= 2.0 * u(u.size() - 1) * v(v.size() - 1);
  return s;
}

Jet inner(const JetVec& u, const JetVec& v, const AmbientSpace& space) {
  if (static_cast<int>(u.size()) != space.model_dim ||
      static_cast<int>(v.size()) != space.model_dim)
    throw std::invalid_argument("inner: dimension mismatch");
  Jet s = u[0] * v[0];
  for (size_t i = 1; i < u.size(); ++i) s += u[i] * v[i];
  if (space.signature == Signature::Lorentzian)
    s -= 2.0 * u.back() * v.back();
  return s;
}

bool on_manifold(const Eigen::VectorXd& z, const AmbientSpace& space,
                 double tol_scale) {
  if (space.c == 0.0) return z.size() == space.model_dim;
  double q = inner(z, z, space);
  return std::abs(q - 1.0 / space.c) < tol_scale * space.on_manifold_tol();
}

Eigen::VectorXd project_tangent(const Eigen::VectorXd& z, const Eigen::VectorXd& u,
                                const AmbientSpace& space) {
  if (space.c == 0.0) return u;
  if (!on_manifold(z, space, 1e3))
    throw std::invalid_argument("project_tangent: point off the quadric");
  return u - space.c * inner(u, z, space) * z;
}

void SphericalSub::validate(double tol) const {
  if (std::abs(inner(a, a, space) - ctilde) > tol * std::max(1.0, std::abs(ctilde)))
    throw std::invalid_argument("SphericalSub: <a,a> != ctilde");
  for (int j = 0; j < m; ++j) {
    if (std::abs(inner(a, tangent_basis.col(j), space)) > tol)
      throw std::invalid_argument("SphericalSub: a not orthogonal to tangent basis");
    for (int i = 0; i <= j; ++i) {
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(inner(tangent_basis.col(i), tangent_basis.col(j), space) - want) > tol)
        throw std::invalid_argument("SphericalSub: tangent basis not orthonormal");
    }
  }
  if (space.c != 0.0 && !on_manifold(zbar, space, 1e3))
    throw std::invalid_argument("SphericalSub: zbar off the quadric");
}

double WarpedRep::sigma(const Eigen::VectorXd& z) const {
  if (total.c != 0.0) return inner(z, sub.a, total);
  return 1.0 + inner(z - sub.zbar, sub.a, total);
}

Jet WarpedRep::sigma(const JetVec& z) const {
  const int dim = z[0].dim();
  JetVec av, diff;
  for (int i = 0; i < total.model_dim; ++i) av.push_back(Jet::constant(sub.a(i), dim));
  if (total.c != 0.0) return inner(z, av, total);
  for (int i = 0; i < total.model_dim; ++i) diff.push_back(z[i] - sub.zbar(i));
  return inner(diff, av, total) + 1.0;
}

Eigen::VectorXd WarpedRep::psi(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const {
  double s = sigma(y);
  if (s <= 0.0) throw std::domain_error("psi: sigma(y) <= 0");
  return y + s * (x - sub.zbar);
}

JetVec WarpedRep::psi(const JetVec& y, const JetVec& x) const {
  Jet s = sigma(y);
  if (s.a <= 0.0) throw std::domain_error("psi: sigma(y) <= 0");
  JetVec out;
  out.reserve(y.size());
  for (size_t i = 0; i < y.size(); ++i)
    out.push_back(y[i] + s * (x[i] - sub.zbar(static_cast<int>(i))));
  return out;
}

Eigen::VectorXd extrinsic_product_embed(double c, double r1, double r2,
                                        const Eigen::VectorXd& u,
                                        const Eigen::VectorXd& v) {
  if (c <= 0.0) throw std::invalid_argument("extrinsic_product_embed: c must be positive");
  if (std::abs(r1 * r1 + r2 * r2 - 1.0 / c) > 1e-10)
    throw std::invalid_argument("extrinsic_product_embed: r1^2+r2^2 != 1/c");
  if (std::abs(u.squaredNorm() - r1 * r1) > 1e-10 ||
      std::abs(v.squaredNorm() - r2 * r2) > 1e-10)
    throw std::invalid_argument("extrinsic_product_embed: factor point off its sphere");
  Eigen::VectorXd z(u.size() + v.size());
  z << u, v;
  return z;
}

}  // namespace warpform
