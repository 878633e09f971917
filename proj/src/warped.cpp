#include "warpform/warped.hpp"

#include <stdexcept>

namespace warpform {

namespace {

JetVec subvec(const JetVec& z, int start, int count) {
  return JetVec(z.begin() + start, z.begin() + start + count);
}

Eigen::MatrixXd metric_value_of(const MetricFn& m, const Eigen::VectorXd& x) {
  JetVec zj;
  for (int i = 0; i < x.size(); ++i)
    zj.push_back(Jet::constant(x(i), static_cast<int>(x.size())));
  JetMat gm = m(zj);
  const int d = static_cast<int>(gm.size());
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gm[i][j].a;
  return g;
}

double metric_norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& v) {
  return std::sqrt(std::max(0.0, v.dot(g * v)));
}

}  // namespace

FactorChart FactorChart::flat(int dim, double lo_v, double hi_v) {
  FactorChart c;
  c.dim = dim;
  c.lo = Eigen::VectorXd::Constant(dim, lo_v);
  c.hi = Eigen::VectorXd::Constant(dim, hi_v);
  c.metric_at = [dim](const JetVec& x) {
    const int jd = x.empty() ? 0 : x[0].dim();
    JetMat g(dim, JetVec(dim, Jet::constant(0.0, jd)));
    for (int i = 0; i < dim; ++i) g[i][i] = Jet::constant(1.0, jd);
    return g;
  };
  return c;
}

MetricFn WarpedDomain::full_metric() const {
  const int pp = p(), nn = n();
  FactorChart Lc = L, Mc = M;
  JetFn r = rho;
  return [pp, nn, Lc, Mc, r](const JetVec& z) {
    const int d = pp + nn;
    const int jd = z[0].dim();
    JetVec y = subvec(z, 0, pp), x = subvec(z, pp, nn);
    JetMat gl = Lc.metric_at(y);
    JetMat gm = Mc.metric_at(x);
    Jet r2 = r(y);
    r2 = r2 * r2;
    JetMat g(d, JetVec(d, Jet::constant(0.0, jd)));
    for (int i = 0; i < pp; ++i)
      for (int j = 0; j < pp; ++j) g[i][j] = gl[i][j];
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j) g[pp + i][pp + j] = r2 * gm[i][j];
    return g;
  };
}

Eigen::MatrixXd WarpedDomain::metric_value(const Eigen::VectorXd& z) const {
  return metric_value_of(full_metric(), z);
}

double WarpedDomain::warped_metric(const Eigen::VectorXd& z, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& v) const {
  if (!in_bounds(z, 1e-12))
    throw std::out_of_range("warped_metric: point outside chart bounds");
  return u.dot(metric_value(z) * v);
}

double WarpedDomain::rho_value(const Eigen::VectorXd& z) const {
  JetVec y;
  for (int i = 0; i < p(); ++i) y.push_back(Jet::constant(z(i), p()));
  return rho(y).a;
}

Eigen::VectorXd WarpedDomain::eta(const Eigen::VectorXd& z) const {
  const int pp = p();
  Jet lr = log(rho(seed_point(z.head(pp))));
  Eigen::MatrixXd gl = metric_value_of(L.metric_at, z.head(pp));
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
  e.head(pp) = -gl.inverse() * lr.g;
  return e;
}

Eigen::MatrixXd WarpedDomain::eta_derivative_form(const Eigen::VectorXd& z) const {
  const int pp = p();
  Eigen::VectorXd y = z.head(pp);
  Jet lr = log(rho(seed_point(y)));
  MetricJet mj = metric_jet(L.metric_at, y);
  Tensor3 gamma = christoffel(mj);

  Eigen::VectorXd eta_l = -mj.ginv * lr.g;
  // d_i eta^k = -(d_i ginv * dlr + ginv * hess_i)
  Eigen::MatrixXd deta(pp, pp);   // (k, i)
  for (int i = 0; i < pp; ++i) {
    Eigen::MatrixXd dginv = -mj.ginv * mj.dg[i] * mj.ginv;
    deta.col(i) = -(dginv * lr.g + mj.ginv * lr.h.col(i));
  }
  // grad^L_i eta^k = d_i eta^k + Gamma^k_{ij} eta^j
  Eigen::MatrixXd nabla(pp, pp);
  for (int k = 0; k < pp; ++k)
    for (int i = 0; i < pp; ++i) {
      double s = deta(k, i);
      for (int j = 0; j < pp; ++j) s += gamma[k](i, j) * eta_l(j);
      nabla(k, i) = s;
    }
  // K(d_i) = grad_i eta - <d_i, eta>_L eta
  Eigen::VectorXd eta_flat = mj.g * eta_l;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < pp; ++i)
    K.col(i).head(pp) = nabla.col(i) - eta_flat(i) * eta_l;
  return K;
}

Eigen::VectorXd WarpedDomain::curvature_warped(const Eigen::VectorXd& z,
                                               const Eigen::VectorXd& e1,
                                               const Eigen::VectorXd& e2,
                                               const Eigen::VectorXd& e3) const {
  const int pp = p(), nn = n(), d = dim();
  Eigen::VectorXd y = z.head(pp), x = z.tail(nn);
  Eigen::MatrixXd g = metric_value(z);

  Eigen::VectorXd h1 = Eigen::VectorXd::Zero(d), v1 = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd h2 = h1, v2 = v1, h3 = h1, v3 = v1;
  h1.head(pp) = e1.head(pp);
  v1.tail(nn) = e1.tail(nn);
  h2.head(pp) = e2.head(pp);
  v2.tail(nn) = e2.tail(nn);
  h3.head(pp) = e3.head(pp);
  v3.tail(nn) = e3.tail(nn);

  Eigen::VectorXd eta_v = eta(z);
  Eigen::MatrixXd K = eta_derivative_form(z);
  double eta_norm2 = eta_v.dot(g * eta_v);

  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);

  // Horizontal block: lift of the L curvature.
  if (pp >= 2) {
    Tensor4 RL = riemann(L.metric_at, y);
    Eigen::VectorXd rl = Eigen::VectorXd::Zero(pp);
    for (int i = 0; i < pp; ++i)
      for (int j = 0; j < pp; ++j)
        for (int k = 0; k < pp; ++k)
          for (int l = 0; l < pp; ++l)
            rl(l) += h1(i) * h2(j) * h3(k) * RL[i][j](k, l);
    out.head(pp) += rl;
  }

  // Vertical block: lift of the M curvature minus the eta-norm correction.
  if (nn >= 2) {
    Tensor4 RM = riemann(M.metric_at, x);
    Eigen::VectorXd rm = Eigen::VectorXd::Zero(nn);
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j)
        for (int k = 0; k < nn; ++k)
          for (int l = 0; l < nn; ++l)
            rm(l) += v1(pp + i) * v2(pp + j) * v3(pp + k) * RM[i][j](k, l);
    out.tail(nn) += rm;
  }
  double v23 = v2.dot(g * v3), v13 = v1.dot(g * v3);
  out -= eta_norm2 * (v23 * v1 - v13 * v2);

  // Mixed terms. K maps horizontal to horizontal; <.,.> is the full metric.
  Eigen::VectorXd Kh3 = K * h3;
  out += -(Kh3.dot(g * h1)) * v2;          // R(h1, v2) h3
  out += (Kh3.dot(g * h2)) * v1;           // R(v1, h2) h3
  out += v23 * (K * h1);                   // R(h1, v2) v3
  out += -v13 * (K * h2);                  // R(v1, h2) v3

  return out;
}

ConnectionTerms connection_terms(const WarpedDomain& dom, const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                 const Eigen::VectorXd& V, const Eigen::VectorXd& W) {
  const int pp = dom.p(), nn = dom.n(), d = dom.dim();
  for (int a = pp; a < d; ++a)
    if (X(a) != 0.0 || Y(a) != 0.0)
      throw std::invalid_argument("connection_terms: X,Y must be horizontal");
  for (int i = 0; i < pp; ++i)
    if (V(i) != 0.0 || W(i) != 0.0)
      throw std::invalid_argument("connection_terms: V,W must be vertical");

  MetricJet mj = metric_jet(dom.full_metric(), z);
  Tensor3 gamma = christoffel(mj);
  Eigen::MatrixXd g = mj.g;
  Eigen::VectorXd eta_v = dom.eta(z);

  auto nabla = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    // Covariant derivative of constant-coefficient coordinate combinations.
    Eigen::VectorXd r = Eigen::VectorXd::Zero(d);
    for (int l = 0; l < d; ++l)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r(l) += u(i) * v(j) * gamma[l](i, j);
    return r;
  };

  ConnectionTerms out;
  // grad_X Y against the L-connection lift.
  {
    MetricJet mjl = metric_jet(dom.L.metric_at, z.head(pp));
    Tensor3 gl = christoffel(mjl);
    Eigen::VectorXd want = Eigen::VectorXd::Zero(d);
    for (int l = 0; l < pp; ++l)
      for (int i = 0; i < pp; ++i)
        for (int j = 0; j < pp; ++j) want(l) += X(i) * Y(j) * gl[l](i, j);
    out.xy_residual = metric_norm(g, nabla(X, Y) - want);
  }
  // grad_X V = -<X,eta> V
  out.mixed = nabla(X, V);
  out.mixed_residual = metric_norm(g, out.mixed + X.dot(g * eta_v) * V);
  // grad_V W, split.
  Eigen::VectorXd vw = nabla(V, W);
  out.vw_vertical = Eigen::VectorXd::Zero(d);
  out.vw_vertical.tail(nn) = vw.tail(nn);
  out.vw_horizontal = Eigen::VectorXd::Zero(d);
  out.vw_horizontal.head(pp) = vw.head(pp);
  {
    MetricJet mjm = metric_jet(dom.M.metric_at, z.tail(nn));
    Tensor3 gm = christoffel(mjm);
    Eigen::VectorXd want = Eigen::VectorXd::Zero(d);
    for (int l = 0; l < nn; ++l)
      for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j)
          want(pp + l) += V(pp + i) * W(pp + j) * gm[l](i, j);
    out.vw_vertical_residual = metric_norm(g, out.vw_vertical - want);
  }
  out.vw_horizontal_residual =
      metric_norm(g, out.vw_horizontal - V.dot(g * W) * eta_v);
  return out;
}

DistributionReport check_distributions(const MetricFn& metric, int p, int n,
                                       const std::vector<Eigen::VectorXd>& grid) {
  DistributionReport rep;
  const int d = p + n;
  for (const Eigen::VectorXd& z : grid) {
    MetricJet mj = metric_jet(metric, z);
    Tensor3 gamma = christoffel(mj);

    // H totally geodesic: vertical part of grad_{d_i} d_j, i,j horizontal.
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        for (int a = p; a < d; ++a) v(a) = gamma[a](i, j);
        rep.h_totally_geodesic_residual =
            std::max(rep.h_totally_geodesic_residual, metric_norm(mj.g, v));
      }

    // Mean curvature normal of V from the trace.
    Eigen::MatrixXd gv = mj.g.block(p, p, n, n);
    Eigen::MatrixXd gvinv = gv.inverse();
    Eigen::VectorXd eta_h = Eigen::VectorXd::Zero(d);
    for (int c = 0; c < p; ++c) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += gvinv(a, b) * gamma[c](p + a, p + b);
      eta_h(c) = s / n;
    }

    // V umbilic: horizontal part of grad_V W equals <V,W> eta.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        for (int c = 0; c < p; ++c)
          v(c) = gamma[c](p + a, p + b) - gv(a, b) * eta_h(c);
        rep.v_umbilic_residual =
            std::max(rep.v_umbilic_residual, metric_norm(mj.g, v));
      }

    // V spherical: horizontal part of grad_V eta vanishes. Needs d eta,
    // hence Christoffel derivatives.
    std::vector<Tensor3> dgamma(d);
    for (int m = 0; m < d; ++m) dgamma[m] = christoffel_derivative(mj, m);
    Eigen::MatrixXd deta = Eigen::MatrixXd::Zero(p, d);   // (c, m)
    for (int m = 0; m < d; ++m) {
      Eigen::MatrixXd dgv = mj.dg[m].block(p, p, n, n);
      Eigen::MatrixXd dgvinv = -gvinv * dgv * gvinv;
      for (int c = 0; c < p; ++c) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            s += dgvinv(a, b) * gamma[c](p + a, p + b) +
                 gvinv(a, b) * dgamma[m][c](p + a, p + b);
        deta(c, m) = s / n;
      }
    }
    for (int a = p; a < d; ++a) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
      for (int c = 0; c < p; ++c) {
        double s = deta(c, a);
        for (int m = 0; m < p; ++m) s += gamma[c](a, m) * eta_h(m);
        v(c) = s;
      }
      rep.v_spherical_residual =
          std::max(rep.v_spherical_residual, metric_norm(mj.g, v));
    }
  }
  return rep;
}

}  // namespace warpform
