#include "warpform/geometry.hpp"

namespace warpform {

MetricJet metric_jet(const MetricFn& metric, const Eigen::VectorXd& x) {
  const int d = static_cast<int>(x.size());
  JetMat gj = metric(seed_point(x));
  MetricJet mj;
  mj.d = d;
  mj.g.resize(d, d);
  mj.dg.assign(d, Eigen::MatrixXd::Zero(d, d));
  mj.d2g_flat.assign(d * d, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Jet& e = gj[i][j];
      mj.g(i, j) = e.a;
      for (int l = 0; l < d; ++l) {
        mj.dg[l](i, j) = e.g(l);
        for (int m = 0; m < d; ++m) mj.d2g_flat[l * d + m](i, j) = e.h(l, m);
      }
    }
  mj.ginv = mj.g.inverse();
  return mj;
}

Tensor3 christoffel(const MetricJet& mj) {
  const int d = mj.d;
  Tensor3 gamma(d, Eigen::MatrixXd::Zero(d, d));
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) {
          double first_kind =
              0.5 * (mj.dg[i](j, k) + mj.dg[j](i, k) - mj.dg[k](i, j));
          s += mj.ginv(l, k) * first_kind;
        }
        gamma[l](i, j) = s;
        gamma[l](j, i) = s;
      }
  return gamma;
}

Tensor3 christoffel_derivative(const MetricJet& mj, int m) {
  const int d = mj.d;
  // d_m g^{-1} = -ginv dg[m] ginv
  Eigen::MatrixXd dginv = -mj.ginv * mj.dg[m] * mj.ginv;
  Tensor3 out(d, Eigen::MatrixXd::Zero(d, d));
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) {
          double first_kind =
              0.5 * (mj.dg[i](j, k) + mj.dg[j](i, k) - mj.dg[k](i, j));
          double dfirst = 0.5 * (mj.d2g(m, i, j, k) + mj.d2g(m, j, i, k) -
                                 mj.d2g(m, k, i, j));
          s += dginv(l, k) * first_kind + mj.ginv(l, k) * dfirst;
        }
        out[l](i, j) = s;
        out[l](j, i) = s;
      }
  return out;
}

namespace {

Tensor4 assemble_riemann(const MetricJet& mj, const Tensor3& gamma,
                         const std::function<double(int, int, int, int)>& dGamma) {
  const int d = mj.d;
  Tensor4 R(d, std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(d, d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double v = dGamma(i, l, j, k) - dGamma(j, l, i, k);
          for (int m = 0; m < d; ++m)
            v += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
          R[i][j](k, l) = v;
        }
  return R;
}

}  // namespace

Tensor4 riemann(const MetricFn& metric, const Eigen::VectorXd& x) {
  MetricJet mj = metric_jet(metric, x);
  Tensor3 gamma = christoffel(mj);
  std::vector<Tensor3> dgamma(mj.d);
  for (int m = 0; m < mj.d; ++m) dgamma[m] = christoffel_derivative(mj, m);
  return assemble_riemann(mj, gamma, [&](int m, int l, int i, int j) {
    return dgamma[m][l](i, j);
  });
}

Tensor4 riemann_fd(const MetricFn& metric, const Eigen::VectorXd& x, double h) {
  const int d = static_cast<int>(x.size());
  MetricJet mj = metric_jet(metric, x);
  Tensor3 gamma = christoffel(mj);
  std::vector<Tensor3> dgamma(d);
  for (int m = 0; m < d; ++m) {
    Eigen::VectorXd xp = x, xm = x;
    xp(m) += h;
    xm(m) -= h;
    Tensor3 gp = christoffel(metric_jet(metric, xp));
    Tensor3 gm = christoffel(metric_jet(metric, xm));
    dgamma[m].resize(d);
    for (int l = 0; l < d; ++l) dgamma[m][l] = (gp[l] - gm[l]) / (2.0 * h);
  }
  return assemble_riemann(mj, gamma, [&](int m, int l, int i, int j) {
    return dgamma[m][l](i, j);
  });
}

double riemann_component(const Tensor4& R, const Eigen::MatrixXd& g,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                         const Eigen::VectorXd& w, const Eigen::VectorXd& t) {
  const int d = static_cast<int>(g.rows());
  Eigen::VectorXd rw = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (u(i) == 0.0 || v(j) == 0.0) continue;
      for (int k = 0; k < d; ++k) {
        if (w(k) == 0.0) continue;
        for (int l = 0; l < d; ++l) rw(l) += u(i) * v(j) * w(k) * R[i][j](k, l);
      }
    }
  return t.dot(g * rw);
}

}  // namespace warpform
