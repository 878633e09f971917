#include "warpform/immersion.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace warpform {

namespace {

void canonical_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

Eigen::VectorXd SecondFF::apply(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(k());
  for (int r = 0; r < k(); ++r) out(r) = u.dot(alpha[r] * v);
  return out;
}

double SecondFF::symmetry_residual() const {
  double m = 0.0;
  for (const auto& a : alpha) m = std::max(m, (a - a.transpose()).norm());
  return m;
}

ImmersionSample sample(const Immersion& f, const Eigen::VectorXd& z) {
  ImmersionSample s;
  s.z = z;
  s.p = f.dom.p();
  s.n = f.dom.n();
  const int d = s.p + s.n;
  const int md = f.space.model_dim;

  s.jet = eval_map(f.map, z);
  if (s.jet.out_dim() != md)
    throw std::invalid_argument("sample: map output dimension mismatch");
  s.value = s.jet.value;
  if (f.space.c != 0.0 && !on_manifold(s.value, f.space, 1e3))
    throw std::domain_error("sample: image off the quadric");

  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s.jet.d1);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-8 * sv(0))
      throw std::domain_error("sample: degenerate immersion, rank-deficient differential");
  }

  // Tangent frame: stabilized Gram-Schmidt of the d1 columns in coordinate
  // order, tracking the coefficient matrix so E_a = d1 * coeff.col(a).
  s.tangent_frame.resize(md, d);
  s.coeff = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    Eigen::VectorXd v = s.jet.d1.col(a);
    Eigen::VectorXd c = Eigen::VectorXd::Unit(d, a);
    for (int b = 0; b < a; ++b) {
      double proj = inner(v, s.tangent_frame.col(b), f.space);
      v -= proj * s.tangent_frame.col(b);
      c -= proj * s.coeff.col(b);
    }
    double nrm = std::sqrt(inner(v, v, f.space));
    s.tangent_frame.col(a) = v / nrm;
    s.coeff.col(a) = c / nrm;
  }

  // Normal frame: orthonormalize standard basis directions against the
  // radial direction (c != 0) and the tangent frame, keeping the k
  // independent survivors in coordinate order.
  s.k = f.space.l - d;
  s.normal_frame.resize(md, s.k);
  int found = 0;
  for (int e = 0; e < md && found < s.k; ++e) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(md, e);
    v = project_tangent(s.value, v, f.space);
    for (int b = 0; b < d; ++b)
      v -= inner(v, s.tangent_frame.col(b), f.space) * s.tangent_frame.col(b);
    for (int b = 0; b < found; ++b)
      v -= inner(v, s.normal_frame.col(b), f.space) * s.normal_frame.col(b);
    double nrm2 = inner(v, v, f.space);
    if (nrm2 < 1e-12) continue;
    s.normal_frame.col(found) = v / std::sqrt(nrm2);
    canonical_sign(s.normal_frame.col(found));
    ++found;
  }
  if (found < s.k)
    throw std::runtime_error("sample: failed to complete the normal frame");

  // Second fundamental form in the adapted frame. Projecting the raw second
  // partials onto the normal frame drops the radial component automatically
  // when c != 0.
  s.sff.alpha.assign(s.k, Eigen::MatrixXd(d, d));
  for (int r = 0; r < s.k; ++r) {
    Eigen::MatrixXd A(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        A(i, j) = inner(s.normal_frame.col(r), s.jet.second(i, j), f.space);
    s.sff.alpha[r] = s.coeff.transpose() * A * s.coeff;
  }
  return s;
}

Eigen::VectorXd ambient_alpha(const ImmersionSample& s, const AmbientSpace& space,
                              int i, int j) {
  Eigen::VectorXd sec = s.jet.second(i, j);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.model_dim);
  for (int r = 0; r < s.k; ++r)
    out += inner(Eigen::VectorXd(s.normal_frame.col(r)), sec, space) *
           s.normal_frame.col(r);
  return out;
}

Eigen::MatrixXd shape_operator(const ImmersionSample& s, const Eigen::VectorXd& xi) {
  if (xi.size() != s.k) throw std::invalid_argument("shape_operator: xi size");
  if (std::abs(xi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("shape_operator: xi not unit");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(s.dim(), s.dim());
  for (int r = 0; r < s.k; ++r) A += xi(r) * s.sff.alpha[r];
  return A;
}

NullitySpace relative_nullity(const ImmersionSample& s) {
  const int d = s.dim();
  Eigen::MatrixXd M(s.k * d, d);
  for (int r = 0; r < s.k; ++r) M.block(r * d, 0, d, d) = s.sff.alpha[r];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  NullitySpace out;
  out.singular_values = svd.singularValues();
  double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
  if (smax == 0.0) {
    out.dim = d;
    out.basis = Eigen::MatrixXd::Identity(d, d);
    return out;
  }
  int rank = 0;
  for (int i = 0; i < out.singular_values.size(); ++i) {
    double sv = out.singular_values(i);
    if (sv >= 1e-7 * smax)
      ++rank;
    else if (sv >= 1e-9 * smax)
      out.marginal = true;
  }
  out.dim = d - rank;
  out.basis = svd.matrixV().rightCols(out.dim);
  return out;
}

PrincipalNormal principal_normal(const ImmersionSample& s, const Eigen::MatrixXd& dirs) {
  const int d = s.dim();
  const int nc = static_cast<int>(dirs.cols());
  Eigen::MatrixXd M(nc * d, s.k);
  Eigen::VectorXd w(nc * d);
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < d; ++b) {
      M.row(a * d + b) = s.sff.apply(dirs.col(a), Eigen::VectorXd::Unit(d, b)).transpose();
      w(a * d + b) = dirs.col(a)(b);   // <t_a, E_b> in the orthonormal frame
    }
  PrincipalNormal out;
  double ww = w.squaredNorm();
  out.zeta = ww > 0 ? Eigen::VectorXd(M.transpose() * w / ww)
                    : Eigen::VectorXd(Eigen::VectorXd::Zero(s.k));
  double res = 0.0;
  for (int i = 0; i < nc * d; ++i)
    res = std::max(res, (M.row(i).transpose() - w(i) * out.zeta).norm());
  out.residual = res;
  out.is_nullity = out.zeta.norm() < 1e-8;
  return out;
}

double curvature_like_C(const ImmersionSample& s, const Eigen::VectorXd& E1,
                        const Eigen::VectorXd& E2, const Eigen::VectorXd& E3,
                        const Eigen::VectorXd& E4) {
  return s.sff.apply(E1, E4).dot(s.sff.apply(E2, E3)) -
         s.sff.apply(E1, E3).dot(s.sff.apply(E2, E4));
}

double isometry_residual(const Immersion& f, const Eigen::VectorXd& z) {
  MapJet j = eval_map(f.map, z);
  Eigen::MatrixXd g = f.dom.metric_value(z);
  double res = 0.0;
  for (int i = 0; i < g.rows(); ++i)
    for (int jdx = 0; jdx <= i; ++jdx)
      res = std::max(res, std::abs(inner(Eigen::VectorXd(j.d1.col(i)),
                                         Eigen::VectorXd(j.d1.col(jdx)), f.space) -
                                   g(i, jdx)));
  if (f.space.c != 0.0)
    res = std::max(res, std::abs(inner(j.value, j.value, f.space) - 1.0 / f.space.c) *
                            std::abs(f.space.c));
  return res;
}

double gauss_residual(const Immersion& f, const Eigen::VectorXd& z) {
  ImmersionSample s = sample(f, z);
  const int d = s.dim();
  Tensor4 R = riemann(f.dom.full_metric(), z);
  Eigen::MatrixXd g = f.dom.metric_value(z);
  double res = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          double intr = riemann_component(R, g, s.coeff.col(a), s.coeff.col(b),
                                          s.coeff.col(c), s.coeff.col(e));
          double wedge = (a == e && b == c ? 1.0 : 0.0) - (a == c && b == e ? 1.0 : 0.0);
          double extr = curvature_like_C(s, Eigen::VectorXd::Unit(d, a),
                                         Eigen::VectorXd::Unit(d, b),
                                         Eigen::VectorXd::Unit(d, c),
                                         Eigen::VectorXd::Unit(d, e));
          res = std::max(res, std::abs(intr - f.space.c * wedge - extr));
        }
  return res;
}

double codazzi_residual(const Immersion& f, const Eigen::VectorXd& z, double h) {
  ImmersionSample center = sample(f, z);
  const int d = center.dim();
  const int k = center.k;
  if (k > 2)
    throw std::invalid_argument("codazzi_residual: supported for codimension <= 2");

  // Coordinate shape operators A_r = g^{-1} S_r with S_r(i,j) =
  // <f_ij, xi_r>, sampled on a central-difference stencil with the normal
  // frame sign-aligned to the center.
  auto coord_shape = [&](const Eigen::VectorXd& zz, int r,
                         Eigen::MatrixXd* frame_out) -> Eigen::MatrixXd {
    ImmersionSample sp = sample(f, zz);
    for (int rr = 0; rr < k; ++rr)
      if (inner(Eigen::VectorXd(sp.normal_frame.col(rr)),
                Eigen::VectorXd(center.normal_frame.col(rr)), f.space) < 0.0)
        sp.normal_frame.col(rr) *= -1.0;
    if (frame_out) *frame_out = sp.normal_frame;
    Eigen::MatrixXd S(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        S(i, j) = inner(Eigen::VectorXd(sp.normal_frame.col(r)),
                        sp.jet.second(i, j), f.space);
    return f.dom.metric_value(zz).inverse() * S;
  };

  MetricJet mj = metric_jet(f.dom.full_metric(), z);
  Tensor3 gamma = christoffel(mj);

  double res = 0.0;
  for (int r = 0; r < k; ++r) {
    int rp = k == 2 ? 1 - r : 0;
    Eigen::MatrixXd A0 = coord_shape(z, r, nullptr);
    Eigen::MatrixXd Ap0 = k == 2 ? coord_shape(z, rp, nullptr) : Eigen::MatrixXd();

    std::vector<Eigen::MatrixXd> dA(d);
    Eigen::VectorXd omega = Eigen::VectorXd::Zero(d);
    for (int m = 0; m < d; ++m) {
      Eigen::VectorXd zp = z, zm = z;
      zp(m) += h;
      zm(m) -= h;
      Eigen::MatrixXd frp, frm;
      Eigen::MatrixXd Ap = coord_shape(zp, r, &frp);
      Eigen::MatrixXd Am = coord_shape(zm, r, &frm);
      dA[m] = (Ap - Am) / (2.0 * h);
      if (k == 2) {
        Eigen::VectorXd dxi = (frp.col(r) - frm.col(r)) / (2.0 * h);
        omega(m) = inner(dxi, Eigen::VectorXd(center.normal_frame.col(rp)), f.space);
      }
    }

    auto cov = [&](int i) {
      // (nabla_i A)^k_j = d_i A^k_j + Gamma^k_{im} A^m_j - Gamma^m_{ij} A^k_m
      Eigen::MatrixXd out = dA[i];
      for (int kk = 0; kk < d; ++kk)
        for (int j = 0; j < d; ++j) {
          for (int m = 0; m < d; ++m)
            out(kk, j) += gamma[kk](i, m) * A0(m, j) - gamma[m](i, j) * A0(kk, m);
        }
      return out;
    };

    std::vector<Eigen::MatrixXd> nabla(d);
    for (int i = 0; i < d; ++i) nabla[i] = cov(i);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Eigen::VectorXd diff = nabla[i].col(j) - nabla[j].col(i);
        if (k == 2) diff += omega(j) * Ap0.col(i) - omega(i) * Ap0.col(j);
        res = std::max(res, diff.cwiseAbs().maxCoeff());
      }
  }
  return res;
}

HullResult spherical_hull(const Immersion& g, const std::vector<Eigen::VectorXd>& grid,
                          int p_offset) {
  HullResult out;
  if (grid.empty()) return out;

  // Mode (i): the full normal bundle is umbilical and the principal normal
  // has constant length.
  bool umbilic = true;
  double theta_lo = 0.0, theta_hi = 0.0;
  int dim_n = 0;
  bool first = true;
  for (const auto& z : grid) {
    ImmersionSample s = sample(g, z);
    dim_n = s.dim();
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(s.k);
    for (int a = 0; a < s.dim(); ++a) theta += s.sff.vec(a, a);
    theta /= s.dim();
    double res = 0.0;
    for (int a = 0; a < s.dim(); ++a)
      for (int b = 0; b < s.dim(); ++b) {
        double delta = a == b ? 1.0 : 0.0;
        res = std::max(res, (s.sff.vec(a, b) - delta * theta).norm());
      }
    if (res > 1e-7) {
      umbilic = false;
      break;
    }
    double tn = theta.norm();
    if (first) {
      theta_lo = theta_hi = tn;
      first = false;
    } else {
      theta_lo = std::min(theta_lo, tn);
      theta_hi = std::max(theta_hi, tn);
    }
  }
  if (umbilic && theta_hi - theta_lo < 1e-7 * std::max(1.0, theta_hi)) {
    out.determined = true;
    out.m = dim_n;
    out.ctilde = g.space.c + theta_hi * theta_hi;
    out.mode = "umbilical";
    return out;
  }

  // Mode (ii): no normal direction has shape operator proportional to the
  // identity at any grid point.
  bool none_anywhere = true;
  for (const auto& z : grid) {
    ImmersionSample s = sample(g, z);
    const int d = s.dim();
    Eigen::MatrixXd M(d * d, s.k + 1);
    for (int r = 0; r < s.k; ++r)
      M.col(r) = Eigen::Map<const Eigen::VectorXd>(s.sff.alpha[r].data(), d * d);
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    M.col(s.k) = Eigen::Map<const Eigen::VectorXd>(id.data(), d * d);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // A null vector with a nonzero normal part means some A_xi = mu I.
    if (sv(sv.size() - 1) < 1e-7 * sv(0)) {
      Eigen::VectorXd nv = svd.matrixV().col(sv.size() - 1);
      if (nv.head(s.k).norm() > 1e-6) {
        none_anywhere = false;
        break;
      }
    }
  }
  if (none_anywhere) {
    out.determined = true;
    out.m = g.space.l - p_offset;
    out.ctilde = g.space.c;
    out.mode = "no-umbilic-direction";
  }
  return out;
}

}  // namespace warpform
