#include "warpform/classify.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace warpform {

namespace {

constexpr double kRankZero = 1e-7;      // sv below this (relative) counts as zero
constexpr double kRankMarginal = 1e-9;  // ambiguity band lower edge

void canonical_sign(Eigen::VectorXd& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

double alpha_scale(const SecondFF& sff) {
  double s = 0.0;
  for (const auto& a : sff.alpha) s = std::max(s, a.norm());
  return s;
}

}  // namespace

const char* type_name(TypeTag t) {
  switch (t) {
    case TypeTag::A: return "A";
    case TypeTag::B1: return "B1";
    case TypeTag::B2: return "B2";
    case TypeTag::C: return "C";
    default: return "Indeterminate";
  }
}

double ResidualReport::max_residual() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, std::abs(e.second));
  return m;
}

double ResidualReport::get(const std::string& name) const {
  for (const auto& e : entries)
    if (e.first == name) return e.second;
  return std::numeric_limits<double>::quiet_NaN();
}

AlphaHV alpha_hv(const SecondFF& sff, int p, int n) {
  const int k = sff.k();
  if (p == 0 || n == 0 || k == 0) {
    // One factor is trivial: alpha(H, V) spans nothing by definition.
    AlphaHV trivial;
    trivial.singular_values = Eigen::VectorXd::Zero(0);
    trivial.basis = Eigen::MatrixXd::Zero(k, 0);
    return trivial;
  }
  Eigen::MatrixXd M(k, p * n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) M.col(i * n + j) = sff.vec(i, p + j);
  AlphaHV out;
  double scale = std::max(alpha_scale(sff), 1e-300);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU);
  out.singular_values = svd.singularValues();
  int kept = 0;
  double smallest_kept = 0.0;
  for (int i = 0; i < out.singular_values.size(); ++i) {
    double sv = out.singular_values(i);
    if (sv >= kRankZero * scale) {
      ++kept;
      smallest_kept = sv;
    } else if (sv >= kRankMarginal * scale) {
      out.marginal = true;
    }
  }
  out.span_dim = kept;
  out.basis = svd.matrixU().leftCols(kept);
  out.margin = kept > 0 ? smallest_kept / scale
                        : (out.singular_values.size() ? out.singular_values(0) / scale : 0.0);
  return out;
}

BTypeData extract_b_data(const SecondFF& sff, int p, int n) {
  const int k = sff.k();
  const int d = p + n;
  double scale = std::max(alpha_scale(sff), 1e-300);

  Eigen::MatrixXd M(k, p * n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) M.col(i * n + j) = sff.vec(i, p + j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU);

  BTypeData b;
  b.xi = svd.matrixU().col(0);
  canonical_sign(b.xi);

  // <alpha(H_i, V_j), xi> is rank one at a type-B point: its singular
  // vectors give X and e.
  Eigen::MatrixXd m(p, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = b.xi.dot(sff.vec(i, p + j));
  Eigen::JacobiSVD<Eigen::MatrixXd> msvd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd xh = msvd.matrixU().col(0);
  Eigen::VectorXd ev = msvd.matrixV().col(0);
  canonical_sign(xh);
  canonical_sign(ev);
  b.X = Eigen::VectorXd::Zero(d);
  b.X.head(p) = xh;
  b.e = Eigen::VectorXd::Zero(d);
  b.e.tail(n) = ev;

  b.lambda = b.xi.dot(sff.apply(b.X, b.e));
  if (std::abs(b.lambda) < kRankZero * scale)
    throw std::runtime_error("extract_b_data: lambda below threshold, not type B");
  b.beta = b.xi.dot(sff.apply(b.X, b.X));
  b.gamma = b.xi.dot(sff.apply(b.e, b.e));

  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd want = b.lambda * b.X(i) * b.e(p + j) * b.xi;
      b.recon_residual = std::max(b.recon_residual, (sff.vec(i, p + j) - want).norm());
    }
  if (b.recon_residual > 1e-3 * scale)
    throw std::runtime_error("extract_b_data: alpha(H,V) not rank one");

  if (k == 2) {
    b.xitilde.resize(2);
    b.xitilde << -b.xi(1), b.xi(0);
    canonical_sign(b.xitilde);
    b.beta_t0 = b.xitilde.dot(sff.apply(b.X, b.X));
    b.gamma_t0 = b.xitilde.dot(sff.apply(b.e, b.e));
    b.delta_t0 = b.beta_t0 * b.gamma_t0 + b.beta * b.gamma - b.lambda * b.lambda;
    if (std::abs(b.beta_t0) > 1e-8 * std::max(1.0, scale)) {
      b.has_btilde = true;
      b.btilde = b.delta_t0 / b.beta_t0;
    }
  } else {
    b.xitilde.resize(0);
    b.delta_t0 = b.beta * b.gamma - b.lambda * b.lambda;
  }
  return b;
}

PointType classify_core(const SecondFF& sff, int p, int n, double tol) {
  AlphaHV hv = alpha_hv(sff, p, n);
  PointType t;
  t.dim_alpha_hv = hv.span_dim;
  t.margin = hv.margin;
  t.marginal = hv.marginal;
  if (hv.marginal) {
    t.tag = TypeTag::Indeterminate;
    return t;
  }
  if (hv.span_dim == 0) {
    t.tag = TypeTag::A;
  } else if (hv.span_dim >= 2) {
    t.tag = TypeTag::C;
  } else {
    BTypeData b = extract_b_data(sff, p, n);
    double disc = b.beta * b.gamma - b.lambda * b.lambda;
    double scale = std::max({b.beta * b.beta, b.gamma * b.gamma, b.lambda * b.lambda});
    if (std::abs(disc) < tol * scale)
      t.tag = TypeTag::B1;
    else if (std::abs(disc) > 10.0 * tol * scale)
      t.tag = TypeTag::B2;
    else
      t.tag = TypeTag::Indeterminate;
  }
  return t;
}

PointType classify_point(const Immersion& f, const Eigen::VectorXd& z, double tol) {
  ImmersionSample s = sample(f, z);
  return classify_core(s.sff, s.p, s.n, tol);
}

ResidualReport verify_pointwise_relations(const Immersion& f, const Eigen::VectorXd& z,
                                          bool is_product) {
  ResidualReport rep;
  ImmersionSample s = sample(f, z);
  const int p = s.p, n = s.n, d = s.dim();
  PointType tag = classify_core(s.sff, p, n);
  if (tag.tag == TypeTag::A) return rep;   // nothing to verify beyond alpha(H,V)=0

  BTypeData b = extract_b_data(s.sff, p, n);
  auto H = [&](int i) { return Eigen::VectorXd(Eigen::VectorXd::Unit(d, i)); };
  auto V = [&](int j) { return Eigen::VectorXd(Eigen::VectorXd::Unit(d, p + j)); };

  double c = f.space.c;
  Eigen::MatrixXd g = f.dom.metric_value(z);
  Eigen::MatrixXd K = f.dom.eta_derivative_form(z);

  double ge11 = 0.0, ge22 = 0.0, ge33 = 0.0, ge44 = 0.0;
  for (int a = 0; a < p; ++a)
    for (int bdx = 0; bdx < p; ++bdx)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          // C(X,V,W,Y) = <V,W><K(X) - cX, Y>; frame vectors map to domain
          // vectors through the coefficient matrix.
          Eigen::VectorXd ua = s.coeff.col(a), ub = s.coeff.col(bdx);
          double want = (i == j ? 1.0 : 0.0) *
                        (Eigen::VectorXd(K * ua - c * ua).dot(g * ub));
          double got = curvature_like_C(s, H(a), V(i), V(j), H(bdx));
          ge11 = std::max(ge11, std::abs(got - want));
          ge33 = std::max(ge33, std::abs(curvature_like_C(s, H(a), H(bdx), V(i), V(j))));
        }
  for (int a = 0; a < p; ++a)
    for (int bdx = 0; bdx < p; ++bdx)
      for (int cdx = 0; cdx < p; ++cdx)
        for (int i = 0; i < n; ++i)
          ge22 = std::max(ge22,
                          std::abs(curvature_like_C(s, H(a), H(bdx), V(i), H(cdx))));
  for (int a = 0; a < p; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int u = 0; u < n; ++u)
          ge44 = std::max(ge44,
                          std::abs(curvature_like_C(s, H(a), V(u), V(i), V(j))));
  rep.add("ge11", ge11);
  rep.add("ge22", ge22);
  rep.add("ge33", ge33);
  rep.add("ge44", ge44);

  // beta / lambda / gamma reconstructions.
  double rbeta = 0.0, rgamma = 0.0;
  for (int a = 0; a < p; ++a)
    for (int bdx = 0; bdx < p; ++bdx)
      rbeta = std::max(rbeta, std::abs(b.xi.dot(s.sff.apply(H(a), H(bdx))) -
                                       b.beta * b.X(a) * b.X(bdx)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rgamma = std::max(rgamma, std::abs(b.xi.dot(s.sff.apply(V(i), V(j))) -
                                         b.gamma * b.e(p + i) * b.e(p + j)));
  rep.add("beta_relation", rbeta);
  rep.add("lambda_relation", b.recon_residual);
  rep.add("gamma_relation", rgamma);

  // Projected identity: <Pt a(Y,Z), Pt a(V,W) - <V,W> Pt a(e,e)> =
  // (beta gamma - lambda^2) <Y,X><Z,X><PV,PW>.
  auto Pt = [&](const Eigen::VectorXd& v) {
    return Eigen::VectorXd(v - b.xi.dot(v) * b.xi);
  };
  double disc = b.beta * b.gamma - b.lambda * b.lambda;
  Eigen::VectorXd aee = Pt(s.sff.apply(b.e, b.e));
  double rtp = 0.0;
  for (int a = 0; a < p; ++a)
    for (int bdx = 0; bdx < p; ++bdx)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Eigen::VectorXd lhs1 = Pt(s.sff.apply(H(a), H(bdx)));
          Eigen::VectorXd lhs2 = Pt(s.sff.apply(V(i), V(j))) -
                                 (i == j ? 1.0 : 0.0) * aee;
          double pvpw = (i == j ? 1.0 : 0.0) - b.e(p + i) * b.e(p + j);
          double want = disc * b.X(a) * b.X(bdx) * pvpw;
          rtp = std::max(rtp, std::abs(lhs1.dot(lhs2) - want));
        }
  rep.add("tildep_identity", rtp);

  if (is_product) {
    if (s.k == 2) {
      rep.add("delta_t0_plus_c", b.delta_t0 + c);
      if (tag.tag == TypeTag::B2) {
        double rb1 = 0.0, rb2 = 0.0;
        for (int a = 0; a < p; ++a)
          for (int bdx = 0; bdx < p; ++bdx)
            rb1 = std::max(rb1, std::abs(b.xitilde.dot(s.sff.apply(H(a), H(bdx))) -
                                         b.beta_t0 * b.X(a) * b.X(bdx)));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double want = (i == j ? 1.0 : 0.0) * b.delta_t0 -
                          disc * b.e(p + i) * b.e(p + j);
            rb2 = std::max(rb2, std::abs(b.beta_t0 *
                                             b.xitilde.dot(s.sff.apply(V(i), V(j))) -
                                         want));
          }
        rep.add("b2_tildebeta", rb1);
        rep.add("b2_tildegamma", rb2);
      }
    }
  }
  return rep;
}

namespace {

// Ambient normal vector for normal-frame coordinates, with the whole frame
// sign-aligned to a reference sample.
Eigen::MatrixXd aligned_normal_frame(const ImmersionSample& sp,
                                     const ImmersionSample& ref,
                                     const AmbientSpace& space) {
  Eigen::MatrixXd fr = sp.normal_frame;
  for (int r = 0; r < sp.k; ++r)
    if (inner(Eigen::VectorXd(fr.col(r)), Eigen::VectorXd(ref.normal_frame.col(r)),
              space) < 0.0)
      fr.col(r) *= -1.0;
  return fr;
}

}  // namespace

ResidualReport b1_structure_check(const Immersion& f,
                                  const std::vector<Eigen::VectorXd>& grid, double h) {
  ResidualReport rep;
  double rank2 = 0.0, e0rel = 0.0, omega_ker = 0.0;
  double min_bg = std::numeric_limits<double>::infinity();
  int b1_points = 0;
  for (const auto& z : grid) {
    ImmersionSample s = sample(f, z);
    PointType t = classify_core(s.sff, s.p, s.n);
    if (t.tag != TypeTag::B1) continue;
    ++b1_points;
    BTypeData b = extract_b_data(s.sff, s.p, s.n);
    Eigen::MatrixXd A = shape_operator(s, b.xi);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    rank2 = std::max(rank2, svd.singularValues()(1) / svd.singularValues()(0));

    Eigen::VectorXd E0 = b.beta * b.X + b.lambda * b.e;
    E0.normalize();
    double bg = b.beta + b.gamma;
    min_bg = std::min(min_bg, std::abs(bg));
    for (int a = 0; a < s.dim(); ++a) {
      Eigen::VectorXd want = bg * E0(a) * E0;
      e0rel = std::max(e0rel, (A.col(a) - want).norm());
    }

    if (s.k == 2) {
      // omega_m = <d_m xi, xitilde> by central differences of the ambient
      // normal field, then contracted with ker A_xi directions.
      Eigen::VectorXd xi_amb = s.normal_frame * b.xi;
      Eigen::VectorXd xit_amb = s.normal_frame * b.xitilde;
      const int d = s.dim();
      Eigen::VectorXd omega(d);
      for (int m = 0; m < d; ++m) {
        Eigen::VectorXd zp = z, zm = z;
        zp(m) += h;
        zm(m) -= h;
        ImmersionSample spp = sample(f, zp), spm = sample(f, zm);
        BTypeData bp = extract_b_data(spp.sff, s.p, s.n);
        BTypeData bm = extract_b_data(spm.sff, s.p, s.n);
        Eigen::VectorXd xp = aligned_normal_frame(spp, s, f.space) * bp.xi;
        Eigen::VectorXd xm = aligned_normal_frame(spm, s, f.space) * bm.xi;
        if (inner(xp, xi_amb, f.space) < 0.0) xp = -xp;
        if (inner(xm, xi_amb, f.space) < 0.0) xm = -xm;
        omega(m) = inner(Eigen::VectorXd((xp - xm) / (2.0 * h)), xit_amb, f.space);
      }
      // Kernel of A_xi in frame coords -> domain coords through coeff.
      for (int a = 1; a < d; ++a) {
        Eigen::VectorXd kv = svd.matrixV().col(a);
        Eigen::VectorXd u = s.coeff * kv;
        omega_ker = std::max(omega_ker, std::abs(u.dot(omega)));
      }
    }
  }
  rep.add("b1_points", static_cast<double>(b1_points));
  rep.add("rank_axi_second_sv", rank2);
  rep.add("e0_relation", e0rel);
  rep.add("omega_on_kernel", omega_ker);
  rep.add("min_abs_beta_plus_gamma",
          b1_points ? min_bg : 0.0);
  return rep;
}

ResidualReport b2_structure_check(const Immersion& f,
                                  const std::vector<Eigen::VectorXd>& grid, double h) {
  ResidualReport rep;
  double sf2_h = 0.0, sf2_v = 0.0, nye = 0.0, nvx = 0.0, nullity_mismatch = 0.0;
  int b2_points = 0;
  for (const auto& z : grid) {
    ImmersionSample s = sample(f, z);
    PointType t = classify_core(s.sff, s.p, s.n);
    if (t.tag != TypeTag::B2) continue;
    if (s.k != 2) throw std::invalid_argument("b2_structure_check: needs codimension 2");
    ++b2_points;
    BTypeData b = extract_b_data(s.sff, s.p, s.n);
    const int p = s.p, n = s.n, d = s.dim();

    // A_xitilde Y = beta_t0 <Y,X> X ; A_xitilde V = btilde V +
    // (gamma_t0 - btilde) <V,e> e.
    Eigen::MatrixXd At = shape_operator(s, b.xitilde);
    double bt = b.has_btilde ? b.btilde : 0.0;
    for (int a = 0; a < p; ++a) {
      Eigen::VectorXd want = b.beta_t0 * b.X(a) * b.X;
      sf2_h = std::max(sf2_h, (At.col(a) - want).norm());
    }
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd want = bt * Eigen::VectorXd::Unit(d, p + j) +
                             (b.gamma_t0 - bt) * b.e(p + j) * b.e;
      sf2_v = std::max(sf2_v, (At.col(p + j) - want).norm());
    }

    // Relative-nullity dichotomy.
    NullitySpace nul = relative_nullity(s);
    double scale = std::max(std::abs(b.beta_t0), 1.0);
    int expected = std::abs(b.delta_t0) > 1e-6 * scale ? p - 1 : (p - 1) + (n - 1);
    if (nul.dim != expected) nullity_mismatch = std::max(nullity_mismatch, 1.0);
    for (int cdx = 0; cdx < nul.dim; ++cdx) {
      nullity_mismatch =
          std::max(nullity_mismatch, std::abs(b.X.dot(nul.basis.col(cdx))));
      if (std::abs(b.delta_t0) <= 1e-6 * scale)
        nullity_mismatch =
            std::max(nullity_mismatch, std::abs(b.e.dot(nul.basis.col(cdx))));
    }

    // Field equations nabla_Y e = 0 (Y horizontal) and
    // nabla_V X = -<X,eta> V (V vertical), via stencil derivatives of the
    // coordinate fields with Christoffel correction.
    MetricJet mj = metric_jet(f.dom.full_metric(), z);
    Tensor3 gamma_s = christoffel(mj);
    Eigen::VectorXd X0 = s.coeff * b.X, e0 = s.coeff * b.e;
    Eigen::MatrixXd dX(d, d), de(d, d);   // (component, direction)
    for (int m = 0; m < d; ++m) {
      Eigen::VectorXd zp = z, zm = z;
      zp(m) += h;
      zm(m) -= h;
      ImmersionSample spp = sample(f, zp), spm = sample(f, zm);
      BTypeData bp = extract_b_data(spp.sff, p, n);
      BTypeData bm = extract_b_data(spm.sff, p, n);
      Eigen::VectorXd Xp = spp.coeff * bp.X, Xm = spm.coeff * bm.X;
      Eigen::VectorXd ep = spp.coeff * bp.e, em = spm.coeff * bm.e;
      if (Xp.dot(mj.g * X0) < 0.0) Xp = -Xp;
      if (Xm.dot(mj.g * X0) < 0.0) Xm = -Xm;
      if (ep.dot(mj.g * e0) < 0.0) ep = -ep;
      if (em.dot(mj.g * e0) < 0.0) em = -em;
      dX.col(m) = (Xp - Xm) / (2.0 * h);
      de.col(m) = (ep - em) / (2.0 * h);
    }
    Eigen::VectorXd eta_v = f.dom.eta(z);
    double xeta = X0.dot(mj.g * eta_v);
    auto covdir = [&](const Eigen::MatrixXd& dF, const Eigen::VectorXd& F0, int m) {
      Eigen::VectorXd out = dF.col(m);
      for (int kk = 0; kk < d; ++kk)
        for (int j = 0; j < d; ++j) out(kk) += gamma_s[kk](m, j) * F0(j);
      return out;
    };
    for (int m = 0; m < p; ++m) {
      Eigen::VectorXd v = covdir(de, e0, m);
      nye = std::max(nye, std::sqrt(std::abs(v.dot(mj.g * v))));
    }
    for (int m = p; m < d; ++m) {
      Eigen::VectorXd v = covdir(dX, X0, m) + xeta * Eigen::VectorXd::Unit(d, m);
      nvx = std::max(nvx, std::sqrt(std::abs(v.dot(mj.g * v))));
    }
  }
  rep.add("b2_points", static_cast<double>(b2_points));
  rep.add("sf2_horizontal", sf2_h);
  rep.add("sf2_vertical", sf2_v);
  rep.add("nabla_Y_e", nye);
  rep.add("nabla_V_X", nvx);
  rep.add("nullity_dichotomy", nullity_mismatch);
  return rep;
}

ResidualReport type_c_consistency(const Immersion& f,
                                  const std::vector<Eigen::VectorXd>& grid) {
  ResidualReport rep;
  int c_points = 0;
  double flatres = 0.0;
  for (const auto& z : grid) {
    PointType t = classify_point(f, z);
    if (t.tag != TypeTag::C) continue;
    ++c_points;
    Tensor4 R = riemann(f.dom.full_metric(), z);
    Eigen::MatrixXd g = f.dom.metric_value(z);
    const int d = static_cast<int>(g.rows());
    double c = f.space.c;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int kk = 0; kk < d; ++kk)
          for (int l = 0; l < d; ++l) {
            double wedge = g(i, l) * g(j, kk) - g(i, kk) * g(j, l);
            double got = riemann_component(R, g, Eigen::VectorXd::Unit(d, i),
                                           Eigen::VectorXd::Unit(d, j),
                                           Eigen::VectorXd::Unit(d, kk),
                                           Eigen::VectorXd::Unit(d, l));
            flatres = std::max(flatres, std::abs(got - c * wedge));
          }
  }
  rep.add("c_points", static_cast<double>(c_points));
  rep.add("constant_curvature_residual", flatres);
  return rep;
}

}  // namespace warpform
