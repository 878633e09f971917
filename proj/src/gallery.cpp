#include "warpform/gallery.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace warpform {

namespace {

std::vector<Eigen::VectorXd> tensor_grid(const std::vector<std::vector<double>>& axes) {
  std::vector<Eigen::VectorXd> out;
  std::vector<size_t> idx(axes.size(), 0);
  while (true) {
    Eigen::VectorXd z(axes.size());
    for (size_t i = 0; i < axes.size(); ++i) z(i) = axes[i][idx[i]];
    out.push_back(z);
    size_t i = axes.size();
    while (i > 0) {
      --i;
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i)
    v[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return v;
}

Jet jc(double v, int d) { return Jet::constant(v, d); }

}  // namespace

JetMap warped_product_map(const WarpedOfImmersions& w) {
  return [w](const JetVec& z) {
    const int d = z[0].dim();
    JetVec y(z.begin(), z.begin() + w.p);
    JetVec x(z.begin() + w.p, z.end());
    JetVec Fv = w.F(y);
    JetVec Gv = w.G(x);
    Jet sigma = jc(1.0, d);
    for (int i = 0; i < w.model_dim; ++i)
      sigma += (Fv[i] - w.zbar(i)) * jc(w.a(i), d);
    JetVec out;
    out.reserve(w.model_dim);
    for (int i = 0; i < w.model_dim; ++i)
      out.push_back(Fv[i] + sigma * (Gv[i] - w.zbar(i)));
    return out;
  };
}

std::function<Eigen::VectorXd(const Eigen::VectorXd&, int, int)> predicted_alpha_fn(
    const WarpedOfImmersions& w) {
  return [w](const Eigen::VectorXd& z, int i, int j) -> Eigen::VectorXd {
    const int md = w.model_dim;
    Eigen::VectorXd y = z.head(w.p), x = z.tail(w.n);
    MapJet Fj = eval_map(w.F, y);
    MapJet Gj = eval_map(w.G, x);
    Eigen::VectorXd q0 = Gj.value;

    // Orthonormal tangent frames of the factors (flat ambient).
    Eigen::MatrixXd TF = Fj.d1;
    for (int a = 0; a < TF.cols(); ++a) {
      for (int b = 0; b < a; ++b) TF.col(a) -= TF.col(b).dot(TF.col(a)) * TF.col(b);
      TF.col(a).normalize();
    }
    Eigen::MatrixXd TG = Gj.d1;
    for (int a = 0; a < TG.cols(); ++a) {
      for (int b = 0; b < a; ++b) TG.col(a) -= TG.col(b).dot(TG.col(a)) * TG.col(b);
      TG.col(a).normalize();
    }

    double sigma = 1.0 + (Fj.value - w.zbar).dot(w.a);

    // Horizontal part: alpha^F minus the warp-gradient term.
    Eigen::VectorXd hpart = Eigen::VectorXd::Zero(md);
    if (i < w.p && j < w.p) {
      Eigen::VectorXd s2 = w.PV * Fj.second(i, j);
      for (int b = 0; b < TF.cols(); ++b) s2 -= TF.col(b).dot(s2) * TF.col(b);
      hpart = s2;
    } else if (i >= w.p && j >= w.p) {
      // grad of the ambient warping function in V, component normal to F.
      Eigen::VectorXd gsig = w.PV * w.a;
      for (int b = 0; b < TF.cols(); ++b)
        gsig -= TF.col(b).dot(gsig) * TF.col(b);
      double gm = Gj.d1.col(i - w.p).dot(Gj.d1.col(j - w.p));   // M metric
      hpart = -sigma * gm * gsig;
    }

    // Vertical part: alpha^G within the spherical factor.
    Eigen::VectorXd vpart = Eigen::VectorXd::Zero(md);
    if (i >= w.p && j >= w.p) {
      Eigen::VectorXd s2 = w.PW * Gj.second(i - w.p, j - w.p);
      Eigen::VectorXd rdir = (q0 - w.center) * std::sqrt(w.ctilde);
      s2 -= rdir.dot(s2) * rdir;
      for (int b = 0; b < TG.cols(); ++b) s2 -= TG.col(b).dot(s2) * TG.col(b);
      vpart = s2;
    }

    // Push forward by Psi: horizontal u -> u + <u,a>(x - zbar), vertical
    // w -> sigma w.
    return hpart + hpart.dot(w.a) * (q0 - w.zbar) + sigma * vpart;
  };
}

GalleryInstance make_warped_product_immersion(const std::string& name,
                                              const WarpedDomain& dom,
                                              const WarpedOfImmersions& w) {
  GalleryInstance g;
  g.name = name;
  g.f.dom = dom;
  g.f.space = AmbientSpace::make(0.0, w.model_dim);
  g.f.map = warped_product_map(w);
  g.expected_type = "A";
  g.predicted_alpha = predicted_alpha_fn(w);
  return g;
}

GalleryInstance make_tilted_flat(const std::string& name, const Eigen::MatrixXd& Q,
                                 double r1, double r2, int p, int n) {
  const int d = p + n;
  if (Q.rows() != d || Q.cols() != d)
    throw std::invalid_argument("make_tilted_flat: Q dimension mismatch");
  if ((Q * Q.transpose() - Eigen::MatrixXd::Identity(d, d)).norm() > 1e-10)
    throw std::invalid_argument("make_tilted_flat: Q not orthogonal");
  if (r1 <= 0.0 || r2 <= 0.0)
    throw std::invalid_argument("make_tilted_flat: radii must be positive");

  GalleryInstance g;
  g.name = name;
  WarpedDomain dom;
  dom.L = FactorChart::flat(p, -6.0, 6.0);
  dom.M = FactorChart::flat(n, -6.0, 6.0);
  dom.rho = [](const JetVec& y) { return Jet::constant(1.0, y[0].dim()); };
  g.f.dom = dom;
  const int extra = d - 2;
  g.f.space = AmbientSpace::make(0.0, 4 + extra);
  g.f.map = [Q, r1, r2, d, extra](const JetVec& u) {
    const int jd = u[0].dim();
    std::vector<Jet> rot(d, Jet::constant(0.0, jd));
    for (int r = 0; r < d; ++r)
      for (int cdx = 0; cdx < d; ++cdx) rot[r] += Jet::constant(Q(r, cdx), jd) * u[cdx];
    JetVec out;
    out.push_back(Jet::constant(r1, jd) * cos(rot[0] / r1));
    out.push_back(Jet::constant(r1, jd) * sin(rot[0] / r1));
    out.push_back(Jet::constant(r2, jd) * cos(rot[1] / r2));
    out.push_back(Jet::constant(r2, jd) * sin(rot[1] / r2));
    for (int e = 0; e < extra; ++e) out.push_back(rot[2 + e]);
    return out;
  };
  g.is_product = true;
  return g;
}

GalleryInstance make_extrinsic_product(const std::string& name, double c, double r1,
                                       double r2) {
  if (std::abs(r1 * r1 + r2 * r2 - 1.0 / c) > 1e-10)
    throw std::invalid_argument("make_extrinsic_product: r1^2 + r2^2 != 1/c");
  GalleryInstance g;
  g.name = name;
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -6.0, 6.0);
  dom.M = FactorChart::flat(1, -6.0, 6.0);
  dom.rho = [](const JetVec& y) { return Jet::constant(1.0, y[0].dim()); };
  g.f.dom = dom;
  g.f.space = AmbientSpace::make(c, 3);
  g.f.map = [r1, r2](const JetVec& u) {
    const int jd = u[0].dim();
    JetVec out;
    out.push_back(Jet::constant(r1, jd) * cos(u[0] / r1));
    out.push_back(Jet::constant(r1, jd) * sin(u[0] / r1));
    out.push_back(Jet::constant(r2, jd) * cos(u[1] / r2));
    out.push_back(Jet::constant(r2, jd) * sin(u[1] / r2));
    return out;
  };
  g.is_product = true;
  g.expected_type = "A";
  return g;
}

Immersion make_hypersurface_random(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(0.05, 0.3), phase(0.0, 6.28318);
  std::vector<double> a(3), ph(3);
  for (int k = 0; k < 3; ++k) {
    a[k] = amp(rng);
    ph[k] = phase(rng);
  }
  auto rho_jet = [a, ph](const Jet& t) {
    Jet r = Jet::constant(3.0, t.dim());
    for (int k = 0; k < 3; ++k)
      r += Jet::constant(a[k], t.dim()) * cos((k + 1.0) * t + ph[k]);
    return r;
  };

  Immersion f;
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -6.0, 6.0);
  // Profile (t, rho(t)) traversed in the chart coordinate, so the L metric
  // carries the factor 1 + rho'^2.
  dom.L.metric_at = [a, ph](const JetVec& y) {
    // rho'(t) in closed form so the metric stays a clean function of t.
    Jet t = y[0];
    Jet rp = Jet::constant(0.0, t.dim());
    for (int k = 0; k < 3; ++k)
      rp -= Jet::constant(a[k] * (k + 1.0), t.dim()) * sin((k + 1.0) * t + ph[k]);
    return JetMat{{Jet::constant(1.0, t.dim()) + rp * rp}};
  };
  dom.M = FactorChart::flat(2, 0.3, 2.8);
  dom.M.metric_at = [](const JetVec& x) {
    const int jd = x[0].dim();
    JetMat g(2, JetVec(2, Jet::constant(0.0, jd)));
    g[0][0] = Jet::constant(1.0, jd);
    Jet st = sin(x[0]);
    g[1][1] = st * st;
    return g;
  };
  dom.rho = [rho_jet](const JetVec& y) { return rho_jet(y[0]); };
  f.dom = dom;
  f.space = AmbientSpace::make(0.0, 4);
  f.map = [rho_jet](const JetVec& u) {
    Jet r = rho_jet(u[0]);
    JetVec out;
    out.push_back(u[0]);
    out.push_back(r * cos(u[1]));
    out.push_back(r * sin(u[1]) * cos(u[2]));
    out.push_back(r * sin(u[1]) * sin(u[2]));
    return out;
  };
  return f;
}

namespace {

GalleryInstance build_plane() {
  GalleryInstance g;
  g.name = "plane";
  g.description = "affine plane in R^3, totally geodesic";
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -2.0, 2.0);
  dom.M = FactorChart::flat(1, -2.0, 2.0);
  dom.rho = [](const JetVec& y) { return Jet::constant(1.0, y[0].dim()); };
  g.f.dom = dom;
  g.f.space = AmbientSpace::make(0.0, 3);
  g.f.map = [](const JetVec& u) {
    JetVec out;
    out.push_back(u[0]);
    out.push_back(u[1]);
    out.push_back(Jet::constant(0.0, u[0].dim()));
    return out;
  };
  g.expected_type = "A";
  g.is_product = true;
  g.default_grid = tensor_grid({linspace(-0.8, 0.8, 5), linspace(-0.8, 0.8, 5)});
  g.predicted_alpha = [](const Eigen::VectorXd&, int, int) {
    return Eigen::VectorXd::Zero(3);
  };
  return g;
}

GalleryInstance build_cylinder() {
  GalleryInstance g;
  g.name = "cylinder";
  g.description = "circular cylinder R x_1 S^1 in R^3";
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -2.0, 2.0);
  dom.M = FactorChart::flat(1, -3.0, 3.0);
  dom.rho = [](const JetVec& y) { return Jet::constant(1.0, y[0].dim()); };
  g.f.dom = dom;
  g.f.space = AmbientSpace::make(0.0, 3);
  g.f.map = [](const JetVec& u) {
    JetVec out;
    out.push_back(cos(u[1]));
    out.push_back(sin(u[1]));
    out.push_back(u[0]);
    return out;
  };
  g.expected_type = "A";
  g.is_product = true;
  g.default_grid = tensor_grid({linspace(-0.8, 0.8, 5), linspace(0.2, 1.5, 5)});
  return g;
}

GalleryInstance build_rotational_torus() {
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -3.0, 3.0);
  dom.M = FactorChart::flat(1, -3.0, 3.0);
  dom.rho = [](const JetVec& y) { return Jet::constant(3.0, y[0].dim()) + cos(y[0]); };

  WarpedOfImmersions w;
  w.p = 1;
  w.n = 1;
  w.model_dim = 3;
  w.zbar = Eigen::VectorXd::Zero(3);
  w.zbar(1) = 1.0;
  w.a = w.zbar;
  w.ctilde = 1.0;
  w.center = Eigen::VectorXd::Zero(3);
  w.PV = Eigen::Vector3d(1, 1, 0).asDiagonal();
  w.PW = Eigen::Vector3d(0, 1, 1).asDiagonal();
  w.F = [](const JetVec& y) {
    JetVec out;
    out.push_back(sin(y[0]));
    out.push_back(cos(y[0]) + 3.0);
    out.push_back(Jet::constant(0.0, y[0].dim()));
    return out;
  };
  w.G = [](const JetVec& x) {
    JetVec out;
    out.push_back(Jet::constant(0.0, x[0].dim()));
    out.push_back(cos(x[0]));
    out.push_back(sin(x[0]));
    return out;
  };

  GalleryInstance g = make_warped_product_immersion("rotational_torus", dom, w);
  g.description = "torus of revolution in R^3 as a rotational warped product";
  g.is_product = false;
  g.default_grid = tensor_grid({linspace(0.2, 1.2, 5), linspace(0.3, 1.3, 5)});
  return g;
}

GalleryInstance build_rotational_catenary() {
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -1.5, 1.5);
  dom.L.metric_at = [](const JetVec& y) {
    Jet ch = (exp(y[0]) + exp(-y[0])) / 2.0;
    return JetMat{{ch * ch}};
  };
  dom.M = FactorChart::flat(1, -3.0, 3.0);
  dom.rho = [](const JetVec& y) { return (exp(y[0]) + exp(-y[0])) / 2.0; };

  WarpedOfImmersions w;
  w.p = 1;
  w.n = 1;
  w.model_dim = 3;
  w.zbar = Eigen::VectorXd::Zero(3);
  w.zbar(1) = 1.0;
  w.a = w.zbar;
  w.ctilde = 1.0;
  w.center = Eigen::VectorXd::Zero(3);
  w.PV = Eigen::Vector3d(1, 1, 0).asDiagonal();
  w.PW = Eigen::Vector3d(0, 1, 1).asDiagonal();
  w.F = [](const JetVec& y) {
    JetVec out;
    out.push_back(y[0]);
    out.push_back((exp(y[0]) + exp(-y[0])) / 2.0);
    out.push_back(Jet::constant(0.0, y[0].dim()));
    return out;
  };
  w.G = [](const JetVec& x) {
    JetVec out;
    out.push_back(Jet::constant(0.0, x[0].dim()));
    out.push_back(cos(x[0]));
    out.push_back(sin(x[0]));
    return out;
  };

  GalleryInstance g = make_warped_product_immersion("rotational_catenary", dom, w);
  g.description = "catenoid as a rotational warped product in R^3";
  g.default_grid = tensor_grid({linspace(-0.8, 0.8, 5), linspace(0.3, 1.3, 5)});
  return g;
}

GalleryInstance build_warped_s3_fiber() {
  const double r = std::sqrt(0.5);
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -3.0, 3.0);
  dom.M = FactorChart::flat(2, -3.0, 3.0);
  dom.rho = [](const JetVec& y) { return Jet::constant(3.0, y[0].dim()) + cos(y[0]); };

  WarpedOfImmersions w;
  w.p = 1;
  w.n = 2;
  w.model_dim = 5;
  w.zbar = Eigen::VectorXd::Zero(5);
  w.zbar(1) = 1.0;
  w.a = w.zbar;
  w.ctilde = 1.0;
  w.center = Eigen::VectorXd::Zero(5);
  w.PV = Eigen::VectorXd::Zero(5).asDiagonal();
  {
    Eigen::VectorXd dv(5);
    dv << 1, 1, 0, 0, 0;
    w.PV = dv.asDiagonal();
    dv << 0, 1, 1, 1, 1;
    w.PW = dv.asDiagonal();
  }
  w.F = [](const JetVec& y) {
    const int jd = y[0].dim();
    JetVec out;
    out.push_back(sin(y[0]));
    out.push_back(cos(y[0]) + 3.0);
    out.push_back(Jet::constant(0.0, jd));
    out.push_back(Jet::constant(0.0, jd));
    out.push_back(Jet::constant(0.0, jd));
    return out;
  };
  w.G = [r](const JetVec& x) {
    const int jd = x[0].dim();
    Jet rc = Jet::constant(r, jd);
    JetVec out;
    out.push_back(Jet::constant(0.0, jd));
    out.push_back(rc * cos(x[0] / r));
    out.push_back(rc * sin(x[0] / r));
    out.push_back(rc * cos(x[1] / r));
    out.push_back(rc * sin(x[1] / r));
    return out;
  };

  GalleryInstance g = make_warped_product_immersion("warped_s3_fiber", dom, w);
  g.description =
      "warped product over a profile circle with a Clifford-torus fiber in S^3, "
      "codimension two in R^5";
  g.default_grid = tensor_grid(
      {linspace(0.2, 1.2, 3), linspace(0.2, 1.0, 3), linspace(-0.9, -0.1, 3)});
  return g;
}

GalleryInstance build_clifford_torus() {
  GalleryInstance g = make_extrinsic_product("clifford_torus", 1.0, std::sqrt(0.5),
                                             std::sqrt(0.5));
  g.description = "Clifford torus in S^3 as an extrinsic Riemannian product";
  g.default_grid = tensor_grid({linspace(-0.8, 0.8, 5), linspace(-0.8, 0.8, 5)});
  return g;
}

GalleryInstance build_clifford_tilted() {
  Eigen::MatrixXd Q(2, 2);
  const double s = std::sqrt(0.5);
  Q << s, s, s, -s;
  GalleryInstance g = make_tilted_flat("clifford_tilted", Q, 1.0, 1.0, 1, 1);
  g.description = "flat torus in R^4 with the product chart rotated by 45 degrees";
  g.expected_type = "B2";
  g.default_grid = tensor_grid({linspace(0.1, 1.1, 5), linspace(-0.4, 0.6, 5)});
  return g;
}

GalleryInstance build_tilted_b2_ext() {
  // R x (tilted torus) x R in R^6: the middle block mixes the second
  // horizontal and first vertical coordinates.
  const double s = std::sqrt(0.5);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(4, 4);
  Q(0, 1) = s;
  Q(0, 2) = s;
  Q(1, 1) = s;
  Q(1, 2) = -s;
  Q(2, 0) = 1.0;
  Q(3, 3) = 1.0;
  GalleryInstance g = make_tilted_flat("tilted_b2_ext", Q, 1.0, 1.0, 2, 2);
  g.description = "product extension i1 x g x i2 of the tilted torus, type B2 in R^6";
  g.expected_type = "B2";
  g.default_grid = tensor_grid({linspace(-0.5, 0.5, 3), linspace(0.1, 1.1, 3),
                                linspace(-0.4, 0.6, 3), linspace(-0.5, 0.5, 3)});
  return g;
}

GalleryInstance build_tilted_flat_c() {
  Eigen::MatrixXd Q(3, 3);
  double a = 1.0 / std::sqrt(3.0), b = 1.0 / std::sqrt(2.0), c = 1.0 / std::sqrt(6.0);
  Q << a, a, a, b, -b, 0.0, c, c, -2.0 * c;
  GalleryInstance g = make_tilted_flat("tilted_flat_c", Q, 1.0, 1.0, 1, 2);
  g.description = "flat product T^2 x R in R^5 under a generic rotation, type C";
  g.expected_type = "C";
  g.default_grid = tensor_grid(
      {linspace(0.1, 0.9, 4), linspace(-0.3, 0.5, 4), linspace(0.2, 1.0, 4)});
  return g;
}

GalleryInstance build_bent_rotational() {
  GalleryInstance g;
  g.name = "bent_rotational";
  g.description =
      "rotational surface composed with a cylindrical bending of R^3 into R^4";
  const double s = std::sqrt(0.5);
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, 1.0, 2.0);
  dom.M = FactorChart::flat(1, 0.1, 1.4);
  dom.rho = [s](const JetVec& y) { return y[0] * s; };
  g.f.dom = dom;
  g.f.space = AmbientSpace::make(0.0, 4);
  g.f.map = [s](const JetVec& u) {
    // f(y,x) = (a(y), cos(b cos x), sin(b cos x), b sin x), a = b = y/sqrt(2),
    // so a'^2 + b'^2 = 1 and the pullback metric is dy^2 + b^2 dx^2.
    Jet b = u[0] * s;
    Jet w = b * cos(u[1]);
    JetVec out;
    out.push_back(u[0] * s);
    out.push_back(cos(w));
    out.push_back(sin(w));
    out.push_back(b * sin(u[1]));
    return out;
  };
  g.expected_type = "B1";
  g.default_grid = tensor_grid({linspace(1.2, 1.6, 5), linspace(0.4, 1.1, 5)});
  return g;
}

GalleryInstance build_circle_hull() {
  GalleryInstance g;
  g.name = "circle_hull";
  g.description = "planar circle of radius 1/2 in R^3 (spherical hull target)";
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -3.0, 3.0);
  dom.M = FactorChart::flat(0, 0.0, 0.0);
  dom.rho = [](const JetVec& y) { return Jet::constant(1.0, y[0].dim()); };
  g.f.dom = dom;
  g.f.space = AmbientSpace::make(0.0, 3);
  const double r = 0.5;
  g.f.map = [r](const JetVec& u) {
    Jet c = Jet::constant(r, u[0].dim());
    JetVec out;
    out.push_back(c * cos(u[0] / r));
    out.push_back(c * sin(u[0] / r));
    out.push_back(Jet::constant(0.0, u[0].dim()));
    return out;
  };
  g.expected_type = "A";
  g.is_product = true;
  g.default_grid = tensor_grid({linspace(-1.0, 1.0, 9)});
  return g;
}

GalleryInstance build_hypersurface_s2() {
  GalleryInstance g;
  g.name = "rotational_s2";
  g.description = "rotational hypersurface of R^4 with a 2-sphere fiber";
  g.f = make_hypersurface_random(0);   // seed 0: fixed default profile
  g.expected_type = "A";
  g.default_grid = tensor_grid(
      {linspace(0.2, 1.2, 3), linspace(0.6, 2.2, 3), linspace(0.3, 1.5, 3)});
  return g;
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"plane",          "cylinder",        "rotational_torus",
          "rotational_catenary", "warped_s3_fiber", "clifford_torus",
          "clifford_tilted", "tilted_b2_ext",  "tilted_flat_c",
          "bent_rotational", "circle_hull",    "rotational_s2"};
}

GalleryInstance gallery_get(const std::string& name) {
  if (name == "plane") return build_plane();
  if (name == "cylinder") return build_cylinder();
  if (name == "rotational_torus") return build_rotational_torus();
  if (name == "rotational_catenary") return build_rotational_catenary();
  if (name == "warped_s3_fiber") return build_warped_s3_fiber();
  if (name == "clifford_torus") return build_clifford_torus();
  if (name == "clifford_tilted") return build_clifford_tilted();
  if (name == "tilted_b2_ext") return build_tilted_b2_ext();
  if (name == "tilted_flat_c") return build_tilted_flat_c();
  if (name == "bent_rotational") return build_bent_rotational();
  if (name == "circle_hull") return build_circle_hull();
  if (name == "rotational_s2") return build_hypersurface_s2();
  throw std::invalid_argument("unknown gallery instance: " + name);
}

}  // namespace warpform
