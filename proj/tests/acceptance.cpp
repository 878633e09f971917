// Acceptance suite: one pass/fail line per criterion. Exit code 0 iff every
// criterion passes. All tolerances are pinned here.
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "warpform/cli.hpp"
#include "warpform/gallery.hpp"
#include "warpform/geometry.hpp"

using namespace warpform;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%2d] %s  %s  (%s)\n", id, ok ? "PASS" : "FAIL", what.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::vector<Eigen::VectorXd> box_grid(const Eigen::VectorXd& lo,
                                      const Eigen::VectorXd& hi,
                                      const std::vector<int>& counts) {
  int d = static_cast<int>(counts.size());
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(d, 0);
  for (;;) {
    Eigen::VectorXd z(d);
    for (int i = 0; i < d; ++i)
      z(i) = counts[i] == 1 ? 0.5 * (lo(i) + hi(i))
                            : lo(i) + (hi(i) - lo(i)) * idx[i] / (counts[i] - 1.0);
    out.push_back(z);
    int i = d - 1;
    while (i >= 0 && ++idx[i] == counts[i]) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// 1. Gauss-equation oracle across the whole gallery.
void criterion1() {
  double worst = 0.0;
  for (const auto& name : gallery_names()) {
    GalleryInstance g = gallery_get(name);
    if (g.f.dom.dim() < 2) continue;
    for (const auto& z : g.default_grid)
      worst = std::max(worst, gauss_residual(g.f, z));
  }
  report(1, worst < 1e-6, "Gauss equation on every gallery instance",
         "max residual " + fmt(worst) + " < 1e-6");
}

// 2. Warped curvature formulas on R x_{e^t} R^2 (hyperbolic space).
void criterion2() {
  WarpedDomain dom;
  dom.L = FactorChart::flat(1, -0.5, 0.5);
  dom.M = FactorChart::flat(2, -0.5, 0.5);
  dom.rho = [](const JetVec& y) { return exp(y[0]); };

  MetricFn metric = dom.full_metric();
  Eigen::Vector3d lo(-0.45, -0.45, -0.45), hi(0.45, 0.45, 0.45);
  auto grid = box_grid(lo, hi, {7, 7, 7});

  double sec_worst = 0.0, fd_worst = 0.0, mixed_worst = 0.0;
  for (const auto& z : grid) {
    Eigen::MatrixXd gm = dom.metric_value(z);
    Tensor4 R = riemann(metric, z);
    Tensor4 Rfd = riemann_fd(metric, z);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i < j) {
          Eigen::VectorXd u = Eigen::VectorXd::Unit(3, i);
          Eigen::VectorXd v = Eigen::VectorXd::Unit(3, j);
          double num = riemann_component(R, gm, u, v, v, u);
          double den = gm(i, i) * gm(j, j) - gm(i, j) * gm(i, j);
          sec_worst = std::max(sec_worst, std::abs(num / den + 1.0));
        }
        for (int k = 0; k < 3; ++k) {
          Eigen::VectorXd rw = dom.curvature_warped(z, Eigen::VectorXd::Unit(3, i),
                                                    Eigen::VectorXd::Unit(3, j),
                                                    Eigen::VectorXd::Unit(3, k));
          for (int m = 0; m < 3; ++m) {
            double lowered = (gm.row(m) * rw)(0);
            double fd = riemann_component(Rfd, gm, Eigen::VectorXd::Unit(3, i),
                                          Eigen::VectorXd::Unit(3, j),
                                          Eigen::VectorXd::Unit(3, k),
                                          Eigen::VectorXd::Unit(3, m));
            fd_worst = std::max(fd_worst, std::abs(lowered - fd));
          }
        }
      }
    // Mixed-type components that must vanish for any warped product:
    // R(X,Y)V with X,Y horizontal (vacuous for p = 1, checked anyway) and
    // R(V,W)X with V,W vertical, X horizontal.
    Eigen::VectorXd rv =
        dom.curvature_warped(z, Eigen::VectorXd::Unit(3, 1), Eigen::VectorXd::Unit(3, 2),
                             Eigen::VectorXd::Unit(3, 0));
    mixed_worst = std::max(mixed_worst, rv.cwiseAbs().maxCoeff());
    Eigen::VectorXd rx =
        dom.curvature_warped(z, Eigen::VectorXd::Unit(3, 0), Eigen::VectorXd::Unit(3, 0),
                             Eigen::VectorXd::Unit(3, 1));
    mixed_worst = std::max(mixed_worst, rx.cwiseAbs().maxCoeff());
    for (int m = 0; m < 3; ++m) {
      Tensor4 Rx = riemann(metric, z);
      mixed_worst = std::max(
          mixed_worst,
          std::abs(riemann_component(Rx, gm, Eigen::VectorXd::Unit(3, 1),
                                     Eigen::VectorXd::Unit(3, 2),
                                     Eigen::VectorXd::Unit(3, 0),
                                     Eigen::VectorXd::Unit(3, m))));
    }
  }
  bool ok = sec_worst < 1e-8 && fd_worst < 1e-6 && mixed_worst < 1e-9;
  report(2, ok, "warped curvature of R x_{e^t} R^2",
         "sectional+1 " + fmt(sec_worst) + " < 1e-8, assembled-vs-FD " + fmt(fd_worst) +
             " < 1e-6, mixed " + fmt(mixed_worst) + " < 1e-9");
}

// 3. Psi is an isometry onto the sigma-warped metric, c = 0 and c = 1.
void criterion3() {
  double worst_flat = 0.0, worst_sph = 0.0;

  // c = 0: rotational representation of R^3. V is the (y1, y2) half-plane,
  // the fiber the unit circle through zbar = (0,1,0) with a = (0,1,0).
  {
    WarpedRep rep;
    rep.total = AmbientSpace::make(0.0, 3);
    rep.sub.space = rep.total;
    rep.sub.zbar = Eigen::Vector3d(0, 1, 0);
    rep.sub.a = Eigen::Vector3d(0, 1, 0);
    rep.sub.m = 1;
    rep.sub.tangent_basis = Eigen::MatrixXd::Zero(3, 1);
    rep.sub.tangent_basis(2, 0) = 1.0;
    rep.sub.ctilde = 1.0;
    rep.sub.validate();

    auto grid = box_grid(Eigen::Vector2d(0.4, 0.2), Eigen::Vector2d(2.0, 1.4), {9, 9});
    for (const auto& q : grid) {
      // y ranges over the plane {x2 = 0}, so sigma(y) = <y - zbar, a> + 1 = y2.
      JetVec par = seed_point(Eigen::Vector3d(0.3, q(0), q(1)));
      JetVec y = {par[0], par[1], Jet::constant(0.0, 3)};
      JetVec x = {Jet::constant(0.0, 3), cos(par[2]), sin(par[2])};
      JetVec out = rep.psi(y, x);
      Eigen::MatrixXd d1(3, 3);
      for (int i = 0; i < 3; ++i) d1.row(i) = out[i].g.transpose();
      Eigen::MatrixXd pullback = d1.transpose() * d1;
      double sigma = q(0);   // sigma(y) = <y - zbar, a> + 1 = y2
      Eigen::Matrix3d want = Eigen::Matrix3d::Identity();
      want(2, 2) = sigma * sigma;
      worst_flat = std::max(worst_flat, (pullback - want).cwiseAbs().maxCoeff());
    }
  }

  // c = 1: spherical representation of S^2 with zbar = a = (1,0,0),
  // y(theta) = (cos theta, 0, sin theta), x(phi) on the equator circle.
  {
    WarpedRep rep;
    rep.total = AmbientSpace::make(1.0, 2);
    rep.sub.space = rep.total;
    rep.sub.zbar = Eigen::Vector3d(1, 0, 0);
    rep.sub.a = Eigen::Vector3d(1, 0, 0);
    rep.sub.m = 1;
    rep.sub.tangent_basis = Eigen::MatrixXd::Zero(3, 1);
    rep.sub.tangent_basis(1, 0) = 1.0;
    rep.sub.ctilde = 1.0;
    rep.sub.validate();

    auto grid =
        box_grid(Eigen::Vector2d(-1.2, -1.2), Eigen::Vector2d(1.2, 1.2), {9, 9});
    for (const auto& q : grid) {
      JetVec par = seed_point(q);
      JetVec y = {cos(par[0]), Jet::constant(0.0, 2), sin(par[0])};
      JetVec x = {cos(par[1]), sin(par[1]), Jet::constant(0.0, 2)};
      JetVec out = rep.psi(y, x);
      Eigen::MatrixXd d1(3, 2);
      for (int i = 0; i < 3; ++i) d1.row(i) = out[i].g.transpose();
      Eigen::MatrixXd pullback = d1.transpose() * d1;
      double sigma = std::cos(q(0));
      Eigen::Matrix2d want = Eigen::Matrix2d::Identity();
      want(1, 1) = sigma * sigma;
      worst_sph = std::max(worst_sph, (pullback - want).cwiseAbs().maxCoeff());
    }
  }

  bool ok = worst_flat < 1e-8 && worst_sph < 1e-8;
  report(3, ok, "Psi isometry for the c=0 and c=1 representations",
         "flat " + fmt(worst_flat) + ", spherical " + fmt(worst_sph) + " < 1e-8");
}

// 4. Type-A detection and split second fundamental form.
void criterion4() {
  double worst = 0.0;
  bool all_a = true;
  for (const auto& name : gallery_names()) {
    GalleryInstance g = gallery_get(name);
    if (!g.predicted_alpha || g.expected_type != "A" || g.f.dom.dim() < 2) continue;
    int m = g.f.dom.dim();
    for (const auto& z : g.default_grid) {
      ImmersionSample s = sample(g.f, z);
      all_a = all_a && classify_core(s.sff, s.p, s.n).tag == TypeTag::A;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          worst = std::max(worst, (g.predicted_alpha(z, i, j) -
                                   ambient_alpha(s, g.f.space, i, j))
                                      .cwiseAbs()
                                      .maxCoeff());
    }
  }
  report(4, all_a && worst < 1e-7, "type-A detection and predicted SFF split",
         std::string(all_a ? "all A" : "NOT all A") + ", alpha mismatch " +
             fmt(worst) + " < 1e-7");
}

// 5. Hypersurface restriction: no B2 or C in codimension one.
void criterion5() {
  std::vector<std::string> codim1 = {"cylinder", "rotational_torus",
                                     "rotational_catenary", "clifford_torus",
                                     "rotational_s2"};
  std::mt19937_64 rng(20260826);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int bad = 0, total = 0;
  for (const auto& name : codim1) {
    GalleryInstance g = gallery_get(name);
    int d = g.f.dom.dim();
    Eigen::VectorXd lo(d), hi(d);
    lo << g.f.dom.L.lo, g.f.dom.M.lo;
    hi << g.f.dom.L.hi, g.f.dom.M.hi;
    for (int t = 0; t < 200; ++t) {
      Eigen::VectorXd z(d);
      for (int i = 0; i < d; ++i) {
        double pad = 0.05 * (hi(i) - lo(i));
        z(i) = lo(i) + pad + (hi(i) - lo(i) - 2 * pad) * unit(rng);
      }
      TypeTag tag = classify_point(g.f, z).tag;
      bad += (tag == TypeTag::B2 || tag == TypeTag::C) ? 1 : 0;
      ++total;
    }
  }
  report(5, bad == 0 && total == 1000, "codimension-1 sweep yields no B2/C",
         std::to_string(bad) + " of " + std::to_string(total) + " points B2/C");
}

// 6. Exact B2 scalars on the tilted Clifford torus.
void criterion6() {
  GalleryInstance g = gallery_get("clifford_tilted");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  bool all_b2 = true;
  double worst = 0.0, worst_delta = 0.0;
  for (const auto& z : g.default_grid) {
    ImmersionSample s = sample(g.f, z);
    all_b2 = all_b2 && classify_core(s.sff, s.p, s.n).tag == TypeTag::B2;
    BTypeData b = extract_b_data(s.sff, s.p, s.n);
    worst = std::max({worst, std::abs(std::abs(b.lambda) - inv_sqrt2),
                      std::abs(b.beta), std::abs(b.gamma), std::abs(b.delta_t0)});
    worst_delta = std::max(worst_delta, std::abs(b.delta_t0 + 0.0));
  }
  report(6, all_b2 && worst < 1e-6 && worst_delta < 1e-8,
         "B2 exact scalars on the tilted Clifford torus",
         "|lambda|-1/sqrt2, |beta|, |gamma|, |delta~0| max " + fmt(worst) +
             " < 1e-6, |delta~0 + c| " + fmt(worst_delta) + " < 1e-8");
}

// 7. B1 structure on the bent rotational composition.
void criterion7() {
  GalleryInstance g = gallery_get("bent_rotational");
  bool all_b1 = true;
  for (const auto& z : g.default_grid)
    all_b1 = all_b1 && classify_point(g.f, z).tag == TypeTag::B1;
  ResidualReport rep = b1_structure_check(g.f, g.default_grid);
  double sv2 = rep.get("rank_axi_second_sv");
  double om = rep.get("omega_on_kernel");
  double bg = rep.get("min_abs_beta_plus_gamma");
  bool ok = all_b1 && sv2 < 1e-6 && om < 1e-5 && bg > 0.01;
  report(7, ok, "B1 structure on the bent rotational composition",
         "sv2/sv1 " + fmt(sv2) + " < 1e-6, omega " + fmt(om) + " < 1e-5, beta+gamma " +
             fmt(bg) + " > 0.01");
}

// 8. Type-C consistency: the flat R^5 example.
void criterion8() {
  GalleryInstance g = gallery_get("tilted_flat_c");
  bool all_c = true;
  for (const auto& z : g.default_grid)
    all_c = all_c && classify_point(g.f, z).tag == TypeTag::C;
  ResidualReport rep = type_c_consistency(g.f, g.default_grid);
  double curv = rep.get("constant_curvature_residual");
  report(8, all_c && curv < 1e-8, "type C everywhere with flat intrinsic metric",
         "curvature residual " + fmt(curv) + " < 1e-8");
}

// 9. Spherical hull of the radius-1/2 circle.
void criterion9() {
  GalleryInstance g = gallery_get("circle_hull");
  HullResult h = spherical_hull(g.f, g.default_grid);
  bool ok = h.determined && h.m == 1 && std::abs(h.ctilde - 4.0) < 1e-6;
  report(9, ok, "spherical hull of the r=1/2 circle",
         "m=" + std::to_string(h.m) + ", ctilde=" + fmt(h.ctilde) + " (want 1, 4)");
}

// 10. Distribution checker: negative control vs genuine warped metrics.
void criterion10() {
  // Perturbed metric dy^2 + (rho(y) + 0.1 x)^2 dx^2: V is umbilic but not
  // spherical, so the checker must flag it.
  MetricFn twisted = [](const JetVec& z) {
    JetMat g(2, std::vector<Jet>(2));
    int d = z[0].dim();
    Jet f = Jet::constant(1.5, d) + Jet::constant(0.5, d) * sin(z[0]) +
            Jet::constant(0.1, d) * z[1];
    g[0][0] = Jet::constant(1.0, d);
    g[0][1] = g[1][0] = Jet::constant(0.0, d);
    g[1][1] = f * f;
    return g;
  };
  auto grid = box_grid(Eigen::Vector2d(0.2, 0.2), Eigen::Vector2d(1.2, 1.2), {6, 6});
  DistributionReport bad = check_distributions(twisted, 1, 1, grid);

  double genuine_worst = 0.0;
  for (const char* name : {"rotational_torus", "rotational_catenary", "cylinder"}) {
    GalleryInstance g = gallery_get(name);
    DistributionReport dr = check_distributions(g.f.dom, g.default_grid);
    genuine_worst = std::max({genuine_worst, dr.h_totally_geodesic_residual,
                              dr.v_umbilic_residual, dr.v_spherical_residual});
  }
  bool ok = bad.v_spherical_residual > 1e-3 && genuine_worst < 1e-8;
  report(10, ok, "distribution checker negative control",
         "perturbed V-spherical " + fmt(bad.v_spherical_residual) +
             " > 1e-3, genuine max " + fmt(genuine_worst) + " < 1e-8");
}

// 11. Classifier invariance under random orthonormal re-bases.
void criterion11() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto rand_orth = [&](int d) {
    Eigen::MatrixXd A(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ();
    return Q;
  };

  double worst = 0.0;
  bool tags_ok = true;
  for (const char* name : {"clifford_tilted", "tilted_b2_ext"}) {
    GalleryInstance g = gallery_get(name);
    ImmersionSample s = sample(g.f, g.default_grid[1]);
    PointType base = classify_core(s.sff, s.p, s.n);
    BTypeData bb = extract_b_data(s.sff, s.p, s.n);
    int k = s.k;
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::MatrixXd OH = rand_orth(s.p), OV = rand_orth(s.n), ON = rand_orth(k);
      Eigen::MatrixXd OT = Eigen::MatrixXd::Zero(s.dim(), s.dim());
      OT.topLeftCorner(s.p, s.p) = OH;
      OT.bottomRightCorner(s.n, s.n) = OV;
      SecondFF rot;
      rot.alpha.assign(k, Eigen::MatrixXd::Zero(s.dim(), s.dim()));
      for (int r = 0; r < k; ++r) {
        Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(s.dim(), s.dim());
        for (int r0 = 0; r0 < k; ++r0) mix += ON(r0, r) * s.sff.alpha[r0];
        rot.alpha[r] = OT.transpose() * mix * OT;
      }
      PointType t = classify_core(rot, s.p, s.n);
      tags_ok = tags_ok && t.tag == base.tag;
      BTypeData b = extract_b_data(rot, s.p, s.n);
      worst = std::max({worst, std::abs(std::abs(b.beta) - std::abs(bb.beta)),
                        std::abs(std::abs(b.lambda) - std::abs(bb.lambda)),
                        std::abs(std::abs(b.gamma) - std::abs(bb.gamma)),
                        std::abs((b.beta * b.gamma - b.lambda * b.lambda) -
                                 (bb.beta * bb.gamma - bb.lambda * bb.lambda)),
                        std::abs(b.delta_t0 - bb.delta_t0)});
    }
  }
  report(11, tags_ok && worst < 1e-9, "classifier invariance under 100 re-bases",
         std::string(tags_ok ? "tags stable" : "TAG CHANGED") + ", scalar drift " +
             fmt(worst) + " < 1e-9");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::printf("%s: %d of 11 criteria passed\n", failures == 0 ? "PASS" : "FAIL",
              11 - failures);
  return failures == 0 ? 0 : 1;
}
