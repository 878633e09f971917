#include "doctest.h"
#include "warpform/gallery.hpp"
#include "warpform/geometry.hpp"

#include <cmath>

using namespace warpform;

TEST_CASE("gallery names resolve and grids are nonempty") {
  for (const auto& name : gallery_names()) {
    GalleryInstance g = gallery_get(name);
    CHECK(!g.default_grid.empty());
    ImmersionSample s = sample(g.f, g.default_grid.front());
    CHECK(s.dim() == g.f.dom.p() + g.f.dom.n());
  }
}

TEST_CASE("immersions are isometric: pullback matches the warped metric") {
  for (const auto& name : gallery_names()) {
    GalleryInstance g = gallery_get(name);
    double worst = 0.0;
    for (const auto& z : g.default_grid)
      worst = std::max(worst, isometry_residual(g.f, z));
    INFO("instance ", name);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("Gauss equation holds across the gallery") {
  for (const auto& name : gallery_names()) {
    GalleryInstance g = gallery_get(name);
    if (g.f.dom.p() + g.f.dom.n() < 2) continue;
    double worst = 0.0;
    for (const auto& z : g.default_grid)
      worst = std::max(worst, gauss_residual(g.f, z));
    INFO("instance ", name);
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("Codazzi equation holds on low-codimension instances") {
  for (const char* name : {"cylinder", "rotational_torus", "clifford_torus",
                           "clifford_tilted", "bent_rotational"}) {
    GalleryInstance g = gallery_get(name);
    double worst = 0.0;
    for (const auto& z : g.default_grid)
      worst = std::max(worst, codazzi_residual(g.f, z));
    INFO("instance ", name);
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("predicted second fundamental form matches the computed one") {
  for (const char* name : {"plane", "rotational_torus", "rotational_catenary",
                           "warped_s3_fiber"}) {
    GalleryInstance g = gallery_get(name);
    REQUIRE(g.predicted_alpha);
    double worst = 0.0;
    int m = g.f.dom.p() + g.f.dom.n();
    for (const auto& z : g.default_grid) {
      ImmersionSample s = sample(g.f, z);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          Eigen::VectorXd pred = g.predicted_alpha(z, i, j);
          Eigen::VectorXd got = ambient_alpha(s, g.f.space, i, j);
          worst = std::max(worst, (pred - got).cwiseAbs().maxCoeff());
        }
    }
    INFO("instance ", name);
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("expected classification per instance") {
  for (const auto& name : gallery_names()) {
    GalleryInstance g = gallery_get(name);
    if (g.f.dom.p() + g.f.dom.n() < 2) continue;
    for (const auto& z : g.default_grid) {
      PointType t = classify_point(g.f, z);
      INFO("instance ", name);
      CHECK(std::string(type_name(t.tag)) == g.expected_type);
    }
  }
}

TEST_CASE("rotational torus: vertical sits in a principal-normal nullity") {
  GalleryInstance g = gallery_get("rotational_torus");
  Eigen::VectorXd z(2);
  z << 0.5, 0.7;
  ImmersionSample s = sample(g.f, z);
  // The single vertical frame direction.
  Eigen::MatrixXd dirs = Eigen::MatrixXd::Zero(2, 1);
  dirs(1, 0) = 1.0;
  PrincipalNormal pn = principal_normal(s, dirs);
  CHECK(pn.residual < 1e-8);
  // The profile is (sin t, 3 + cos t): |zeta| = |(grad rho)_perp| / rho with
  // rho = 3 + cos t, so |zeta| = |cos t| / (3 + cos t) at the sampled point.
  double t = z(0);
  double expect = std::abs(std::cos(t)) / (3.0 + std::cos(t));
  CHECK(std::abs(pn.zeta.norm() - expect) < 1e-8);
}

TEST_CASE("warped S3 fiber: Clifford fiber has no common principal normal") {
  GalleryInstance g = gallery_get("warped_s3_fiber");
  Eigen::VectorXd z(3);
  z << 0.5, 0.4, 0.9;
  ImmersionSample s = sample(g.f, z);
  Eigen::MatrixXd dirs = Eigen::MatrixXd::Zero(3, 2);
  dirs(1, 0) = 1.0;
  dirs(2, 1) = 1.0;
  PrincipalNormal pn = principal_normal(s, dirs);
  CHECK(pn.residual > 1e-3);
}

TEST_CASE("tilted torus with identity rotation is an extrinsic product") {
  GalleryInstance g =
      make_tilted_flat("untilted", Eigen::Matrix2d::Identity(), 1.0, 1.0, 1, 1);
  Eigen::VectorXd z(2);
  z << 0.3, 0.8;
  CHECK(classify_point(g.f, z).tag == TypeTag::A);
}

TEST_CASE("circle hull instance recovers m = 1 and ctilde = 4") {
  GalleryInstance g = gallery_get("circle_hull");
  HullResult h = spherical_hull(g.f, g.default_grid);
  REQUIRE(h.determined);
  CHECK(h.mode == "umbilical");
  CHECK(h.m == 1);
  CHECK(std::abs(h.ctilde - 4.0) < 1e-6);
}

TEST_CASE("random rotational hypersurface is type A for several seeds") {
  for (std::uint64_t seed : {1u, 7u, 23u}) {
    Immersion f = make_hypersurface_random(seed);
    Eigen::VectorXd z(3);
    z << 1.1, 0.8, 0.6;
    CHECK(gauss_residual(f, z) < 1e-6);
    CHECK(classify_point(f, z).tag == TypeTag::A);
  }
}
