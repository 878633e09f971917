#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "warpform/classify.hpp"
#include "warpform/immersion.hpp"

namespace warpform {

struct GalleryInstance {
  std::string name;
  std::string description;
  Immersion f;
  std::string expected_type;   // "A", "B1", "B2" or "C"
  bool is_product = false;     // constant warping function
  std::vector<Eigen::VectorXd> default_grid;
  // Closed-form oracle: ambient alpha(d_i, d_j) at z, when available.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, int, int)> predicted_alpha;
};

// A warped product of immersions f = Psi o (F x G) in a flat ambient space:
// F maps the L chart into the totally geodesic factor V (linear span
// projector PV), G maps the M chart into the complete spherical submanifold
// with curvature ctilde, center `center` and linear span projector PW.
struct WarpedOfImmersions {
  Eigen::VectorXd zbar, a;
  Eigen::MatrixXd PV, PW;
  double ctilde = 1.0;
  Eigen::VectorXd center;
  JetMap F, G;
  int p = 0, n = 0, model_dim = 0;
};

JetMap warped_product_map(const WarpedOfImmersions& w);

// The split second-fundamental-form oracle for such an f: the horizontal part
// combines alpha^F with the normal component of the ambient warping gradient,
// the vertical part is alpha^G, both pushed forward by Psi.
std::function<Eigen::VectorXd(const Eigen::VectorXd&, int, int)> predicted_alpha_fn(
    const WarpedOfImmersions& w);

GalleryInstance make_warped_product_immersion(const std::string& name,
                                              const WarpedDomain& dom,
                                              const WarpedOfImmersions& w);

// Tilted flat products: circles of radii r1, r2 plus optional linear
// coordinates, with the chart rotated by the orthogonal matrix Q. The first
// two rows of Q feed the circles; the rest map linearly.
GalleryInstance make_tilted_flat(const std::string& name, const Eigen::MatrixXd& Q,
                                 double r1, double r2, int p, int n);

// Extrinsic Riemannian product of circles in the sphere of curvature c > 0.
GalleryInstance make_extrinsic_product(const std::string& name, double c, double r1,
                                       double r2);

// Randomized rotational hypersurface of R^4 with a 2-sphere fiber; the
// profile is a seeded random trigonometric perturbation of a circle.
Immersion make_hypersurface_random(std::uint64_t seed);

std::vector<std::string> gallery_names();
GalleryInstance gallery_get(const std::string& name);

}  // namespace warpform
