#pragma once

#include <string>
#include <utility>
#include <vector>

#include "warpform/immersion.hpp"

namespace warpform {

enum class TypeTag { A, B1, B2, C, Indeterminate };
const char* type_name(TypeTag t);

// Numerical span of { alpha(H_i, V_j) } in the normal space.
struct AlphaHV {
  int span_dim = 0;
  Eigen::MatrixXd basis;            // normal-frame coords, one column per dim
  Eigen::VectorXd singular_values;
  double margin = 0.0;              // smallest kept sv relative to alpha scale
  bool marginal = false;            // some sv fell in the ambiguity band
};
AlphaHV alpha_hv(const SecondFF& sff, int p, int n);

struct PointType {
  TypeTag tag = TypeTag::Indeterminate;
  int dim_alpha_hv = 0;
  double margin = 0.0;
  bool marginal = false;
};

// The canonical type-B data at a point: unit vectors X (horizontal), e
// (vertical), xi (normal) and the scalars beta, lambda, gamma; for
// codimension two also the tilde scalars read off the complementary normal.
// All vectors are in frame coordinates with canonical signs.
struct BTypeData {
  Eigen::VectorXd X, e;             // tangent frame coords, size p+n
  Eigen::VectorXd xi, xitilde;      // normal frame coords (xitilde empty if k=1)
  double beta = 0.0, lambda = 0.0, gamma = 0.0;
  double beta_t0 = 0.0, gamma_t0 = 0.0, delta_t0 = 0.0;
  bool has_btilde = false;
  double btilde = 0.0;
  double recon_residual = 0.0;      // alpha(H,V) vs lambda<Y,X><V,e>xi
};

// Classification from the second fundamental form alone (p first frame
// directions horizontal, n last vertical). Operating on (p, n, alpha) keeps
// the classifier independent of how the frame was produced.
PointType classify_core(const SecondFF& sff, int p, int n, double tol = 1e-6);
PointType classify_point(const Immersion& f, const Eigen::VectorXd& z,
                         double tol = 1e-6);

BTypeData extract_b_data(const SecondFF& sff, int p, int n);

struct ResidualReport {
  std::vector<std::pair<std::string, double>> entries;
  void add(const std::string& name, double value) { entries.emplace_back(name, value); }
  double max_residual() const;
  double get(const std::string& name) const;   // NaN if absent
};

// Pointwise identities at a type-B point: the four curvature-like relations,
// the beta/lambda/gamma reconstruction, the projected identity, and (for
// Riemannian products) delta_t0 + c = 0 plus the product B2 relations.
ResidualReport verify_pointwise_relations(const Immersion& f, const Eigen::VectorXd& z,
                                          bool is_product);

// Structure of type-B1 regions: rank-one shape operator along xi, the E0
// eigen-relation, beta+gamma bounded away from zero, and the normal
// connection form omega vanishing on ker A_xi.
ResidualReport b1_structure_check(const Immersion& f,
                                  const std::vector<Eigen::VectorXd>& grid,
                                  double h = 1e-4);

// Structure of type-B2 regions: the complementary shape operator relations,
// the field equations for X and e, and the relative-nullity dichotomy.
ResidualReport b2_structure_check(const Immersion& f,
                                  const std::vector<Eigen::VectorXd>& grid,
                                  double h = 1e-4);

// At points classified C the intrinsic curvature must be constant = c.
ResidualReport type_c_consistency(const Immersion& f,
                                  const std::vector<Eigen::VectorXd>& grid);

}  // namespace warpform
