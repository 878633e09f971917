#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace warpform {

// Second-order truncated Taylor jet in `dim` variables: value, gradient and
// Hessian propagate through arithmetic. Dimension is dynamic; all operands of
// a binary operation must carry the same dimension.
class Jet {
 public:
  double a = 0.0;
  Eigen::VectorXd g;   // gradient, size dim
  Eigen::MatrixXd h;   // Hessian, dim x dim, symmetric

  Jet() : g(0), h(0, 0) {}

  static Jet constant(double value, int dim) {
    Jet j;
    j.a = value;
    j.g = Eigen::VectorXd::Zero(dim);
    j.h = Eigen::MatrixXd::Zero(dim, dim);
    return j;
  }

  static Jet variable(double value, int dim, int index) {
    Jet j = constant(value, dim);
    j.g(index) = 1.0;
    return j;
  }

  int dim() const { return static_cast<int>(g.size()); }

  Jet& operator+=(const Jet& o) {
    a += o.a;
    g += o.g;
    h += o.h;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    a -= o.a;
    g -= o.g;
    h -= o.h;
    return *this;
  }

  friend Jet operator+(Jet x, const Jet& y) { return x += y; }
  friend Jet operator-(Jet x, const Jet& y) { return x -= y; }
  friend Jet operator-(const Jet& x) {
    Jet j = x;
    j.a = -j.a;
    j.g = -j.g;
    j.h = -j.h;
    return j;
  }
  friend Jet operator+(Jet x, double c) {
    x.a += c;
    return x;
  }
  friend Jet operator+(double c, Jet x) {
    x.a += c;
    return x;
  }
  friend Jet operator-(Jet x, double c) {
    x.a -= c;
    return x;
  }
  friend Jet operator-(double c, const Jet& x) { return -x + c; }

  friend Jet operator*(const Jet& x, const Jet& y) {
    Jet j;
    j.a = x.a * y.a;
    j.g = x.a * y.g + y.a * x.g;
    j.h = x.a * y.h + y.a * x.h + x.g * y.g.transpose() + y.g * x.g.transpose();
    return j;
  }
  friend Jet operator*(Jet x, double c) {
    x.a *= c;
    x.g *= c;
    x.h *= c;
    return x;
  }
  friend Jet operator*(double c, Jet x) { return x * c; }

  friend Jet operator/(const Jet& x, const Jet& y) { return x * inverse(y); }
  friend Jet operator/(Jet x, double c) { return x * (1.0 / c); }
  friend Jet operator/(double c, const Jet& y) { return inverse(y) * c; }

  // f(u) with f', f'' supplied: chain rule through second order.
  static Jet compose(const Jet& u, double f, double fp, double fpp) {
    Jet j;
    j.a = f;
    j.g = fp * u.g;
    j.h = fp * u.h + fpp * (u.g * u.g.transpose());
    return j;
  }

  friend Jet inverse(const Jet& x) {
    double v = 1.0 / x.a;
    return compose(x, v, -v * v, 2.0 * v * v * v);
  }
  friend Jet sin(const Jet& x) {
    return compose(x, std::sin(x.a), std::cos(x.a), -std::sin(x.a));
  }
  friend Jet cos(const Jet& x) {
    return compose(x, std::cos(x.a), -std::sin(x.a), -std::cos(x.a));
  }
  friend Jet exp(const Jet& x) {
    double e = std::exp(x.a);
    return compose(x, e, e, e);
  }
  friend Jet log(const Jet& x) {
    return compose(x, std::log(x.a), 1.0 / x.a, -1.0 / (x.a * x.a));
  }
  friend Jet sqrt(const Jet& x) {
    double s = std::sqrt(x.a);
    return compose(x, s, 0.5 / s, -0.25 / (s * s * s));
  }
  friend Jet pow(const Jet& x, double e) {
    double v = std::pow(x.a, e);
    return compose(x, v, e * std::pow(x.a, e - 1.0),
                   e * (e - 1.0) * std::pow(x.a, e - 2.0));
  }
  friend Jet tanh(const Jet& x) {
    double t = std::tanh(x.a);
    return compose(x, t, 1.0 - t * t, -2.0 * t * (1.0 - t * t));
  }
};

using JetVec = std::vector<Jet>;
using JetMat = std::vector<std::vector<Jet>>;

// R^d -> R^m map evaluated through jets.
using JetMap = std::function<JetVec(const JetVec&)>;
// R^d -> scalar.
using JetFn = std::function<Jet(const JetVec&)>;
// R^d -> symmetric matrix (a metric in a chart).
using MetricFn = std::function<JetMat(const JetVec&)>;

inline JetVec seed_point(const Eigen::VectorXd& x) {
  JetVec v;
  v.reserve(x.size());
  for (int i = 0; i < x.size(); ++i)
    v.push_back(Jet::variable(x(i), static_cast<int>(x.size()), i));
  return v;
}

// Value, first and second partials of a map at a point.
struct MapJet {
  Eigen::VectorXd value;               // m
  Eigen::MatrixXd d1;                  // m x d
  std::vector<Eigen::MatrixXd> hess;   // per output component, d x d

  int out_dim() const { return static_cast<int>(value.size()); }
  int in_dim() const { return static_cast<int>(d1.cols()); }

  // Second partial vector d^2 f / dx_i dx_j as an ambient vector.
  Eigen::VectorXd second(int i, int j) const {
    Eigen::VectorXd v(out_dim());
    for (int r = 0; r < out_dim(); ++r) v(r) = hess[r](i, j);
    return v;
  }
};

inline MapJet eval_map(const JetMap& f, const Eigen::VectorXd& x) {
  JetVec out = f(seed_point(x));
  MapJet m;
  const int md = static_cast<int>(out.size());
  const int d = static_cast<int>(x.size());
  m.value.resize(md);
  m.d1.resize(md, d);
  m.hess.resize(md);
  for (int r = 0; r < md; ++r) {
    m.value(r) = out[r].a;
    m.d1.row(r) = out[r].g.transpose();
    m.hess[r] = out[r].h;
  }
  return m;
}

}  // namespace warpform
