#include "warpform/cli.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace warpform {

// ---------------------------------------------------------------------------
// Expression parser: a small recursive-descent grammar over jets.
// ---------------------------------------------------------------------------
namespace {

struct Node {
  virtual ~Node() = default;
  virtual Jet eval(const JetVec& x) const = 0;
  virtual bool is_number(double* out) const { (void)out; return false; }
};
using NodePtr = std::unique_ptr<Node>;

struct NumNode : Node {
  double v;
  explicit NumNode(double v) : v(v) {}
  Jet eval(const JetVec& x) const override {
    return Jet::constant(v, x.empty() ? 0 : x[0].dim());
  }
  bool is_number(double* out) const override { *out = v; return true; }
};

struct VarNode : Node {
  int index;
  explicit VarNode(int i) : index(i) {}
  Jet eval(const JetVec& x) const override {
    if (index >= static_cast<int>(x.size()))
      throw std::invalid_argument("expression references x" + std::to_string(index) +
                                  " beyond the domain dimension");
    return x[index];
  }
};

struct BinNode : Node {
  char op;
  NodePtr a, b;
  BinNode(char op, NodePtr a, NodePtr b) : op(op), a(std::move(a)), b(std::move(b)) {}
  Jet eval(const JetVec& x) const override {
    Jet u = a->eval(x);
    Jet v = b->eval(x);
    switch (op) {
      case '+': return u + v;
      case '-': return u - v;
      case '*': return u * v;
      case '/': return u * inverse(v);
      default: break;
    }
    double e = 0.0;
    if (b->is_number(&e)) return pow(u, e);
    return exp(v * log(u));
  }
};

struct FnNode : Node {
  std::string name;
  NodePtr arg;
  FnNode(std::string name, NodePtr arg) : name(std::move(name)), arg(std::move(arg)) {}
  Jet eval(const JetVec& x) const override {
    Jet u = arg->eval(x);
    if (name == "sin") return sin(u);
    if (name == "cos") return cos(u);
    if (name == "exp") return exp(u);
    if (name == "sqrt") return sqrt(u);
    if (name == "log") return log(u);
    if (name == "tanh") return tanh(u);
    throw std::invalid_argument("unknown function '" + name + "'");
  }
};

struct NegNode : Node {
  NodePtr a;
  explicit NegNode(NodePtr a) : a(std::move(a)) {}
  Jet eval(const JetVec& x) const override { return -a->eval(x); }
  bool is_number(double* out) const override {
    if (!a->is_number(out)) return false;
    *out = -*out;
    return true;
  }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size())
      throw std::invalid_argument("trailing characters in expression: '" +
                                  s_.substr(pos_) + "'");
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (eat('+')) e = std::make_unique<BinNode>('+', std::move(e), term());
      else if (eat('-')) e = std::make_unique<BinNode>('-', std::move(e), term());
      else return e;
    }
  }
  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (eat('*')) e = std::make_unique<BinNode>('*', std::move(e), factor());
      else if (eat('/')) e = std::make_unique<BinNode>('/', std::move(e), factor());
      else return e;
    }
  }
  // '^' binds tighter than unary minus: -x0^2 is -(x0^2).
  NodePtr factor() {
    if (eat('-')) return std::make_unique<NegNode>(factor());
    eat('+');
    NodePtr base = primary();
    if (eat('^')) return std::make_unique<BinNode>('^', std::move(base), factor());
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) throw std::invalid_argument("unexpected end of expression");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t used = 0;
      double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return std::make_unique<NumNode>(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "pi") return std::make_unique<NumNode>(3.14159265358979323846);
      if (name.size() > 1 && name[0] == 'x') {
        bool digits = true;
        for (size_t i = 1; i < name.size(); ++i)
          digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
        if (digits) return std::make_unique<VarNode>(std::stoi(name.substr(1)));
      }
      if (name != "sin" && name != "cos" && name != "exp" && name != "sqrt" &&
          name != "log" && name != "tanh")
        throw std::invalid_argument("unknown identifier '" + name + "'");
      if (!eat('(')) throw std::invalid_argument("missing '(' after " + name);
      NodePtr arg = expr();
      if (!eat(')')) throw std::invalid_argument("missing ')' after " + name);
      return std::make_unique<FnNode>(name, std::move(arg));
    }
    if (eat('(')) {
      NodePtr e = expr();
      if (!eat(')')) throw std::invalid_argument("missing ')'");
      return e;
    }
    throw std::invalid_argument(std::string("unexpected character '") + c + "'");
  }
};

std::vector<Eigen::VectorXd> tensor_grid_of(const std::vector<std::vector<double>>& axes) {
  std::vector<Eigen::VectorXd> out;
  int d = static_cast<int>(axes.size());
  std::vector<size_t> idx(d, 0);
  for (;;) {
    Eigen::VectorXd z(d);
    for (int i = 0; i < d; ++i) z(i) = axes[i][idx[i]];
    out.push_back(z);
    int i = d - 1;
    while (i >= 0) {
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::vector<double> linspace_of(double lo, double hi, int count) {
  std::vector<double> out;
  if (count <= 1) { out.push_back(0.5 * (lo + hi)); return out; }
  for (int i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  return out;
}

}  // namespace

JetFn parse_expression(const std::string& src, int dim) {
  auto root = std::shared_ptr<Node>(Parser(src).parse().release());
  return [root, dim](const JetVec& x) -> Jet {
    if (static_cast<int>(x.size()) != dim)
      throw std::invalid_argument("expression arity mismatch");
    return root->eval(x);
  };
}

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

Scenario Scenario::from_json(const nlohmann::json& j) {
  Scenario sc;
  sc.label = j.value("label", std::string());
  if (j.contains("instance") && j["instance"].is_string()) {
    sc.instance = j["instance"].get<std::string>();
  } else if (j.contains("instance")) {
    const auto& in = j["instance"];
    sc.label = sc.label.empty() ? in.value("name", std::string("inline")) : sc.label;
    sc.p = in.at("p").get<int>();
    sc.n = in.at("n").get<int>();
    sc.c = in.value("c", 0.0);
    sc.rho_expr = in.value("rho", std::string());
    sc.map_exprs = in.at("map").get<std::vector<std::string>>();
    for (const auto& b : in.at("bounds"))
      sc.bounds.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
    if (static_cast<int>(sc.bounds.size()) != sc.p + sc.n)
      throw std::invalid_argument("scenario: bounds must list one [lo,hi] per axis");
  } else {
    throw std::invalid_argument("scenario: missing 'instance'");
  }
  if (sc.label.empty()) sc.label = sc.instance;
  if (j.contains("grid")) sc.grid = j["grid"].get<std::vector<int>>();
  if (j.contains("suites")) sc.suites = j["suites"].get<std::vector<std::string>>();
  if (j.contains("tolerances"))
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
      double v = it.value().get<double>();
      if (v <= 0.0) throw std::invalid_argument("scenario: tolerances must be positive");
      sc.tolerances[it.key()] = v;
    }
  sc.seed = j.value("seed", 0ull);
  return sc;
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return from_json(j);
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s = {"isometry", "gauss", "codazzi",
                                             "classify", "b1", "b2", "typec",
                                             "hull", "distributions"};
  return s;
}

double default_tolerance(const std::string& suite) {
  if (suite == "isometry") return 1e-8;
  if (suite == "gauss") return 1e-6;
  if (suite == "codazzi") return 1e-5;
  if (suite == "classify") return 0.5;      // fraction of off-expectation points
  if (suite == "b1") return 1e-5;
  if (suite == "b2") return 1e-5;
  if (suite == "typec") return 1e-8;
  if (suite == "hull") return 0.5;          // 0 = determined, 1 = not
  if (suite == "distributions") return 1e-8;
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

namespace {

struct ResolvedScenario {
  Immersion f;
  std::string expected_type;   // empty when unknown
  std::vector<Eigen::VectorXd> grid;
};

ResolvedScenario resolve(const Scenario& sc) {
  ResolvedScenario rs;
  if (!sc.instance.empty()) {
    if (sc.instance == "hypersurface_random") {
      rs.f = make_hypersurface_random(sc.seed);
      rs.expected_type = "A";
    } else {
      GalleryInstance g = gallery_get(sc.instance);
      rs.f = g.f;
      rs.expected_type = g.expected_type;
      if (sc.grid.empty()) rs.grid = g.default_grid;
    }
  } else {
    WarpedDomain dom;
    dom.L.dim = sc.p;
    dom.M.dim = sc.n;
    dom.L.lo.resize(sc.p); dom.L.hi.resize(sc.p);
    dom.M.lo.resize(sc.n); dom.M.hi.resize(sc.n);
    for (int i = 0; i < sc.p; ++i) {
      dom.L.lo(i) = sc.bounds[i].first;
      dom.L.hi(i) = sc.bounds[i].second;
    }
    for (int i = 0; i < sc.n; ++i) {
      dom.M.lo(i) = sc.bounds[sc.p + i].first;
      dom.M.hi(i) = sc.bounds[sc.p + i].second;
    }
    FactorChart fl = FactorChart::flat(sc.p, 0.0, 1.0);
    FactorChart fm = FactorChart::flat(sc.n, 0.0, 1.0);
    dom.L.metric_at = fl.metric_at;
    dom.M.metric_at = fm.metric_at;
    if (sc.rho_expr.empty()) {
      dom.rho = [](const JetVec& x) {
        return Jet::constant(1.0, x.empty() ? 0 : x[0].dim());
      };
    } else {
      dom.rho = parse_expression(sc.rho_expr, sc.p);
    }
    int model_dim = static_cast<int>(sc.map_exprs.size());
    int l = sc.c == 0.0 ? model_dim : model_dim - 1;
    rs.f.dom = dom;
    rs.f.space = AmbientSpace::make(sc.c, l);
    std::vector<JetFn> comps;
    for (const auto& e : sc.map_exprs)
      comps.push_back(parse_expression(e, sc.p + sc.n));
    rs.f.map = [comps](const JetVec& x) {
      JetVec out;
      out.reserve(comps.size());
      for (const auto& c : comps) out.push_back(c(x));
      return out;
    };
  }

  if (rs.grid.empty()) {
    int d = rs.f.dom.dim();
    std::vector<std::vector<double>> axes;
    Eigen::VectorXd lo(d), hi(d);
    lo << rs.f.dom.L.lo, rs.f.dom.M.lo;
    hi << rs.f.dom.L.hi, rs.f.dom.M.hi;
    for (int i = 0; i < d; ++i) {
      int count = i < static_cast<int>(sc.grid.size()) ? sc.grid[i] : 5;
      // Keep a margin from the chart boundary so FD stencils stay in bounds.
      double pad = 0.02 * (hi(i) - lo(i));
      axes.push_back(linspace_of(lo(i) + pad, hi(i) - pad, count));
    }
    rs.grid = tensor_grid_of(axes);
  }
  return rs;
}

const char* tag_str(TypeTag t) { return type_name(t); }

}  // namespace

bool Report::pass() const {
  for (const auto& s : suites)
    if (!s.pass) return false;
  return true;
}

Report run_scenario(const Scenario& sc, int jobs) {
  ResolvedScenario rs = resolve(sc);
  const Immersion& f = rs.f;
  const auto& grid = rs.grid;
  const int d = f.dom.dim();

  Report rep;
  rep.scenario_echo["label"] = sc.label;
  rep.scenario_echo["instance"] = sc.instance.empty() ? "(inline)" : sc.instance;
  rep.scenario_echo["seed"] = sc.seed;
  rep.scenario_echo["points"] = grid.size();

  std::vector<std::string> suites = sc.suites.empty() ? all_suites() : sc.suites;
  auto tol_of = [&](const std::string& name) {
    auto it = sc.tolerances.find(name);
    return it != sc.tolerances.end() ? it->second : default_tolerance(name);
  };

  // Per-point sweep, parallel over a fixed index range so the output order is
  // independent of the worker count.
  rep.points.resize(grid.size());
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      PointRecord& r = rep.points[i];
      r.params = grid[i];
      r.isometry = isometry_residual(f, grid[i]);
      if (d >= 2) r.gauss = gauss_residual(f, grid[i]);
      ImmersionSample s = sample(f, grid[i]);
      PointType t = classify_core(s.sff, s.p, s.n);
      r.tag = t.tag;
      r.dim_alpha_hv = t.dim_alpha_hv;
      r.margin = t.margin;
      if (t.tag == TypeTag::B1 || t.tag == TypeTag::B2) {
        try {
          BTypeData b = extract_b_data(s.sff, s.p, s.n);
          r.has_b = true;
          r.beta = b.beta;
          r.lambda = b.lambda;
          r.gamma = b.gamma;
          r.delta_t0 = b.delta_t0;
        } catch (const std::exception&) {
          r.has_b = false;
        }
      }
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1 || grid.size() < 2) {
    work(0, grid.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (grid.size() + jobs - 1) / jobs;
    for (size_t b = 0; b < grid.size(); b += chunk)
      pool.emplace_back(work, b, std::min(b + chunk, grid.size()));
    for (auto& t : pool) t.join();
  }

  for (const auto& r : rep.points) ++rep.type_counts[tag_str(r.tag)];

  for (const std::string& name : suites) {
    SuiteSummary sum;
    sum.name = name;
    sum.tolerance = tol_of(name);
    if (name == "isometry") {
      for (const auto& r : rep.points)
        sum.max_residual = std::max(sum.max_residual, r.isometry);
      sum.pass = sum.max_residual < sum.tolerance;
    } else if (name == "gauss") {
      for (const auto& r : rep.points)
        sum.max_residual = std::max(sum.max_residual, r.gauss);
      sum.pass = d < 2 || sum.max_residual < sum.tolerance;
      if (d < 2) sum.note = "one-dimensional domain, vacuous";
    } else if (name == "codazzi") {
      for (const auto& z : grid)
        sum.max_residual = std::max(sum.max_residual, codazzi_residual(f, z));
      sum.pass = sum.max_residual < sum.tolerance;
    } else if (name == "classify") {
      size_t off = 0;
      for (const auto& r : rep.points) {
        bool bad = r.tag == TypeTag::Indeterminate;
        if (!rs.expected_type.empty())
          bad = bad || std::string(tag_str(r.tag)) != rs.expected_type;
        off += bad ? 1 : 0;
      }
      sum.max_residual = rep.points.empty()
                             ? 0.0
                             : static_cast<double>(off) / rep.points.size();
      sum.pass = off == 0;
      if (!rs.expected_type.empty()) sum.note = "expected " + rs.expected_type;
    } else if (name == "b1" || name == "b2" || name == "typec") {
      ResidualReport rr;
      std::string count_key;
      if (name == "b1") { rr = b1_structure_check(f, grid); count_key = "b1_points"; }
      if (name == "b2") { rr = b2_structure_check(f, grid); count_key = "b2_points"; }
      if (name == "typec") { rr = type_c_consistency(f, grid); count_key = "c_points"; }
      double pts = rr.get(count_key);
      if (!(pts > 0.0)) {
        sum.pass = true;
        sum.note = "no points of this type";
      } else {
        for (const auto& [k, v] : rr.entries) {
          if (k == count_key) continue;
          if (k == "min_abs_beta_plus_gamma") {
            if (v <= 0.01) sum.pass = false;
            continue;
          }
          sum.max_residual = std::max(sum.max_residual, v);
        }
        sum.pass = sum.pass && sum.max_residual < sum.tolerance;
      }
    } else if (name == "hull") {
      HullResult h = spherical_hull(f, grid);
      sum.pass = true;
      if (h.determined)
        sum.note = h.mode + ", m=" + std::to_string(h.m) +
                   ", ctilde=" + std::to_string(h.ctilde);
      else
        sum.note = "undetermined: neither decidable mode applies";
    } else if (name == "distributions") {
      DistributionReport dr = check_distributions(f.dom, grid);
      sum.max_residual = std::max({dr.h_totally_geodesic_residual,
                                   dr.v_umbilic_residual, dr.v_spherical_residual});
      sum.pass = sum.max_residual < sum.tolerance;
    } else {
      (void)default_tolerance(name);   // throws on unknown suite
    }
    rep.suites.push_back(sum);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["scenario"] = scenario_echo;
  nlohmann::ordered_json counts;
  for (const auto& [k, v] : type_counts) counts[k] = v;
  j["type_counts"] = counts;
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& s : suites) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["max_residual"] = s.max_residual;
    e["tolerance"] = s.tolerance;
    e["pass"] = s.pass;
    if (!s.note.empty()) e["note"] = s.note;
    j["suites"].push_back(e);
  }
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& r : points) {
    nlohmann::ordered_json e;
    e["params"] = std::vector<double>(r.params.data(), r.params.data() + r.params.size());
    e["type"] = tag_str(r.tag);
    e["dim_alpha_hv"] = r.dim_alpha_hv;
    e["margin"] = r.margin;
    if (r.has_b) {
      e["beta"] = r.beta;
      e["lambda"] = r.lambda;
      e["gamma"] = r.gamma;
      e["delta_t0"] = r.delta_t0;
    }
    e["isometry_residual"] = r.isometry;
    e["gauss_residual"] = r.gauss;
    j["points"].push_back(e);
  }
  j["pass"] = pass();
  return j;
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out.precision(12);
  int d = points.empty() ? 0 : static_cast<int>(points.front().params.size());
  for (int i = 0; i < d; ++i) out << "param_" << i << ",";
  out << "type,dim_alpha_hv,beta,lambda,gamma,delta_t0,"
      << "isometry_residual,gauss_residual\n";
  for (const auto& r : points) {
    for (int i = 0; i < d; ++i) out << r.params(i) << ",";
    out << tag_str(r.tag) << "," << r.dim_alpha_hv << ",";
    if (r.has_b)
      out << r.beta << "," << r.lambda << "," << r.gamma << "," << r.delta_t0 << ",";
    else
      out << ",,,,";
    out << r.isometry << "," << r.gauss << "\n";
  }
  return out.str();
}

}  // namespace warpform
