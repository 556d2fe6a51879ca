#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hslab/model_systems.hpp"
#include "hslab/verify.hpp"

namespace hslab {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalar / matrix / axis codecs. Canonical form: complex as [re, im], matrices
// as nested row-major arrays, multi-index keys as "2,0,0".
// ---------------------------------------------------------------------------

namespace cfg {

inline Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw InputError(where + ": expected a number or [re, im]");
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InputError(where + ": expected a nonempty matrix array");
  const int rows = static_cast<int>(j.size());
  int cols = -1;
  Matrix m;
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.empty()) throw InputError(where + ": matrix rows must be arrays");
    if (cols < 0) {
      cols = static_cast<int>(row.size());
      m = Matrix::Zero(rows, cols);
    }
    if (static_cast<int>(row.size()) != cols) throw InputError(where + ": ragged matrix");
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[c], where);
  }
  return m;
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline Axis axis_from_json(const Json& j, AxisRole role, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an axis object");
  Axis a;
  a.role = role;
  a.count = j.at("count").get<int>();
  a.extent = j.at("extent").get<double>();
  if (role == AxisRole::Normal) {
    const std::string sp = j.value("spacing", "uniform");
    if (sp == "graded") {
      a.spacing = Spacing::GradedAtZero;
      a.grading = j.value("grading", 2.0);
    } else if (sp != "uniform") {
      throw InputError(where + ": spacing must be 'uniform' or 'graded'");
    }
  }
  a.validate();
  return a;
}

inline Json axis_to_json(const Axis& a) {
  Json j;
  j["count"] = a.count;
  j["extent"] = a.extent;
  if (a.role == AxisRole::Normal) {
    j["spacing"] = a.spacing == Spacing::GradedAtZero ? "graded" : "uniform";
    if (a.spacing == Spacing::GradedAtZero) j["grading"] = a.grading;
  }
  return j;
}

inline Anisotropy aniso_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an anisotropy object");
  Anisotropy an;
  an.dims = j.at("dims").get<std::vector<int>>();
  an.weights = j.at("weights").get<std::vector<double>>();
  an.validate();
  return an;
}

inline Json aniso_to_json(const Anisotropy& an) {
  Json j;
  j["dims"] = an.dims;
  j["weights"] = an.weights;
  return j;
}

inline double q_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw InputError(where + ": string q must be 'inf'");
  }
  if (j.is_number()) return j.get<double>();
  throw InputError(where + ": q must be a number or 'inf'");
}

inline Json q_to_json(double q) {
  if (std::isinf(q)) return Json("inf");
  return Json(q);
}

inline void require_weight(double gamma, const std::string& where) {
  if (gamma <= -1.0)
    throw InputError("NonIntegrableWeight: " + where +
                     " uses power weight exponent <= -1 (need gamma > -1)");
}

}  // namespace cfg

// ---------------------------------------------------------------------------
// Norm specs
// ---------------------------------------------------------------------------

namespace cfg {

inline NormKind norm_kind_from_name(const std::string& s, const std::string& where) {
  if (s == "mixed-lp") return NormKind::MixedLp;
  if (s == "besov") return NormKind::Besov;
  if (s == "triebel-lizorkin") return NormKind::TriebelLizorkin;
  if (s == "bessel-sobolev") return NormKind::BesselSobolev;
  throw InputError(where + ": unknown norm kind '" + s + "'");
}

inline const char* norm_kind_name(NormKind k) {
  switch (k) {
    case NormKind::MixedLp: return "mixed-lp";
    case NormKind::Besov: return "besov";
    case NormKind::TriebelLizorkin: return "triebel-lizorkin";
    case NormKind::BesselSobolev: return "bessel-sobolev";
  }
  return "?";
}

inline NormSpec norm_from_json(const Json& j, const std::string& where) {
  NormSpec n;
  n.kind = norm_kind_from_name(j.at("kind").get<std::string>(), where);
  n.s = j.value("s", 0.0);
  if (!j.contains("p") || !j.at("p").is_array())
    throw InputError(where + ": 'p' must be an array with one exponent per axis");
  for (const auto& v : j.at("p")) n.p.push_back(q_from_json(v, where + ".p"));
  n.q = j.contains("q") ? q_from_json(j.at("q"), where + ".q") : 2.0;
  n.gamma = j.value("gamma", 0.0);
  require_weight(n.gamma, where);
  n.aniso = aniso_from_json(j.at("aniso"), where + ".aniso");
  return n;
}

inline Json norm_to_json(const NormSpec& n) {
  Json j;
  j["kind"] = norm_kind_name(n.kind);
  j["s"] = n.s;
  Json p = Json::array();
  for (double v : n.p) p.push_back(q_to_json(v));
  j["p"] = p;
  j["q"] = q_to_json(n.q);
  j["gamma"] = n.gamma;
  j["aniso"] = aniso_to_json(n.aniso);
  return j;
}

}  // namespace cfg

// ---------------------------------------------------------------------------
// Systems: explicit coefficient tables, or a named model with parameters.
// ---------------------------------------------------------------------------

namespace cfg {

inline BVSystem system_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("system: expected an object");
  if (j.contains("model")) {
    const std::string name = j.at("model").get<std::string>();
    const int dim = j.value("dim", 2);
    BVSystem sys;
    if (name == "dirichlet_laplacian") {
      sys = dirichlet_laplacian(dim);
    } else if (name == "neumann_laplacian") {
      sys = neumann_laplacian(dim);
    } else if (name == "cauchy_riemann_laplacian") {
      sys = laplacian_system(dim, cauchy_riemann_op(dim));
    } else if (name == "rotated_laplacian") {
      sys = rotated_laplacian(dim, complex_from_json(j.at("rotation"), "system.rotation"));
    } else if (name == "clamped_bilaplacian") {
      sys = clamped_bilaplacian(dim);
    } else if (name == "wave_system") {
      sys = wave_system(dim);
    } else if (name == "diagonal_laplacians") {
      sys = diagonal_laplacians(dim, j.at("scales").get<std::vector<double>>());
    } else {
      throw InputError("system: unknown model '" + name + "'");
    }
    return sys;
  }
  BVSystem sys;
  sys.dim = j.at("dim").get<int>();
  sys.state_dim = j.value("state_dim", 1);
  sys.order = j.at("order").get<int>();
  if (!j.contains("interior") || !j.at("interior").is_object())
    throw InputError("system: 'interior' coefficient table required");
  for (const auto& [key, val] : j.at("interior").items())
    sys.interior[mi_parse(key, sys.dim)] = matrix_from_json(val, "system.interior[" + key + "]");
  if (!j.contains("boundary") || !j.at("boundary").is_array())
    throw InputError("system: 'boundary' operator list required");
  for (const auto& jb : j.at("boundary")) {
    BoundaryOp op;
    op.order = jb.at("order").get<int>();
    for (const auto& [key, val] : jb.at("coeffs").items())
      op.coeffs[mi_parse(key, sys.dim)] = matrix_from_json(val, "system.boundary[" + key + "]");
    sys.boundary.push_back(op);
  }
  sys.validate();
  return sys;
}

inline Json system_to_json(const BVSystem& sys) {
  Json j;
  j["dim"] = sys.dim;
  j["state_dim"] = sys.state_dim;
  j["order"] = sys.order;
  Json interior;
  for (const auto& [a, c] : sys.interior) interior[mi_format(a)] = matrix_to_json(c);
  j["interior"] = interior;
  Json boundary = Json::array();
  for (const BoundaryOp& op : sys.boundary) {
    Json jb;
    jb["order"] = op.order;
    Json coeffs;
    for (const auto& [b, c] : op.coeffs) coeffs[mi_format(b)] = matrix_to_json(c);
    jb["coeffs"] = coeffs;
    boundary.push_back(jb);
  }
  j["boundary"] = boundary;
  return j;
}

}  // namespace cfg

// ---------------------------------------------------------------------------
// Lambda grids: {moduli, rays} crossed log grid, or an explicit list.
// ---------------------------------------------------------------------------

struct LambdaSpec {
  bool is_grid = true;
  std::vector<double> moduli{1.0};
  std::vector<double> rays{0.0};
  std::vector<Complex> list;

  std::vector<Complex> values() const {
    if (is_grid) return lambda_grid(moduli, rays);
    return list;
  }
};

namespace cfg {

inline LambdaSpec lambda_from_json(const Json& j, const std::string& where) {
  LambdaSpec l;
  if (j.is_array()) {
    l.is_grid = false;
    l.moduli.clear();
    l.rays.clear();
    for (const auto& v : j) l.list.push_back(complex_from_json(v, where));
    if (l.list.empty()) throw InputError(where + ": empty lambda list");
    return l;
  }
  if (j.is_object()) {
    l.moduli = j.at("moduli").get<std::vector<double>>();
    l.rays = j.at("rays").get<std::vector<double>>();
    if (l.moduli.empty() || l.rays.empty()) throw InputError(where + ": empty lambda grid");
    return l;
  }
  throw InputError(where + ": expected a lambda grid object or list");
}

inline Json lambda_to_json(const LambdaSpec& l) {
  if (l.is_grid) {
    Json j;
    j["moduli"] = l.moduli;
    j["rays"] = l.rays;
    return j;
  }
  Json arr = Json::array();
  for (Complex z : l.list) arr.push_back(complex_to_json(z));
  return arr;
}

}  // namespace cfg

// ---------------------------------------------------------------------------
// Verify check configurations
// ---------------------------------------------------------------------------

struct PardepCheck {
  std::string id;
  double t = 0.4;
  double s0 = 0.4;
  LambdaSpec lambdas;
  PardepSpecs sp;
};

struct EmbeddingCheck {
  std::string id;
  double s = 1.0, gamma = 0.0, s_target = 1.0, gamma_target = 0.0;
  EmbeddingSpecs sp;
};

struct TraceCheck {
  std::string id;
  MultiIndex beta;
  double s = 0.0, rho = 2.0;
  TraceSpecs sp;
};

struct IntersectionCheck {
  std::string id;
  double s = 1.0, rho = 2.0;
  IntersectionSpecs sp;
};

struct KernelMappingCheck {
  std::string id;
  double sigma = 2.0;
  LambdaSpec lambdas;
  KernelMappingSpecs sp;
};

struct SymbolBoundCheck {
  std::string id;
  LambdaSpec lambdas;
  std::vector<MultiIndex> alphas;
  SymbolBoundSpecs sp;
};

using VerifyCheck = std::variant<PardepCheck, EmbeddingCheck, TraceCheck, IntersectionCheck,
                                 KernelMappingCheck, SymbolBoundCheck>;

inline const std::string& check_id(const VerifyCheck& c) {
  return std::visit([](const auto& x) -> const std::string& { return x.id; }, c);
}

namespace cfg {

inline Axis grid_normal(const Json& j, const std::string& where) {
  if (!j.contains("normal")) throw InputError(where + ": grids.normal required");
  return axis_from_json(j.at("normal"), AxisRole::Normal, where + ".normal");
}

inline Grid grid_tangential(const Json& j, const std::string& where) {
  if (!j.contains("tangential") || !j.at("tangential").is_array() || j.at("tangential").empty())
    throw InputError(where + ": grids.tangential must be a nonempty axis list");
  Grid g;
  for (const auto& ja : j.at("tangential"))
    g.push_back(axis_from_json(ja, AxisRole::Tangential, where + ".tangential"));
  return g;
}

inline Json grids_to_json(const Axis* normal, const Grid* tangential, const Axis* time) {
  Json j;
  if (normal) j["normal"] = axis_to_json(*normal);
  if (tangential) {
    Json arr = Json::array();
    for (const Axis& a : *tangential) arr.push_back(axis_to_json(a));
    j["tangential"] = arr;
  }
  if (time) j["time"] = axis_to_json(*time);
  return j;
}

inline VerifyCheck check_from_json(const Json& j, int index) {
  const std::string where = "checks[" + std::to_string(index) + "]";
  const std::string family = j.at("family").get<std::string>();
  const std::string id = j.value("id", family);
  const Json grids = j.value("grids", Json::object());

  if (family == "pardep") {
    PardepCheck c;
    c.id = id;
    c.t = j.at("t").get<double>();
    c.s0 = j.at("s0").get<double>();
    c.lambdas = lambda_from_json(j.at("lambda"), where + ".lambda");
    c.sp.gamma = j.value("gamma", 0.0);
    require_weight(c.sp.gamma, where);
    c.sp.p = j.value("p", 2.0);
    c.sp.q = j.value("q", 2.0);
    c.sp.datasets = j.value("datasets", 2);
    c.sp.band = j.value("band", 3);
    c.sp.seed = j.value("seed", std::uint64_t{0});
    c.sp.bound = j.value("bound", 50.0);
    c.sp.boundary_shift = j.value("boundary_shift", 0.0);
    c.sp.zero_f = j.value("zero_f", false);
    c.sp.normal = grid_normal(grids, where);
    c.sp.taxes = grid_tangential(grids, where);
    return c;
  }
  if (family == "embedding") {
    EmbeddingCheck c;
    c.id = id;
    c.s = j.at("s").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.s_target = j.at("s_target").get<double>();
    c.gamma_target = j.at("gamma_target").get<double>();
    require_weight(c.gamma, where);
    require_weight(c.gamma_target, where);
    c.sp.p = j.value("p", 2.0);
    c.sp.q_src = j.value("q", 2.0);
    c.sp.q_dst = j.value("q_target", 2.0);
    c.sp.count = j.value("count", 20);
    c.sp.band_lo = j.value("band_lo", 0);
    c.sp.band_hi = j.value("band_hi", 5);
    c.sp.seed = j.value("seed", std::uint64_t{0});
    c.sp.bound = j.value("bound", 20.0);
    c.sp.enforce_pre = j.value("enforce_pre", true);
    c.sp.normal = grid_normal(grids, where);
    c.sp.taxes = grid_tangential(grids, where);
    return c;
  }
  if (family == "trace") {
    TraceCheck c;
    c.id = id;
    c.beta = mi_parse(j.at("beta").get<std::string>());
    c.s = j.at("s").get<double>();
    c.rho = j.at("rho").get<double>();
    c.sp.p = j.value("p", 2.0);
    c.sp.q = j.value("q", 2.0);
    c.sp.gamma = j.value("gamma", 0.0);
    require_weight(c.sp.gamma, where);
    c.sp.count = j.value("count", 12);
    c.sp.band_lo = j.value("band_lo", 0);
    c.sp.band_hi = j.value("band_hi", 4);
    c.sp.seed = j.value("seed", std::uint64_t{0});
    c.sp.bound = j.value("bound", 30.0);
    c.sp.enforce_pre = j.value("enforce_pre", true);
    c.sp.target_shift = j.value("target_shift", 0.0);
    c.sp.normal = grid_normal(grids, where);
    c.sp.taxes = grid_tangential(grids, where);
    if (!grids.contains("time")) throw InputError(where + ": grids.time required");
    c.sp.taxes.push_back(axis_from_json(grids.at("time"), AxisRole::Time, where + ".time"));
    return c;
  }
  if (family == "intersection") {
    IntersectionCheck c;
    c.id = id;
    c.s = j.at("s").get<double>();
    c.rho = j.at("rho").get<double>();
    c.sp.p = j.value("p", 2.0);
    c.sp.q = j.value("q", 2.0);
    c.sp.count = j.value("count", 12);
    c.sp.band_lo = j.value("band_lo", 0);
    c.sp.band_hi = j.value("band_hi", 4);
    c.sp.seed = j.value("seed", std::uint64_t{0});
    c.sp.bound = j.value("bound", 20.0);
    c.sp.target_shift = j.value("target_shift", 0.0);
    c.sp.axes = grid_tangential(grids, where);
    if (!grids.contains("time")) throw InputError(where + ": grids.time required");
    c.sp.axes.push_back(axis_from_json(grids.at("time"), AxisRole::Time, where + ".time"));
    return c;
  }
  if (family == "kernel-mapping") {
    KernelMappingCheck c;
    c.id = id;
    c.sigma = j.at("sigma").get<double>();
    c.lambdas = lambda_from_json(j.at("lambda"), where + ".lambda");
    c.sp.p = j.value("p", 2.0);
    c.sp.q = j.value("q", 2.0);
    c.sp.gamma = j.value("gamma", 0.0);
    require_weight(c.sp.gamma, where);
    c.sp.count = j.value("count", 10);
    c.sp.band_lo = j.value("band_lo", 0);
    c.sp.band_hi = j.value("band_hi", 5);
    c.sp.seed = j.value("seed", std::uint64_t{0});
    c.sp.bound = j.value("bound", 30.0);
    c.sp.boundary_shift = j.value("boundary_shift", 0.0);
    c.sp.normal = grid_normal(grids, where);
    c.sp.taxes = grid_tangential(grids, where);
    return c;
  }
  if (family == "symbol-bound") {
    SymbolBoundCheck c;
    c.id = id;
    c.lambdas = lambda_from_json(j.at("lambda"), where + ".lambda");
    if (j.contains("alphas")) {
      for (const auto& s : j.at("alphas")) c.alphas.push_back(mi_parse(s.get<std::string>()));
    } else {
      const int amax = j.value("alpha_max", 2);
      c.alphas = mi_up_to_order(j.value("dim", 2), amax);
    }
    c.sp.xi_max = j.value("xi_max", 24.0);
    c.sp.xi_count = j.value("xi_count", 9);
    c.sp.fd_scale = j.value("fd_scale", 1e-4);
    c.sp.bound = j.value("bound", 100.0);
    return c;
  }
  throw InputError(where + ": unknown check family '" + family + "'");
}

inline Json check_to_json(const VerifyCheck& check) {
  Json j;
  if (const auto* c = std::get_if<PardepCheck>(&check)) {
    j["family"] = "pardep";
    j["id"] = c->id;
    j["t"] = c->t;
    j["s0"] = c->s0;
    j["lambda"] = lambda_to_json(c->lambdas);
    j["gamma"] = c->sp.gamma;
    j["p"] = c->sp.p;
    j["q"] = c->sp.q;
    j["datasets"] = c->sp.datasets;
    j["band"] = c->sp.band;
    j["seed"] = c->sp.seed;
    j["bound"] = c->sp.bound;
    j["boundary_shift"] = c->sp.boundary_shift;
    j["zero_f"] = c->sp.zero_f;
    j["grids"] = grids_to_json(&c->sp.normal, &c->sp.taxes, nullptr);
  } else if (const auto* c = std::get_if<EmbeddingCheck>(&check)) {
    j["family"] = "embedding";
    j["id"] = c->id;
    j["s"] = c->s;
    j["gamma"] = c->gamma;
    j["s_target"] = c->s_target;
    j["gamma_target"] = c->gamma_target;
    j["p"] = c->sp.p;
    j["q"] = c->sp.q_src;
    j["q_target"] = c->sp.q_dst;
    j["count"] = c->sp.count;
    j["band_lo"] = c->sp.band_lo;
    j["band_hi"] = c->sp.band_hi;
    j["seed"] = c->sp.seed;
    j["bound"] = c->sp.bound;
    j["enforce_pre"] = c->sp.enforce_pre;
    j["grids"] = grids_to_json(&c->sp.normal, &c->sp.taxes, nullptr);
  } else if (const auto* c = std::get_if<TraceCheck>(&check)) {
    j["family"] = "trace";
    j["id"] = c->id;
    j["beta"] = mi_format(c->beta);
    j["s"] = c->s;
    j["rho"] = c->rho;
    j["gamma"] = c->sp.gamma;
    j["p"] = c->sp.p;
    j["q"] = c->sp.q;
    j["count"] = c->sp.count;
    j["band_lo"] = c->sp.band_lo;
    j["band_hi"] = c->sp.band_hi;
    j["seed"] = c->sp.seed;
    j["bound"] = c->sp.bound;
    j["enforce_pre"] = c->sp.enforce_pre;
    j["target_shift"] = c->sp.target_shift;
    Grid tang(c->sp.taxes.begin(), c->sp.taxes.end() - 1);
    j["grids"] = grids_to_json(&c->sp.normal, &tang, &c->sp.taxes.back());
  } else if (const auto* c = std::get_if<IntersectionCheck>(&check)) {
    j["family"] = "intersection";
    j["id"] = c->id;
    j["s"] = c->s;
    j["rho"] = c->rho;
    j["p"] = c->sp.p;
    j["q"] = c->sp.q;
    j["count"] = c->sp.count;
    j["band_lo"] = c->sp.band_lo;
    j["band_hi"] = c->sp.band_hi;
    j["seed"] = c->sp.seed;
    j["bound"] = c->sp.bound;
    j["target_shift"] = c->sp.target_shift;
    Grid tang(c->sp.axes.begin(), c->sp.axes.end() - 1);
    j["grids"] = grids_to_json(nullptr, &tang, &c->sp.axes.back());
  } else if (const auto* c = std::get_if<KernelMappingCheck>(&check)) {
    j["family"] = "kernel-mapping";
    j["id"] = c->id;
    j["sigma"] = c->sigma;
    j["lambda"] = lambda_to_json(c->lambdas);
    j["gamma"] = c->sp.gamma;
    j["p"] = c->sp.p;
    j["q"] = c->sp.q;
    j["count"] = c->sp.count;
    j["band_lo"] = c->sp.band_lo;
    j["band_hi"] = c->sp.band_hi;
    j["seed"] = c->sp.seed;
    j["bound"] = c->sp.bound;
    j["boundary_shift"] = c->sp.boundary_shift;
    j["grids"] = grids_to_json(&c->sp.normal, &c->sp.taxes, nullptr);
  } else if (const auto* c = std::get_if<SymbolBoundCheck>(&check)) {
    j["family"] = "symbol-bound";
    j["id"] = c->id;
    j["lambda"] = lambda_to_json(c->lambdas);
    Json alphas = Json::array();
    for (const MultiIndex& a : c->alphas) alphas.push_back(mi_format(a));
    j["alphas"] = alphas;
    j["xi_max"] = c->sp.xi_max;
    j["xi_count"] = c->sp.xi_count;
    j["fd_scale"] = c->sp.fd_scale;
    j["bound"] = c->sp.bound;
  }
  return j;
}

}  // namespace cfg

// ---------------------------------------------------------------------------
// RunConfig
// ---------------------------------------------------------------------------

struct BandFieldSpec {
  int band = 3;
  std::uint64_t seed = 0;  // 0 = inherit the run seed
};

struct Tolerances {
  double gap_tol = 1e-10;
  double ls_tol = 1e-10;
  double ls_pass = 1e-6;            // check-ls verdict threshold on min SV
  double interior_residual = 0.0;   // solve gates; 0 disables
  double boundary_residual = 0.0;
};

struct RunConfig {
  std::string task;
  bool has_system = false;
  BVSystem system;
  bool has_normal = false;
  Axis normal;
  Grid tangential;
  bool has_time = false;
  Axis time;
  bool has_lambda = false;
  LambdaSpec lambdas;
  bool has_eta = false;
  double eta = 0.0;
  std::vector<std::vector<double>> xi;  // explicit xi' list (check-ls)
  std::vector<int> derivatives{0};      // normal-derivative orders (build-kernel)
  std::vector<BandFieldSpec> boundary_data;
  bool has_interior_data = false;
  BandFieldSpec interior_data;
  bool has_field = false;
  BandFieldSpec field;
  std::vector<NormSpec> norms;
  std::vector<VerifyCheck> checks;
  Tolerances tol;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = resolve from environment, then 1
  std::string out = "reports";
};

namespace cfg {

inline const std::set<std::string>& known_tasks() {
  static const std::set<std::string> tasks = {"check-ellipticity", "check-ls",   "build-kernel",
                                              "solve-elliptic",    "solve-parabolic", "norms",
                                              "verify"};
  return tasks;
}

inline BandFieldSpec band_field_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected {band, seed}");
  BandFieldSpec b;
  b.band = j.value("band", 3);
  b.seed = j.value("seed", std::uint64_t{0});
  if (b.band < 0) throw InputError(where + ": band must be >= 0");
  return b;
}

inline Json band_field_to_json(const BandFieldSpec& b) {
  Json j;
  j["band"] = b.band;
  j["seed"] = b.seed;
  return j;
}

}  // namespace cfg

inline RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) throw InputError("config: top level must be an object");
  RunConfig c;
  c.task = j.at("task").get<std::string>();
  if (!cfg::known_tasks().count(c.task)) throw InputError("config: unknown task '" + c.task + "'");

  if (j.contains("system")) {
    c.system = cfg::system_from_json(j.at("system"));
    c.has_system = true;
  }
  if (j.contains("grids")) {
    const Json& g = j.at("grids");
    if (g.contains("normal")) {
      c.normal = cfg::axis_from_json(g.at("normal"), AxisRole::Normal, "grids.normal");
      c.has_normal = true;
    }
    if (g.contains("tangential")) c.tangential = cfg::grid_tangential(g, "grids");
    if (g.contains("time")) {
      c.time = cfg::axis_from_json(g.at("time"), AxisRole::Time, "grids.time");
      c.has_time = true;
    }
  }
  if (j.contains("lambda")) {
    c.lambdas = cfg::lambda_from_json(j.at("lambda"), "lambda");
    c.has_lambda = true;
  }
  if (j.contains("eta")) {
    c.eta = j.at("eta").get<double>();
    c.has_eta = true;
  }
  if (j.contains("xi")) {
    for (const auto& row : j.at("xi")) c.xi.push_back(row.get<std::vector<double>>());
  }
  if (j.contains("derivatives")) {
    c.derivatives = j.at("derivatives").get<std::vector<int>>();
    for (int k : c.derivatives)
      if (k < 0 || k > 2) throw InputError("derivatives: orders must be in 0..2");
    if (c.derivatives.empty()) throw InputError("derivatives: empty list");
  }
  if (j.contains("data")) {
    const Json& d = j.at("data");
    if (d.contains("boundary"))
      for (const auto& b : d.at("boundary"))
        c.boundary_data.push_back(cfg::band_field_from_json(b, "data.boundary"));
    if (d.contains("interior")) {
      c.interior_data = cfg::band_field_from_json(d.at("interior"), "data.interior");
      c.has_interior_data = true;
    }
    if (d.contains("field")) {
      c.field = cfg::band_field_from_json(d.at("field"), "data.field");
      c.has_field = true;
    }
  }
  if (j.contains("norms")) {
    int i = 0;
    for (const auto& n : j.at("norms"))
      c.norms.push_back(cfg::norm_from_json(n, "norms[" + std::to_string(i++) + "]"));
  }
  if (j.contains("checks")) {
    std::set<std::string> ids;
    int i = 0;
    for (const auto& jc : j.at("checks")) {
      VerifyCheck ck = cfg::check_from_json(jc, i++);
      if (!ids.insert(check_id(ck)).second)
        throw InputError("checks: duplicate id '" + check_id(ck) + "'");
      c.checks.push_back(std::move(ck));
    }
  }
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    c.tol.gap_tol = t.value("gap_tol", c.tol.gap_tol);
    c.tol.ls_tol = t.value("ls_tol", c.tol.ls_tol);
    c.tol.ls_pass = t.value("ls_pass", c.tol.ls_pass);
    c.tol.interior_residual = t.value("interior_residual", c.tol.interior_residual);
    c.tol.boundary_residual = t.value("boundary_residual", c.tol.boundary_residual);
    if (!(c.tol.gap_tol > 0.0) || !(c.tol.ls_tol > 0.0) || !(c.tol.ls_pass > 0.0))
      throw InputError("tolerances: must be positive");
    if (c.tol.interior_residual < 0.0 || c.tol.boundary_residual < 0.0)
      throw InputError("tolerances: residual gates must be >= 0");
  }
  c.seed = j.value("seed", std::uint64_t{1});
  c.threads = j.value("threads", 0);
  if (c.threads < 0) throw InputError("threads: must be >= 0");
  c.out = j.value("out", std::string("reports"));

  // Task-specific required fields.
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw InputError("config: task '" + c.task + "' requires " + what);
  };
  if (c.task == "check-ellipticity") {
    need(c.has_system, "a system");
  } else if (c.task == "check-ls") {
    need(c.has_system, "a system");
    need(!c.xi.empty(), "an xi list");
    need(c.has_lambda, "a lambda grid");
  } else if (c.task == "build-kernel") {
    need(c.has_system, "a system");
    need(c.has_normal, "grids.normal");
    need(!c.tangential.empty(), "grids.tangential");
    need(c.has_lambda, "a lambda grid");
  } else if (c.task == "solve-elliptic") {
    need(c.has_system, "a system");
    need(c.has_normal, "grids.normal");
    need(!c.tangential.empty(), "grids.tangential");
    need(c.has_lambda, "a lambda value");
    need(!c.boundary_data.empty(), "data.boundary");
  } else if (c.task == "solve-parabolic") {
    need(c.has_system, "a system");
    need(c.has_normal, "grids.normal");
    need(!c.tangential.empty(), "grids.tangential");
    need(c.has_time, "grids.time");
    need(c.has_eta, "eta");
    need(!c.boundary_data.empty(), "data.boundary");
  } else if (c.task == "norms") {
    need(!c.tangential.empty(), "grids.tangential");
    need(c.has_field, "data.field");
    need(!c.norms.empty(), "norm specs");
  } else if (c.task == "verify") {
    need(!c.checks.empty(), "a checks list");
    bool needs_system = false;
    for (const VerifyCheck& ck : c.checks)
      if (std::holds_alternative<PardepCheck>(ck) || std::holds_alternative<KernelMappingCheck>(ck) ||
          std::holds_alternative<SymbolBoundCheck>(ck))
        needs_system = true;
    if (needs_system) need(c.has_system, "a system (pardep / kernel-mapping / symbol-bound)");
  }
  return c;
}

inline Json run_config_to_json(const RunConfig& c) {
  Json j;
  j["task"] = c.task;
  if (c.has_system) j["system"] = cfg::system_to_json(c.system);
  if (c.has_normal || !c.tangential.empty() || c.has_time)
    j["grids"] = cfg::grids_to_json(c.has_normal ? &c.normal : nullptr,
                                    c.tangential.empty() ? nullptr : &c.tangential,
                                    c.has_time ? &c.time : nullptr);
  if (c.has_lambda) j["lambda"] = cfg::lambda_to_json(c.lambdas);
  if (c.has_eta) j["eta"] = c.eta;
  if (!c.xi.empty()) j["xi"] = c.xi;
  if (!(c.derivatives.size() == 1 && c.derivatives[0] == 0)) j["derivatives"] = c.derivatives;
  if (!c.boundary_data.empty() || c.has_interior_data || c.has_field) {
    Json d;
    if (!c.boundary_data.empty()) {
      Json arr = Json::array();
      for (const BandFieldSpec& b : c.boundary_data) arr.push_back(cfg::band_field_to_json(b));
      d["boundary"] = arr;
    }
    if (c.has_interior_data) d["interior"] = cfg::band_field_to_json(c.interior_data);
    if (c.has_field) d["field"] = cfg::band_field_to_json(c.field);
    j["data"] = d;
  }
  if (!c.norms.empty()) {
    Json arr = Json::array();
    for (const NormSpec& n : c.norms) arr.push_back(cfg::norm_to_json(n));
    j["norms"] = arr;
  }
  if (!c.checks.empty()) {
    Json arr = Json::array();
    for (const VerifyCheck& ck : c.checks) arr.push_back(cfg::check_to_json(ck));
    j["checks"] = arr;
  }
  {
    Json t;
    t["gap_tol"] = c.tol.gap_tol;
    t["ls_tol"] = c.tol.ls_tol;
    t["ls_pass"] = c.tol.ls_pass;
    t["interior_residual"] = c.tol.interior_residual;
    t["boundary_residual"] = c.tol.boundary_residual;
    j["tolerances"] = t;
  }
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["out"] = c.out;
  return j;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open config: " + path.string());
  Json j;
  try {
    j = Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config parse error in " + path.string() + ": " + e.what());
  }
  try {
    return parse_run_config(j);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config error in " + path.string() + ": " + e.what());
  }
}

}  // namespace hslab
