#pragma once

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "hslab/config.hpp"
#include "hslab/ellipticity.hpp"
#include "hslab/io.hpp"
#include "hslab/kernel.hpp"
#include "hslab/lopatinskii.hpp"
#include "hslab/solvers.hpp"
#include "hslab/verify.hpp"

namespace hslab {

// Exit contract: 0 pass, 2 verification failure, 3 input error, 4 numerical
// guard tripped. Everything the tool prints goes through the log stream.
enum ExitCode : int { kPass = 0, kVerifyFail = 2, kInputError = 3, kGuardTripped = 4 };

struct RunOverrides {
  std::string out;
  bool has_seed = false;
  std::uint64_t seed = 1;
  int threads = 0;
};

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HSLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 1;
}

namespace runner {

namespace fs = std::filesystem;

inline std::string join17(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt17(v[i]);
  }
  return s;
}

inline void write_json_file(const fs::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

inline int run_check_ellipticity(const RunConfig& c, std::ostream& log) {
  EllipticityResult r = ellipticity_angle(c.system);
  Json j;
  j["elliptic"] = r.elliptic;
  j["angle"] = r.angle;
  j["worst_xi"] = r.worst_xi;
  j["grid_size"] = r.grid_size;
  j["reason"] = r.reason;
  write_json_file(fs::path(c.out) / "ellipticity.json", j);
  log << "ellipticity: " << (r.elliptic ? "pass" : "FAIL") << " angle=" << r.angle;
  if (!r.elliptic) log << " (" << r.reason << ")";
  log << "\n";
  return r.elliptic ? kPass : kVerifyFail;
}

inline int run_check_ls(const RunConfig& c, std::ostream& log) {
  const std::vector<Complex> lambdas = c.lambdas.values();
  CsvTable t;
  t.header = {"xi", "lambda_re", "lambda_im", "min_sv", "gap"};
  double worst = std::numeric_limits<double>::infinity();
  Json failures = Json::array();
  for (const std::vector<double>& xi : c.xi) {
    if (static_cast<int>(xi.size()) != c.system.dim - 1)
      throw InputError("check-ls: xi entries must have dim-1 components");
    for (Complex lam : lambdas) {
      LSResult r = ls_condition(c.system, FrequencyPoint{xi, lam}, c.tol.gap_tol);
      t.rows.push_back({join17(xi), fmt17(lam.real()), fmt17(lam.imag()), fmt17(r.value),
                        fmt17(r.gap)});
      worst = std::min(worst, r.value);
      if (r.value < c.tol.ls_pass) {
        Json f;
        f["xi"] = xi;
        f["lambda"] = cfg::complex_to_json(lam);
        f["min_sv"] = r.value;
        failures.push_back(f);
        log << "ls failure: " << detail::format_point(xi, lam) << " min_sv=" << r.value << "\n";
      }
    }
  }
  write_csv(fs::path(c.out) / "ls_scan.csv", t);
  const bool pass = failures.empty();
  Json j;
  j["min_sv"] = worst;
  j["threshold"] = c.tol.ls_pass;
  j["verdict"] = pass ? "pass" : "fail";
  j["failures"] = failures;
  write_json_file(fs::path(c.out) / "ls_summary.json", j);
  log << "ls scan: " << (pass ? "pass" : "FAIL") << " min_sv=" << worst << " over "
      << t.rows.size() << " points\n";
  return pass ? kPass : kVerifyFail;
}

// Enumerate the tangential frequency lattice of a grid (row-major).
inline std::vector<std::vector<double>> lattice_frequencies(const Grid& taxes) {
  std::vector<std::vector<double>> out;
  long total = 1;
  for (const Axis& a : taxes) total *= a.count;
  out.reserve(total);
  for (long idx = 0; idx < total; ++idx) {
    std::vector<double> xi(taxes.size());
    long rem = idx;
    for (int a = static_cast<int>(taxes.size()) - 1; a >= 0; --a) {
      xi[a] = taxes[a].freq(static_cast<int>(rem % taxes[a].count));
      rem /= taxes[a].count;
    }
    out.push_back(std::move(xi));
  }
  return out;
}

inline int run_build_kernel(const RunConfig& c, std::ostream& log) {
  const std::vector<Complex> lambdas = c.lambdas.values();
  const std::vector<std::vector<double>> xis =
      c.xi.empty() ? lattice_frequencies(c.tangential) : c.xi;
  const int N = c.system.state_dim;
  const int m = c.system.half_order();
  KernelOptions opt{c.tol.gap_tol, c.tol.ls_tol};

  CsvTable t;
  t.header = {"lambda_re", "lambda_im", "xi", "j", "k", "x1", "row", "col", "re", "im"};
  for (Complex lam : lambdas) {
    for (const std::vector<double>& xi : xis) {
      if (static_cast<int>(xi.size()) != c.system.dim - 1)
        throw InputError("build-kernel: xi entries must have dim-1 components");
      PoissonKernel ker = build_poisson_kernel(c.system, FrequencyPoint{xi, lam}, opt);
      for (int j = 0; j < m; ++j) {
        for (int k : c.derivatives) {
          for (int i1 = 0; i1 < c.normal.count; ++i1) {
            const double x1 = c.normal.coord(i1);
            Matrix K = ker.eval(j, x1, k);
            for (int r = 0; r < N; ++r)
              for (int col = 0; col < N; ++col)
                t.rows.push_back({fmt17(lam.real()), fmt17(lam.imag()), join17(xi),
                                  std::to_string(j), std::to_string(k), fmt17(x1),
                                  std::to_string(r), std::to_string(col),
                                  fmt17(K(r, col).real()), fmt17(K(r, col).imag())});
          }
        }
      }
    }
  }
  write_csv(fs::path(c.out) / "kernel.csv", t);
  log << "kernel table: " << t.rows.size() << " rows (" << lambdas.size() << " lambda x "
      << xis.size() << " xi x " << c.normal.count << " x1)\n";
  return kPass;
}

// One boundary field per operator: a single data spec is replicated with a
// seed offset, otherwise the list must match the operator count. A zero seed
// in a spec inherits the run seed.
inline std::vector<DiscreteField> boundary_fields(const RunConfig& c, const Grid& taxes,
                                                  const Anisotropy& an) {
  const int m = c.system.half_order();
  std::vector<DiscreteField> g;
  for (int j = 0; j < m; ++j) {
    BandFieldSpec spec;
    if (static_cast<int>(c.boundary_data.size()) == m) {
      spec = c.boundary_data[j];
      if (spec.seed == 0) spec.seed = c.seed;
    } else if (c.boundary_data.size() == 1) {
      spec = c.boundary_data[0];
      if (spec.seed == 0) spec.seed = c.seed;
      spec.seed += static_cast<std::uint64_t>(j);
    } else {
      throw InputError("data.boundary: need one spec per boundary operator (or a single one)");
    }
    g.push_back(random_band_field(taxes, c.system.state_dim, an, spec.band, spec.seed));
  }
  return g;
}

inline int finish_solve(const RunConfig& c, const SolveReport& rep, std::ostream& log) {
  write_field((fs::path(c.out) / "solution").string(), rep.solution);
  Json j;
  j["lambda"] = cfg::complex_to_json(rep.lambda);
  j["parabolic"] = rep.parabolic;
  j["interior_residual"] = rep.interior_residual;
  j["boundary_residuals"] = rep.boundary_residuals;
  write_json_file(fs::path(c.out) / "residuals.json", j);
  bool pass = true;
  if (c.tol.interior_residual > 0.0 && rep.interior_residual > c.tol.interior_residual)
    pass = false;
  if (c.tol.boundary_residual > 0.0)
    for (double b : rep.boundary_residuals)
      if (b > c.tol.boundary_residual) pass = false;
  log << "solve: interior_residual=" << rep.interior_residual << " boundary=[";
  for (size_t i = 0; i < rep.boundary_residuals.size(); ++i)
    log << (i ? "," : "") << rep.boundary_residuals[i];
  log << "] " << (pass ? "pass" : "FAIL (residual gate)") << "\n";
  return pass ? kPass : kVerifyFail;
}

inline int run_solve_elliptic(const RunConfig& c, int threads, std::ostream& log) {
  const std::vector<Complex> lambdas = c.lambdas.values();
  if (lambdas.size() != 1) throw InputError("solve-elliptic: exactly one lambda value");
  const Complex lam = lambdas[0];
  KernelOptions opt{c.tol.gap_tol, c.tol.ls_tol};
  Anisotropy an = Anisotropy::isotropic(static_cast<int>(c.tangential.size()));
  std::vector<DiscreteField> g = boundary_fields(c, c.tangential, an);
  SolveReport rep;
  if (c.has_interior_data) {
    Anisotropy fan = Anisotropy::isotropic(static_cast<int>(c.tangential.size()) + 1);
    const std::uint64_t fseed = c.interior_data.seed != 0 ? c.interior_data.seed : c.seed;
    DiscreteField f = random_halfspace_field(c.normal, c.tangential, c.system.state_dim, fan,
                                             c.interior_data.band, fseed);
    rep = halfspace_full_solve(c.system, lam, f, g, opt, threads);
  } else {
    rep = halfspace_bvp_solve(c.system, lam, g, c.normal, opt, threads);
  }
  return finish_solve(c, rep, log);
}

inline int run_solve_parabolic(const RunConfig& c, int threads, std::ostream& log) {
  if (c.has_interior_data)
    throw InputError("solve-parabolic: interior data is not supported (boundary-driven runs)");
  Grid taxes = c.tangential;
  taxes.push_back(c.time);
  Anisotropy an;
  an.dims = {static_cast<int>(c.tangential.size()), 1};
  an.weights = {1.0, static_cast<double>(c.system.order)};
  std::vector<DiscreteField> g = boundary_fields(c, taxes, an);
  KernelOptions opt{c.tol.gap_tol, c.tol.ls_tol};
  SolveReport rep = parabolic_solve(c.system, c.eta, g, c.normal, opt, threads);
  return finish_solve(c, rep, log);
}

inline int run_norms(const RunConfig& c, std::ostream& log) {
  Grid taxes = c.tangential;
  if (c.has_time) taxes.push_back(c.time);
  const int comps = c.has_system ? c.system.state_dim : 1;
  const std::uint64_t seed = c.field.seed != 0 ? c.field.seed : c.seed;
  DiscreteField f;
  if (c.has_normal) {
    Anisotropy an = Anisotropy::isotropic(static_cast<int>(taxes.size()) + 1);
    f = random_halfspace_field(c.normal, taxes, comps, an, c.field.band, seed);
  } else {
    Anisotropy an = Anisotropy::isotropic(static_cast<int>(taxes.size()));
    f = random_band_field(taxes, comps, an, c.field.band, seed);
  }
  CsvTable t;
  t.header = {"kind", "s", "p", "q", "gamma", "value"};
  for (const NormSpec& spec : c.norms) {
    LPFamily fam = build_lp_family(spec.aniso, f.axes);
    const double v = space_norm(f, spec, fam);
    std::string ps;
    for (size_t i = 0; i < spec.p.size(); ++i)
      ps += (i ? "," : "") + std::string(std::isinf(spec.p[i]) ? "inf" : fmt17(spec.p[i]));
    t.rows.push_back({cfg::norm_kind_name(spec.kind), fmt17(spec.s), ps,
                      std::isinf(spec.q) ? "inf" : fmt17(spec.q), fmt17(spec.gamma), fmt17(v)});
    log << "norm " << cfg::norm_kind_name(spec.kind) << " s=" << spec.s << ": " << v << "\n";
  }
  write_csv(fs::path(c.out) / "norms.csv", t);
  return kPass;
}

inline RatioReport run_one_check(const RunConfig& c, const VerifyCheck& check, int threads) {
  auto seeded = [&](std::uint64_t s) { return s != 0 ? s : c.seed; };
  if (const auto* ck = std::get_if<PardepCheck>(&check)) {
    PardepSpecs sp = ck->sp;
    sp.seed = seeded(sp.seed);
    sp.threads = threads;
    RatioReport rep = check_pardep_estimate(c.system, ck->lambdas.values(), ck->t, ck->s0, sp);
    rep.claim = ck->id;
    return rep;
  }
  if (const auto* ck = std::get_if<EmbeddingCheck>(&check)) {
    EmbeddingSpecs sp = ck->sp;
    sp.seed = seeded(sp.seed);
    RatioReport rep = check_embedding(ck->s, ck->gamma, ck->s_target, ck->gamma_target, sp);
    rep.claim = ck->id;
    return rep;
  }
  if (const auto* ck = std::get_if<TraceCheck>(&check)) {
    TraceSpecs sp = ck->sp;
    sp.seed = seeded(sp.seed);
    RatioReport rep = check_trace_estimate(ck->beta, ck->s, ck->rho, sp);
    rep.claim = ck->id;
    return rep;
  }
  if (const auto* ck = std::get_if<IntersectionCheck>(&check)) {
    IntersectionSpecs sp = ck->sp;
    sp.seed = seeded(sp.seed);
    RatioReport rep = check_intersection_rep(ck->s, ck->rho, sp);
    rep.claim = ck->id;
    return rep;
  }
  if (const auto* ck = std::get_if<KernelMappingCheck>(&check)) {
    KernelMappingSpecs sp = ck->sp;
    sp.seed = seeded(sp.seed);
    sp.threads = threads;
    RatioReport rep = check_kernel_mapping(c.system, ck->lambdas.values(), ck->sigma, sp);
    rep.claim = ck->id;
    return rep;
  }
  const auto& ck = std::get<SymbolBoundCheck>(check);
  RatioReport rep = check_symbol_bound(c.system, ck.lambdas.values(), ck.alphas, ck.sp);
  rep.claim = ck.id;
  return rep;
}

inline int run_verify(const RunConfig& c, int threads, std::ostream& log) {
  Json reports = Json::array();
  bool all_pass = true;
  for (const VerifyCheck& check : c.checks) {
    RatioReport rep = run_one_check(c, check, threads);
    write_ratio_report_csv(c.out, rep);
    reports.push_back(ratio_report_json(rep));
    const bool ok = rep.pass();
    all_pass = all_pass && ok;
    log << rep.claim << ": " << (ok ? "pass" : "FAIL");
    if (!rep.samples.empty())
      log << " ratio in [" << rep.min_ratio() << ", " << rep.max_ratio() << "] spread "
          << rep.spread() << " bound " << rep.bound;
    else
      log << " (no samples)";
    if (rep.skipped > 0) log << " skipped " << rep.skipped;
    log << "\n";
  }
  Json j;
  j["verdict"] = all_pass ? "pass" : "fail";
  j["reports"] = reports;
  write_json_file(fs::path(c.out) / "verify_summary.json", j);
  return all_pass ? kPass : kVerifyFail;
}

}  // namespace runner

inline int run_config(RunConfig c, const RunOverrides& ov, std::ostream& log) {
  if (!ov.out.empty()) c.out = ov.out;
  if (ov.has_seed) c.seed = ov.seed;
  if (ov.threads > 0) c.threads = ov.threads;
  const int threads = resolve_threads(c.threads);
  std::filesystem::create_directories(c.out);
  runner::write_json_file(std::filesystem::path(c.out) / "config_used.json",
                          run_config_to_json(c));
  if (c.task == "check-ellipticity") return runner::run_check_ellipticity(c, log);
  if (c.task == "check-ls") return runner::run_check_ls(c, log);
  if (c.task == "build-kernel") return runner::run_build_kernel(c, log);
  if (c.task == "solve-elliptic") return runner::run_solve_elliptic(c, threads, log);
  if (c.task == "solve-parabolic") return runner::run_solve_parabolic(c, threads, log);
  if (c.task == "norms") return runner::run_norms(c, log);
  if (c.task == "verify") return runner::run_verify(c, threads, log);
  throw InputError("unknown task '" + c.task + "'");
}

inline int run_config_file(const std::string& path, const RunOverrides& ov, std::ostream& log,
                           const std::string& expected_task = "") {
  try {
    RunConfig c = load_run_config(path);
    if (!expected_task.empty() && c.task != expected_task)
      throw InputError("task mismatch: command '" + expected_task + "' vs config '" + c.task +
                       "'");
    return run_config(std::move(c), ov, log);
  } catch (const InputError& e) {
    log << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const GuardError& e) {
    log << "numerical guard: " << e.what() << "\n";
    return kGuardTripped;
  }
}

}  // namespace hslab
