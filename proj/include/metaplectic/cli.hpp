#pragma once

// Command implementations behind the CLI front end. JSON goes to `out`,
// diagnostics to `err`; exit codes are part of the documented interface:
//   0 success, 1 selfcheck/internal failure, 2 not symplectic, 3 parse error,
//   4 not free, 5 verdict holds (no witness), 6 grid errors.

#include <optional>

#include "metaplectic/io.hpp"
#include "metaplectic/selfcheck.hpp"

namespace metaplectic {

struct CliConfig {
  std::string command;
  std::optional<std::string> catalog_name;
  std::optional<std::string> input_path;
  double tol = 1e-8;
  int grid_n = 256;
  std::optional<double> tau;
  int d = 1;
  double eps = 1e-3;
  std::uint64_t seed = 0;
  std::optional<std::string> out_path;
  std::string mode = "pre-iwasawa";
  bool quadratic = false;
  std::string f_shape = "gauss";
  std::string g_shape = "gauss";
  std::string f0_shape = "rect";  // witness seeds need compact support
  std::string g0_shape = "rect";
};

inline int exit_code_for(Err code) {
  switch (code) {
    case Err::NotSymplectic: return 2;
    case Err::ParseError: return 3;
    case Err::UnknownName: return 3;
    case Err::NotFree: return 4;
    case Err::VerdictHolds: return 5;
    case Err::GridMismatch:
    case Err::NotCriticallySampled:
    case Err::BadK:
    case Err::BadParam: return 6;
    default: return 1;
  }
}

namespace detail_cli {

inline void validate(const CliConfig& cfg) {
  if (!(cfg.tol > 0)) fail(Err::BadParam, "tol must be positive");
  if (cfg.grid_n < 2 || (cfg.grid_n & (cfg.grid_n - 1)) != 0)
    fail(Err::BadParam, "grid size must be a power of two");
  if (!(cfg.eps > 0 && cfg.eps < 1)) fail(Err::BadParam, "eps must lie in (0,1)");
}

inline SymplecticMatrix load_matrix(const CliConfig& cfg) {
  if (cfg.catalog_name) {
    Catalog c = catalog_from_name(*cfg.catalog_name);
    CatalogParams params;
    params.tau = cfg.tau ? *cfg.tau : 0.5;
    return catalog(c, cfg.d, params);
  }
  if (!cfg.input_path) fail(Err::ParseError, "need --catalog or --input");
  std::ifstream in(*cfg.input_path);
  if (!in) fail(Err::ParseError, "cannot open '" + *cfg.input_path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Err::ParseError, e.what());
  }
  return SymplecticMatrix(real_matrix_from_json(j));
}

inline GridFunction load_shape(const std::string& name, const GridSpec& spec) {
  Shape s = shape_from_name(name);
  ShapeParams params;
  if (s == Shape::Hermite && name.size() > 7) {
    try {
      params.k = std::stoi(name.substr(7));
    } catch (const std::exception&) {
      fail(Err::UnknownName, "bad hermite order in '" + name + "'");
    }
  }
  return sample(s, spec, params);
}

}  // namespace detail_cli

inline int run_decide(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  detail_cli::validate(cfg);
  SymplecticMatrix a = detail_cli::load_matrix(cfg);
  Json report{{"sesquilinear", verdict_to_json(decide_sesquilinear(a, cfg.tol))},
              {"quadratic", verdict_to_json(decide_quadratic(a, cfg.tol))}};
  out << report.dump(2) << "\n";
  return 0;
}

inline int run_decompose(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  detail_cli::validate(cfg);
  SymplecticMatrix a = detail_cli::load_matrix(cfg);
  Json report;
  if (cfg.mode == "pre-iwasawa") {
    PreIwasawaFactors pi = pre_iwasawa(a);
    report["q"] = matrix_to_json(pi.q, a.half_dim())["entries"];
    report["l"] = matrix_to_json(pi.l, a.half_dim())["entries"];
    report["u"] = complex_matrix_to_json(pi.u);
    report["reconstruction_residual"] = rel_frob(pi.reconstruct().matrix(), a.matrix());
  } else if (cfg.mode == "free") {
    try {
      FreeFactors ff = free_factorize(a);
      report["q_out"] = matrix_to_json(ff.q_out, a.half_dim())["entries"];
      report["b"] = matrix_to_json(ff.b, a.half_dim())["entries"];
      report["p"] = matrix_to_json(ff.p, a.half_dim())["entries"];
      report["reconstruction_residual"] = rel_frob(ff.reconstruct().matrix(), a.matrix());
    } catch (const Error& e) {
      if (e.code() == Err::NotFree)
        err << e.what() << " (hint: the tau-rotation path handles singular B)\n";
      throw;
    }
  } else if (cfg.mode == "joint-svd") {
    ComplexMatrix u = pre_iwasawa(a).u;
    JointSvd js = joint_svd(u);
    report["w"] = matrix_to_json(js.w, static_cast<int>(js.w.rows()) / 2)["entries"];
    Json sig = Json::array();
    for (int k = 0; k < js.sigma.size(); ++k)
      sig.push_back(Json{{"re", js.sigma(k).real()}, {"im", js.sigma(k).imag()}});
    report["sigma"] = std::move(sig);
    report["v"] = matrix_to_json(js.v, static_cast<int>(js.v.rows()) / 2)["entries"];
    report["reconstruction_residual"] = (js.reconstruct() - u).norm() / u.norm();
  } else {
    fail(Err::BadParam, "unknown mode '" + cfg.mode + "'");
  }
  out << report.dump(2) << "\n";
  return 0;
}

inline int run_catalog(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  detail_cli::validate(cfg);
  if (!cfg.catalog_name) fail(Err::ParseError, "catalog command needs --catalog NAME");
  SymplecticMatrix a = detail_cli::load_matrix(cfg);
  out << matrix_to_json(a).dump(2) << "\n";
  return 0;
}

inline int run_wigner(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  detail_cli::validate(cfg);
  SymplecticMatrix a = detail_cli::load_matrix(cfg);
  if (a.half_dim() != 2) fail(Err::BadParam, "wigner output is CSV, which needs d = 1");
  GridSpec spec = critical_grid(1, cfg.grid_n);
  GridFunction f = detail_cli::load_shape(cfg.f_shape, spec);
  GridFunction g = detail_cli::load_shape(cfg.g_shape, spec);
  GridFunction w = wigner(a, f, g);
  if (cfg.out_path) {
    write_grid(w, *cfg.out_path);
    err << "wrote " << *cfg.out_path << "\n";
  }
  out << support_report_to_json(support_report(w, cfg.eps)).dump(2) << "\n";
  return 0;
}

inline int run_witness(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  detail_cli::validate(cfg);
  SymplecticMatrix a = detail_cli::load_matrix(cfg);
  if (a.half_dim() != 2) fail(Err::BadParam, "witness output is CSV, which needs d = 1");
  VerdictKind mode = cfg.quadratic ? VerdictKind::Quadratic : VerdictKind::Sesquilinear;
  WitnessRecipe recipe = witness_recipe(a, mode, cfg.tol);
  GridSpec spec = critical_grid(1, cfg.grid_n);
  GridFunction f0 = detail_cli::load_shape(cfg.f0_shape, spec);
  GridFunction g0 = detail_cli::load_shape(cfg.g0_shape, spec);
  WitnessBuild wb = witness_build(recipe, f0, g0);
  if (cfg.out_path) {
    write_grid(wb.w, *cfg.out_path);
    err << "wrote " << *cfg.out_path << "\n";
  }
  Json report{{"recipe", witness_recipe_to_json(recipe)},
              {"support", support_report_to_json(support_report(wb.w, cfg.eps))}};
  out << report.dump(2) << "\n";
  return 0;
}

inline int run_selfcheck_cmd(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  detail_cli::validate(cfg);
  std::vector<CheckResult> results = run_selfcheck(cfg.seed);
  bool all = true;
  for (const CheckResult& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << "\n";
    all = all && r.pass;
  }
  out << (all ? "selfcheck: all passed\n" : "selfcheck: FAILURES\n");
  return all ? 0 : 1;
}

inline int run_command(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "decide") return run_decide(cfg, out, err);
    if (cfg.command == "decompose") return run_decompose(cfg, out, err);
    if (cfg.command == "catalog") return run_catalog(cfg, out, err);
    if (cfg.command == "wigner") return run_wigner(cfg, out, err);
    if (cfg.command == "witness") return run_witness(cfg, out, err);
    if (cfg.command == "selfcheck") return run_selfcheck_cmd(cfg, out, err);
    err << "unknown command '" << cfg.command << "'\n";
    return 1;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
}

}  // namespace metaplectic
