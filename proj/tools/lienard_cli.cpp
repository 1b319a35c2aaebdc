#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lienard/design.hpp"
#include "lienard/errors.hpp"
#include "lienard/melnikov.hpp"
#include "lienard/oracle.hpp"
#include "lienard/presets.hpp"
#include "lienard/roots.hpp"
#include "lienard/serialize.hpp"
#include "lienard/simulator.hpp"
#include "lienard/tolerances.hpp"
#include "lienard/verify.hpp"

using namespace lienard;

namespace {

struct Globals {
  std::string config_path;
  std::string out_dir;
  std::string precision = "double";
  std::uint64_t seed = 1;
  json config = json::object();
  Tolerances tol;
};

struct Params {
  std::string system;
  std::vector<double> h_grid;
  std::string which = "auto";
  std::optional<double> lambda, eps;
  std::optional<double> r0;
  double r_lo = 0.5, r_hi = 5.0;
  int grid = 100;
  std::string kase = "Y";
  int m = 3, n = 3;
  std::vector<double> targets;
  bool simulate = false;
};

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
  throw Error(ErrorKind::InvalidInput, "config field '" + field + "': " + msg);
}

template <class T>
void from_config(const json& cfg, const char* key, T& dst) {
  if (!cfg.contains(key)) return;
  try {
    dst = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(key, e.what());
  }
}

template <class T>
void from_config(const json& cfg, const char* key, std::optional<T>& dst) {
  if (!cfg.contains(key)) return;
  try {
    dst = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(key, e.what());
  }
}

// Config file values are defaults; explicit command-line flags win.
void merge_config(const json& cfg, Params& p, const CLI::App& sub) {
  auto unset = [&](const char* flag) {
    const CLI::Option* opt = sub.get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };
  if (unset("--h-grid")) from_config(cfg, "h_grid", p.h_grid);
  if (unset("--which")) from_config(cfg, "which", p.which);
  if (unset("--lambda")) from_config(cfg, "lambda", p.lambda);
  if (unset("--eps")) from_config(cfg, "eps", p.eps);
  if (unset("--r0")) from_config(cfg, "r0", p.r0);
  if (unset("--r-lo")) from_config(cfg, "r_lo", p.r_lo);
  if (unset("--r-hi")) from_config(cfg, "r_hi", p.r_hi);
  if (unset("--grid")) from_config(cfg, "grid", p.grid);
  if (unset("--case")) from_config(cfg, "case", p.kase);
  if (unset("--m")) from_config(cfg, "m", p.m);
  if (unset("--n")) from_config(cfg, "n", p.n);
  if (unset("--targets")) from_config(cfg, "targets", p.targets);
  if (unset("--simulate")) from_config(cfg, "simulate", p.simulate);
}

LienardSystem load_system(const Globals& g, const Params& p) {
  LienardSystem sys;
  if (!p.system.empty()) {
    sys = resolve_system(p.system);
  } else if (g.config.contains("system")) {
    const json& s = g.config.at("system");
    try {
      sys = s.is_string() ? resolve_system(s.get<std::string>()) : system_from_json(s);
    } catch (const Error& e) {
      config_error("system", e.what());
    }
  } else {
    throw Error(ErrorKind::InvalidInput, "no system given (use --system or a config 'system' field)");
  }
  if (p.lambda) sys.lambda = *p.lambda;
  if (p.eps) sys.eps = *p.eps;
  return sys;
}

Precision parse_precision(const std::string& s) {
  if (s == "double") return Precision::Double;
  if (s == "long-double") return Precision::LongDouble;
  throw Error(ErrorKind::InvalidInput, "--precision must be 'double' or 'long-double', got '" + s + "'");
}

void emit(const Globals& g, const std::string& name, const std::string& content) {
  if (g.out_dir.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::create_directories(g.out_dir);
  const auto path = std::filesystem::path(g.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path.string() + "'");
  out << content;
  std::cerr << "wrote " << path.string() << '\n';
}

std::vector<double> default_grid(const std::vector<double>& grid) {
  return grid.empty() ? std::vector<double>{0.5, 1.0, 2.0, 3.0} : grid;
}

json cycle_json(const CycleReport& c) {
  return json{{"section_coord", c.section_coord},     {"h_star", c.h_star},
              {"radius", c.radius},                   {"residual", c.residual},
              {"stability_slope", c.stability_slope}, {"stable", c.stable},
              {"side_sequence", c.side_sequence}};
}

json roots_json(const RootReport& r) {
  json arr = json::array();
  for (const auto& x : r.roots)
    arr.push_back({{"s_lo", x.s_lo}, {"s_hi", x.s_hi}, {"s_mid", x.s_mid}, {"h_mid", x.h_mid},
                   {"certificate", to_string(x.certificate)}});
  json j{{"roots", arr}, {"descartes_bound", r.descartes_bound}, {"certified_count", r.certified_count()}};
  if (r.theorem_bound) j["theorem_bound"] = *r.theorem_bound;
  return j;
}

int cmd_melnikov(const Globals& g, const Params& p) {
  const LienardSystem sys = load_system(g, p);
  const Precision prec = parse_precision(g.precision);
  const MelnikovExpansion e = assemble(sys);
  json doc{{"system", to_json(sys)},
           {"M0", to_json(e.M0)},
           {"M0_text", e.M0.to_string()},
           {"zero_bound", {{"M0", zero_bound(sys.kase, sys.m, sys.n, Which::M0)},
                           {"M1", zero_bound(sys.kase, sys.m, sys.n, Which::M1)}}}};
  if (e.M1) {
    doc["M1"] = to_json(*e.M1);
    doc["M1_text"] = e.M1->to_string();
  } else {
    doc["M1"] = nullptr;
  }
  json grid = json::array();
  for (double h : default_grid(p.h_grid)) {
    json row{{"h", h}, {"M0", hp_eval(e.M0, h, prec)}};
    row["M1"] = e.M1 ? json(hp_eval(*e.M1, h, prec)) : json(nullptr);
    grid.push_back(row);
  }
  doc["grid"] = grid;
  emit(g, "melnikov.json", doc.dump(2));
  return 0;
}

int cmd_roots(const Globals& g, const Params& p) {
  const LienardSystem sys = load_system(g, p);
  const MelnikovExpansion e = assemble(sys);
  Which which = Which::M0;
  if (p.which == "M1" || (p.which == "auto" && e.M0.is_zero())) which = Which::M1;
  else if (p.which != "M0" && p.which != "auto")
    throw Error(ErrorKind::InvalidInput, "--which must be M0, M1 or auto");
  if (which == Which::M1 && !e.M1)
    throw Error(ErrorKind::OddnessViolated, "M1 needs odd f0 (and odd g0 when switching on y)");
  const HalfPowerPoly& poly = which == Which::M0 ? e.M0 : *e.M1;
  RootOptions ro;
  ro.width = g.tol.root_width;
  RootReport r = isolate_positive_roots(poly, ro);
  r.theorem_bound = zero_bound(sys.kase, sys.m, sys.n, which);
  const BoundCheck bc = check_against_bound(r, *r.theorem_bound);
  std::cerr << (which == Which::M0 ? "M0: " : "M1: ") << bc.diagnostics << '\n';
  emit(g, "roots.csv", to_csv(r));
  return 0;
}

int cmd_oracle(const Globals& g, const Params& p) {
  const LienardSystem sys = load_system(g, p);
  const QuadratureOptions q{g.tol.quad_abs, g.tol.quad_rel, 2000};
  const auto rows = oracle_sweep({sys}, default_grid(p.h_grid), Execution::Parallel, q);
  std::ostringstream os;
  os << oracle_csv_header() << '\n';
  bool ok = true;
  for (const auto& r : rows) {
    os << to_csv(r) << '\n';
    ok = ok && r.rel_err <= g.tol.oracle_rel;
  }
  emit(g, "oracle.csv", os.str());
  if (!ok) std::cerr << "oracle: rel_err above " << g.tol.oracle_rel << '\n';
  return ok ? 0 : 3;
}

int cmd_simulate(const Globals& g, const Params& p) {
  const LienardSystem sys = load_system(g, p);
  SimConfig config = SimConfig::from_system(sys);
  config.rk_tol = g.tol.rk_tol;
  config.event_tol = g.tol.event_tol;
  config.validate();
  const PlanarField field = PlanarField::from_system(sys, sys.lambda, sys.eps);
  if (p.r0) {
    std::vector<TrajectorySample> traj;
    const ReturnResult ret = advance_to_section(field, *p.r0, config, TimeDirection::Forward, &traj);
    std::ostringstream os;
    os.precision(17);
    os << "t,x,y,side\n";
    for (const auto& s : traj) os << s.t << ',' << s.point[0] << ',' << s.point[1] << ',' << s.side << '\n';
    emit(g, "trajectory.csv", os.str());
    std::cerr << "return coordinate " << ret.coord << " after t = " << ret.time << '\n';
    return 0;
  }
  const CycleScan scan = find_cycles(field, p.r_lo, p.r_hi, p.grid, config);
  json cycles = json::array();
  for (const auto& c : scan.cycles) cycles.push_back(cycle_json(c));
  json doc{{"lambda", sys.lambda}, {"eps", sys.eps}, {"r_lo", p.r_lo}, {"r_hi", p.r_hi},
           {"non_isolated", scan.non_isolated}, {"cycles", cycles}};
  emit(g, "cycles.json", doc.dump(2));
  return 0;
}

int cmd_design(const Globals& g, const Params& p) {
  DesignOptions opts;
  opts.seed = g.seed;
  opts.tolerance = g.tol.design_residual;
  if (p.lambda) opts.lambda = *p.lambda;
  if (p.eps) opts.eps = *p.eps;
  const SwitchCase kase = parse_switch_case(p.kase);
  if (p.targets.empty()) {
    LienardSystem sys = LienardSystem::zero(kase, p.m, p.n);
    sys.lambda = opts.lambda;
    sys.eps = opts.eps;
    emit(g, "design.json", json{{"system", to_json(sys)}, {"M1", to_json(HalfPowerPoly{})}, {"pass", true}}.dump(2));
    return 0;
  }
  const DesignResult res = design(kase, p.m, p.n, p.targets, opts);
  const MelnikovExpansion e = assemble(res.system);
  RootOptions ro;
  ro.width = g.tol.root_width;
  RootReport r = isolate_positive_roots(*e.M1, ro);
  r.theorem_bound = zero_bound(kase, p.m, p.n, Which::M1);
  bool hit = r.certified_count() == static_cast<int>(p.targets.size());
  for (double h : p.targets) {
    bool found = false;
    for (const auto& x : r.roots) found = found || std::abs(x.h_mid - h) <= 1e-6 * (1 + h);
    hit = hit && found;
  }
  const bool pass = hit && res.residual <= g.tol.design_residual;
  json doc{{"system", to_json(res.system)}, {"M1", to_json(*e.M1)},       {"M1_text", e.M1->to_string()},
           {"residual", res.residual},       {"roots", roots_json(r)},     {"pass", pass}};
  if (p.simulate) {
    SimConfig config = SimConfig::from_system(res.system);
    config.rk_tol = g.tol.rk_tol;
    const PlanarField field = PlanarField::from_system(res.system, res.system.lambda, res.system.eps);
    double lo = 1e300, hi = 0;
    for (double h : p.targets) {
      lo = std::min(lo, std::sqrt(2 * h));
      hi = std::max(hi, std::sqrt(2 * h));
    }
    const CycleScan scan = find_cycles(field, 0.5 * lo, 1.25 * hi, p.grid, config);
    json cycles = json::array();
    for (const auto& c : scan.cycles) cycles.push_back(cycle_json(c));
    doc["simulation"] = {{"cycles", cycles}, {"non_isolated", scan.non_isolated}};
  }
  emit(g, "design.json", doc.dump(2));
  return pass ? 0 : 3;
}

int cmd_verify(const Globals& g, const Params& p) {
  const LienardSystem sys = load_system(g, p);
  VerifyOptions opts;
  opts.tol = g.tol;
  opts.hs = default_grid(p.h_grid);
  opts.simulate = p.simulate;
  opts.sim_grid = p.grid;
  const VerifyReport rep = verify_system(sys, opts);
  std::ostringstream os;
  os << verify_csv_header() << '\n';
  for (const auto& r : rep.rows) os << to_csv(r) << '\n';
  emit(g, "verify.csv", os.str());
  if (rep.roots) std::cerr << "roots: " << check_against_bound(*rep.roots, rep.roots->theorem_bound.value_or(0)).diagnostics << '\n';
  if (!rep.pass) {
    const VerifyRow& r = rep.rows[*rep.first_failure];
    std::cerr << "FAIL at row " << *rep.first_failure << ": " << r.stage << ' ' << r.term << " h=" << r.h
              << " error=" << r.error << " threshold=" << r.threshold << '\n';
    return 3;
  }
  std::cerr << "verify: pass\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Melnikov analysis of piecewise polynomial Lienard systems"};
  app.require_subcommand(1);
  Globals g;
  Params p;
  app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory (default: stdout)");
  app.add_option("--precision", g.precision, "double or long-double");
  app.add_option("--seed", g.seed, "seed for randomized steps");

  auto add_system = [&](CLI::App* s) { s->add_option("--system", p.system, "preset name or system JSON path"); };
  auto add_grid = [&](CLI::App* s) { s->add_option("--h-grid", p.h_grid, "energies h")->delimiter(','); };
  auto add_params = [&](CLI::App* s) {
    s->add_option("--lambda", p.lambda, "switching amplitude (default: from the system)");
    s->add_option("--eps", p.eps, "perturbation size (default: from the system)");
  };

  auto* melnikov = app.add_subcommand("melnikov", "exact M0 and M1 with zero bounds");
  add_system(melnikov);
  add_grid(melnikov);

  auto* roots = app.add_subcommand("roots", "certified positive zeros");
  add_system(roots);
  roots->add_option("--which", p.which, "M0, M1 or auto");

  auto* oracle = app.add_subcommand("oracle", "closed form vs quadrature");
  add_system(oracle);
  add_grid(oracle);

  auto* simulate = app.add_subcommand("simulate", "trajectory or limit-cycle scan");
  add_system(simulate);
  add_params(simulate);
  simulate->add_option("--r0", p.r0, "start coordinate on the section; writes one return trajectory");
  simulate->add_option("--r-lo", p.r_lo, "lower end of the section scan");
  simulate->add_option("--r-hi", p.r_hi, "upper end of the section scan");
  simulate->add_option("--grid", p.grid, "scan grid points");

  auto* design_cmd = app.add_subcommand("design", "system with M1 zeros at the targets");
  design_cmd->add_option("--case", p.kase, "Y or X");
  design_cmd->add_option("--m", p.m, "degree of f0 and f1");
  design_cmd->add_option("--n", p.n, "degree of g, g0 and g1");
  design_cmd->add_option("--targets", p.targets, "target energies h")->delimiter(',');
  design_cmd->add_option("--grid", p.grid, "scan grid points for --simulate");
  design_cmd->add_flag("--simulate", p.simulate, "scan the designed system for limit cycles");
  add_params(design_cmd);

  auto* verify = app.add_subcommand("verify", "closed form, oracle, roots and optional simulation");
  add_system(verify);
  add_grid(verify);
  verify->add_option("--grid", p.grid, "scan grid points for --simulate");
  verify->add_flag("--simulate", p.simulate, "add a limit-cycle scan stage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    g.tol = Tolerances::from_env();
    if (!g.config_path.empty()) {
      std::ifstream in(g.config_path);
      try {
        g.config = json::parse(in);
      } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, g.config_path + ": " + e.what());
      }
      if (!g.config.is_object()) throw Error(ErrorKind::InvalidInput, "config must be a JSON object");
      if (g.config.contains("tolerances")) {
        try {
          g.tol = Tolerances::parse(g.config.at("tolerances").get<std::string>(), g.tol);
        } catch (const json::exception& e) {
          config_error("tolerances", e.what());
        }
      }
    }
    CLI::App* sub = app.get_subcommands().front();
    merge_config(g.config, p, *sub);
    parse_precision(g.precision);
    const std::string name = sub->get_name();
    if (name == "melnikov") return cmd_melnikov(g, p);
    if (name == "roots") return cmd_roots(g, p);
    if (name == "oracle") return cmd_oracle(g, p);
    if (name == "simulate") return cmd_simulate(g, p);
    if (name == "design") return cmd_design(g, p);
    return cmd_verify(g, p);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_validation_error(e.kind()) ? 2 : 3;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
