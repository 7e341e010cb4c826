#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "annulab/oracle.hpp"
#include "annulab/shape.hpp"
#include "annulab/verify.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitSolverFailure = 3;

struct RunConfig {
  std::string geom;
  double r0 = std::numeric_limits<double>::quiet_NaN();
  double r1 = std::numeric_limits<double>::quiet_NaN();
  double t = std::numeric_limits<double>::quiet_NaN();
  std::string t_grid;
  int level = 3;
  double delta = 1e-3;
  std::string out;
  std::string config;
};

struct ConfigOptions {
  CLI::Option* geom = nullptr;
  CLI::Option* r0 = nullptr;
  CLI::Option* r1 = nullptr;
  CLI::Option* t = nullptr;
  CLI::Option* t_grid = nullptr;
  CLI::Option* level = nullptr;
  CLI::Option* delta = nullptr;
  CLI::Option* out = nullptr;
};

ConfigOptions add_common_options(CLI::App* cmd, RunConfig& cfg) {
  ConfigOptions opts;
  opts.geom = cmd->add_option("--geom", cfg.geom, "geometry: sph|hyp|euc");
  opts.r0 = cmd->add_option("--r0", cfg.r0, "inner geodesic radius");
  opts.r1 = cmd->add_option("--r1", cfg.r1, "outer geodesic radius");
  opts.t = cmd->add_option("--t", cfg.t, "offset of the inner center");
  opts.t_grid = cmd->add_option("--t-grid", cfg.t_grid, "offset grid A:B:S");
  opts.level = cmd->add_option("--L", cfg.level, "refinement level");
  opts.delta = cmd->add_option("--delta", cfg.delta, "finite-difference step");
  opts.out = cmd->add_option("--out", cfg.out, "output file path");
  cmd->add_option("--config", cfg.config, "JSON file with the same keys");
  return opts;
}

// Config file supplies any key the command line did not set.
void merge_config_file(RunConfig& cfg, const ConfigOptions& opts) {
  if (cfg.config.empty()) return;
  std::ifstream in(cfg.config);
  if (!in)
    throw std::invalid_argument("cannot open config file '" + cfg.config + "'");
  nlohmann::json j = nlohmann::json::parse(in);
  auto take = [&j](const char* key, CLI::Option* opt, auto& dst) {
    if (j.contains(key) && (!opt || opt->count() == 0))
      dst = j.at(key).get<std::decay_t<decltype(dst)>>();
  };
  take("geom", opts.geom, cfg.geom);
  take("r0", opts.r0, cfg.r0);
  take("r1", opts.r1, cfg.r1);
  take("t", opts.t, cfg.t);
  take("t_grid", opts.t_grid, cfg.t_grid);
  take("L", opts.level, cfg.level);
  take("delta", opts.delta, cfg.delta);
  take("out", opts.out, cfg.out);
}

annulab::SpaceForm require_geometry(const RunConfig& cfg) {
  if (cfg.geom.empty()) throw std::invalid_argument("--geom is required");
  return annulab::space_form_from_string(cfg.geom);
}

void require_radii(const RunConfig& cfg) {
  if (std::isnan(cfg.r0)) throw std::invalid_argument("--r0 is required");
  if (std::isnan(cfg.r1)) throw std::invalid_argument("--r1 is required");
}

std::vector<double> parse_grid(const std::string& grid) {
  double a, b, s;
  char c1, c2;
  std::istringstream ss(grid);
  if (!(ss >> a >> c1 >> b >> c2 >> s) || c1 != ':' || c2 != ':' || !(s > 0.0))
    throw std::invalid_argument("--t-grid must be start:stop:step with step > 0");
  std::vector<double> ts;
  for (double t = a; t <= b + 1e-12 * std::max(1.0, std::abs(b)); t += s)
    ts.push_back(t);
  if (ts.empty()) throw std::invalid_argument("--t-grid produced no offsets");
  return ts;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write output file '" + cfg.out + "'");
    f << text;
  } else {
    std::cout << text;
  }
}

int run_solve(RunConfig cfg, const ConfigOptions& opts) {
  merge_config_file(cfg, opts);
  annulab::SpaceForm geom = require_geometry(cfg);
  require_radii(cfg);
  if (std::isnan(cfg.t)) throw std::invalid_argument("solve requires --t");
  annulab::AnnulusSpec spec{geom, cfg.r0, cfg.r1, cfg.t};
  spec.validate();

  annulab::TorsionSolution ts = annulab::solve_torsion(spec, cfg.level);
  annulab::EigenSolution es = annulab::solve_eigen(spec, cfg.level);
  annulab::MeshReport rep = annulab::validate_mesh(ts.mesh);

  ordered_json j;
  j["geometry"] = cfg.geom;
  j["r0"] = cfg.r0;
  j["r1"] = cfg.r1;
  j["t"] = cfg.t;
  j["L"] = cfg.level;
  j["J"] = ts.J;
  j["lambda1"] = es.lambda1;
  j["energy_identity_residual"] = std::abs(ts.J - ts.energy) / std::abs(ts.J);
  j["mesh_stats"] = {{"nodes", ts.mesh.node_count()},
                     {"triangles", ts.mesh.triangle_count()},
                     {"max_edge_length", rep.max_edge_length},
                     {"min_quality", rep.min_quality}};
  std::cout << j.dump(2) << "\n";
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    f << j.dump(2) << "\n";
  }
  return 0;
}

int run_sweep(RunConfig cfg, const ConfigOptions& opts) {
  merge_config_file(cfg, opts);
  annulab::SpaceForm geom = require_geometry(cfg);
  require_radii(cfg);
  if (cfg.t_grid.empty()) throw std::invalid_argument("sweep requires --t-grid");
  std::vector<double> ts = parse_grid(cfg.t_grid);
  for (double t : ts) {
    annulab::AnnulusSpec spec{geom, cfg.r0, cfg.r1, t};
    spec.validate();
    if (!(std::abs(t) + cfg.delta < cfg.r1 - cfg.r0))
      throw std::invalid_argument("grid offset " + std::to_string(t) +
                                  " leaves no fd-step margin");
  }

  std::vector<annulab::SweepRow> rows =
      annulab::sweep(geom, cfg.r0, cfg.r1, ts, cfg.level, cfg.delta);

  std::ostringstream csv;
  csv << "geom,r0,r1,t,L,J,lambda1,dJ_bnd,dJ_vol,dlam_bnd,dJ_fd,dlam_fd\n";
  for (const auto& row : rows) {
    csv << annulab::to_string(row.geom) << ',' << fmt12(row.r0) << ','
        << fmt12(row.r1) << ',' << fmt12(row.t) << ',' << row.level << ','
        << fmt12(row.J) << ',' << fmt12(row.lambda1) << ',' << fmt12(row.dJ_bnd)
        << ',' << fmt12(row.dJ_vol) << ',' << fmt12(row.dlam_bnd) << ','
        << fmt12(row.dJ_fd) << ',' << fmt12(row.dlam_fd) << '\n';
  }
  emit(cfg, csv.str());
  return 0;
}

int run_convergence(RunConfig cfg, const ConfigOptions& opts) {
  merge_config_file(cfg, opts);
  annulab::SpaceForm geom = require_geometry(cfg);
  require_radii(cfg);
  if (!std::isnan(cfg.t) && cfg.t != 0.0)
    throw std::invalid_argument("convergence compares to the concentric oracle; --t must be 0");
  annulab::AnnulusSpec spec{geom, cfg.r0, cfg.r1, 0.0};
  spec.validate();
  if (cfg.level < 3 || cfg.level > 8)
    throw std::invalid_argument("convergence needs --L in [3, 8] (range is 2..L)");

  annulab::ConvergenceStudy study =
      annulab::convergence_study(geom, cfg.r0, cfg.r1, 2, cfg.level);

  std::ostringstream csv;
  csv << "L,h_max,err_J,err_lambda1,err_point,err_flux,max_nodal_rel_err\n";
  for (const auto& row : study.rows) {
    csv << row.level << ',' << fmt12(row.h_max) << ',' << fmt12(row.err_J) << ','
        << fmt12(row.err_lambda) << ',' << fmt12(row.err_point) << ','
        << fmt12(row.err_flux) << ',' << fmt12(row.max_nodal_rel_err) << '\n';
  }
  csv << "order,," << fmt12(study.order_J) << ',' << fmt12(study.order_lambda)
      << ',' << fmt12(study.order_point) << ',' << fmt12(study.order_flux) << ','
      << fmt12(study.order_nodal) << '\n';
  emit(cfg, csv.str());
  return 0;
}

int run_oracle(RunConfig cfg, const ConfigOptions& opts) {
  merge_config_file(cfg, opts);
  annulab::SpaceForm geom = require_geometry(cfg);
  require_radii(cfg);

  annulab::RadialTorsion rt = annulab::radial_torsion(geom, cfg.r0, cfg.r1);
  annulab::RadialEigen re = annulab::radial_eigen(geom, cfg.r0, cfg.r1);

  ordered_json j;
  j["geometry"] = cfg.geom;
  j["r0"] = cfg.r0;
  j["r1"] = cfg.r1;
  j["torsion_C"] = rt.C;
  j["torsion_D"] = rt.D;
  j["torsion_value_mid"] = rt.value(0.5 * (cfg.r0 + cfg.r1));
  j["torsion_flux_r0"] = -rt.derivative(cfg.r0);
  j["J_radial"] = annulab::radial_J(geom, cfg.r0, cfg.r1);
  j["lambda1_radial"] = re.lambda;
  j["eigen_flux_r0"] = -re.dphi_r0;
  std::cout << j.dump(2) << "\n";
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    f << j.dump(2) << "\n";
  }
  return 0;
}

int run_verify_cmd(RunConfig cfg, const ConfigOptions& opts) {
  merge_config_file(cfg, opts);
  annulab::VerifyOptions vopts;
  vopts.level = cfg.level;
  vopts.delta = cfg.delta;
  std::vector<annulab::CheckResult> results = annulab::run_verify(vopts);

  int passed = 0;
  for (const auto& r : results) {
    std::printf("%-4s %-28s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (r.pass) ++passed;
  }
  std::printf("%d/%d checks passed\n", passed, static_cast<int>(results.size()));
  return annulab::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion and first-eigenvalue laboratory on geodesic annuli "
               "in constant-curvature 2-D geometries"};
  app.require_subcommand(1);

  RunConfig solve_cfg, sweep_cfg, conv_cfg, oracle_cfg, verify_cfg;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve both problems at one offset");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "offset sweep with derivatives (CSV)");
  CLI::App* conv_cmd = app.add_subcommand("convergence", "errors vs radial oracles over levels (CSV)");
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "radial closed-form reference values (JSON)");
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the full invariant suite");

  ConfigOptions solve_opts = add_common_options(solve_cmd, solve_cfg);
  ConfigOptions sweep_opts = add_common_options(sweep_cmd, sweep_cfg);
  ConfigOptions conv_opts = add_common_options(conv_cmd, conv_cfg);
  ConfigOptions oracle_opts = add_common_options(oracle_cmd, oracle_cfg);
  ConfigOptions verify_opts = add_common_options(verify_cmd, verify_cfg);
  conv_cfg.level = 5;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidConfig;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_cfg, solve_opts);
    if (sweep_cmd->parsed()) return run_sweep(sweep_cfg, sweep_opts);
    if (conv_cmd->parsed()) return run_convergence(conv_cfg, conv_opts);
    if (oracle_cmd->parsed()) return run_oracle(oracle_cfg, oracle_opts);
    if (verify_cmd->parsed()) return run_verify_cmd(verify_cfg, verify_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitInvalidConfig;
}
