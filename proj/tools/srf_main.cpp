// srf: evaluate, scan, and certify the Steiner ratio surface of helical
// point sets, and build/optimize fixed-topology Steiner trees on them.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "steiner/sausage.hpp"
#include "steiner/search.hpp"
#include "steiner/srf.hpp"

using nlohmann::json;

namespace {

// Exit code contract (stable):
//   0 success, 1 malformed flags/validation, 2 undefined or infeasible
//   configuration, 3 I/O failure, 4 certification failure, 5 optimizer
//   non-convergence.
enum ExitCode {
  kOk = 0,
  kBadFlags = 1,
  kUndefined = 2,
  kIoError = 3,
  kCertFailed = 4,
  kNoConvergence = 5,
};

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int scan_threads() {
  const char* env = std::getenv("HELIX_STEINER_THREADS");
  if (env == nullptr) return 1;
  const int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

std::optional<json> load_config(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "srf: cannot read config file " << path << "\n";
    return std::nullopt;
  }
  return json::parse(in, nullptr, true);
}

// Flags given on the command line win over config-file values.
template <typename T>
void config_override(const CLI::App& cmd, const json& cfg, const std::string& key, T& var) {
  if (cmd.count("--" + key) > 0) return;
  if (const auto it = cfg.find(key); it != cfg.end()) var = it->get<T>();
}

struct GridFlags {
  double omega_lo;
  double omega_hi;
  int omega_steps = 400;
  double a_lo = 0.0;
  double a_hi = 1.5;
  int a_steps = 400;

  GridFlags() {
    const auto [lo, hi] = steiner::graham_hwang_window();
    omega_lo = lo;
    omega_hi = hi;
  }

  void add_to(CLI::App& cmd) {
    cmd.add_option("--omega-lo", omega_lo, "Grid omega lower end");
    cmd.add_option("--omega-hi", omega_hi, "Grid omega upper end");
    cmd.add_option("--omega-steps", omega_steps, "Omega node count")->check(CLI::PositiveNumber);
    cmd.add_option("--a-lo", a_lo, "Grid a lower end (excluded)");
    cmd.add_option("--a-hi", a_hi, "Grid a upper end (included)");
    cmd.add_option("--a-steps", a_steps, "a node count")->check(CLI::PositiveNumber);
  }

  void apply_config(const CLI::App& cmd, const json& cfg) {
    config_override(cmd, cfg, "omega-lo", omega_lo);
    config_override(cmd, cfg, "omega-hi", omega_hi);
    config_override(cmd, cfg, "omega-steps", omega_steps);
    config_override(cmd, cfg, "a-lo", a_lo);
    config_override(cmd, cfg, "a-hi", a_hi);
    config_override(cmd, cfg, "a-steps", a_steps);
  }

  steiner::GridSpec spec() const {
    return {omega_lo, omega_hi, omega_steps, a_lo, a_hi, a_steps};
  }
};

json densities_json(const steiner::SrfSample& s) {
  json arr = json::array();
  for (const auto& d : s.densities) {
    json e = {{"m", d.m}, {"spanning", d.spanning}};
    e["steiner"] = d.steiner ? json(*d.steiner) : json(nullptr);
    arr.push_back(std::move(e));
  }
  return arr;
}

int cmd_eval(double omega, double a) {
  const steiner::HelixParams params{omega, a};
  const auto sample = steiner::srf(params);
  if (!sample) {
    std::cerr << "srf eval: undefined SRF, A1 <= 0 at omega=" << g17(omega) << "\n";
    return kUndefined;
  }
  json out = {
      {"omega", omega},
      {"a", a},
      {"rho", sample->rho},
      {"m_star", sample->m_star},
      {"densities", densities_json(*sample)},
      {"feasible_m1", steiner::full_tree_feasible(1, params)},
  };
  std::cout << out.dump() << "\n";
  return kOk;
}

int cmd_scan(const GridFlags& grid, const std::string& out_path) {
  const auto result = steiner::scan(grid.spec(), scan_threads());

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "srf scan: cannot open output file " << out_path << "\n";
    return kIoError;
  }
  out << "omega,a,m_star,rho,in_domain\n";
  for (const auto& row : result.rows) {
    out << g17(row.omega) << ',' << g17(row.a) << ',' << row.m_star << ','
        << g17(row.rho) << ',' << (row.in_domain ? 1 : 0) << '\n';
  }
  out.flush();
  if (!out) {
    std::cerr << "srf scan: write failed for " << out_path << "\n";
    return kIoError;
  }

  if (result.has_minimum) {
    std::cerr << "scan: " << result.rows.size() << " nodes, " << result.in_domain_count
              << " in domain; min rho " << g17(result.minimum.rho) << " at omega="
              << g17(result.minimum.omega) << " a=" << g17(result.minimum.a) << "\n";
  } else {
    std::cerr << "scan: " << result.rows.size() << " nodes; domain is empty on this grid\n";
  }
  return kOk;
}

void recompute_minimum(steiner::ScanResult& result) {
  result.has_minimum = false;
  result.in_domain_count = 0;
  for (const auto& row : result.rows) {
    if (!row.in_domain) continue;
    ++result.in_domain_count;
    if (!result.has_minimum || row.rho < result.minimum.rho) {
      result.has_minimum = true;
      result.minimum = row;
    }
  }
}

json certificate_json(const steiner::Certificate& cert) {
  json violations = json::array();
  for (const auto& v : cert.violations) {
    violations.push_back(
        {{"omega", v.omega}, {"a", v.a}, {"rho", v.rho}, {"reason", v.reason}});
  }
  return {
      {"schema_version", cert.schema_version},
      {"grid",
       {{"omega_lo", cert.grid.omega_lo},
        {"omega_hi", cert.grid.omega_hi},
        {"omega_steps", cert.grid.omega_steps},
        {"a_lo", cert.grid.a_lo},
        {"a_hi", cert.grid.a_hi},
        {"a_steps", cert.grid.a_steps}}},
      {"refined",
       {{"omega", cert.refined.omega},
        {"a", cert.refined.a},
        {"rho", cert.refined.rho},
        {"residual_12", cert.refined.residual_12},
        {"residual_13", cert.refined.residual_13},
        {"iterations", cert.refined.iterations},
        {"converged", cert.refined.converged},
        {"diagnostic", cert.refined.diagnostic}}},
      {"scan_minimum",
       {{"omega", cert.scan_minimum.omega},
        {"a", cert.scan_minimum.a},
        {"rho", cert.scan_minimum.rho},
        {"m_star", cert.scan_minimum.m_star}}},
      {"in_domain_count", cert.in_domain_count},
      {"min_in_domain_rho", cert.min_in_domain_rho},
      {"boundary_margin", cert.boundary_margin},
      {"boundary_sample_count", cert.boundary_sample_count},
      {"a_cap", cert.a_cap},
      {"pass", cert.pass},
      {"diagnostic", cert.diagnostic},
      {"violations", violations},
  };
}

int cmd_certify(const GridFlags& grid, double tol, const std::string& out_path,
                bool corrupt_sample) {
  auto result = steiner::scan(grid.spec(), scan_threads());
  if (!result.has_minimum) {
    std::cerr << "srf certify: domain is empty on this grid\n";
    return kCertFailed;
  }
  auto refined =
      steiner::refine_critical(result.minimum.omega, result.minimum.a, tol);
  if (corrupt_sample) {
    // Test hook: damage one in-domain sample so certification must fail.
    for (auto& row : result.rows) {
      if (row.in_domain) {
        row.rho = refined.rho - 0.05;
        break;
      }
    }
    recompute_minimum(result);
  }
  const auto cert = steiner::certify_minimum(result, refined);
  const json out = certificate_json(cert);

  if (out_path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "srf certify: cannot open output file " << out_path << "\n";
      return kIoError;
    }
    f << out.dump(2) << "\n";
    f.flush();
    if (!f) {
      std::cerr << "srf certify: write failed for " << out_path << "\n";
      return kIoError;
    }
  }
  if (!cert.pass) {
    std::cerr << "srf certify: FAILED (" << cert.diagnostic << ", "
              << cert.violations.size() << " violations)\n";
    return kCertFailed;
  }
  std::cerr << "srf certify: pass; refined (" << g17(cert.refined.omega) << ", "
            << g17(cert.refined.a) << "), rho " << g17(cert.refined.rho)
            << ", boundary margin " << g17(cert.boundary_margin) << "\n";
  return kOk;
}

json point_array(const std::vector<steiner::Point3>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y, p.z});
  return arr;
}

int emit_json(const json& payload, const std::string& out_path, const char* who) {
  if (out_path.empty()) {
    std::cout << payload.dump(2) << "\n";
    return kOk;
  }
  std::ofstream f(out_path);
  if (!f) {
    std::cerr << who << ": cannot open output file " << out_path << "\n";
    return kIoError;
  }
  f << payload.dump(2) << "\n";
  f.flush();
  if (!f) {
    std::cerr << who << ": write failed for " << out_path << "\n";
    return kIoError;
  }
  return kOk;
}

int cmd_tree(int n, double omega, double a, bool optimize, double tol, int max_iter,
             const std::string& seed_name, const std::string& out_path) {
  const steiner::HelixParams params{omega, a};
  const auto seed =
      seed_name == "collapsed" ? steiner::SeedKind::collapsed : steiner::SeedKind::analytic;
  auto tree = steiner::build_sausage(n, params, seed);
  if (optimize) tree = steiner::optimize_steiner(tree, {tol, max_iter});

  const auto report = steiner::check_angles(tree, 0.1);
  json angles = json::array();
  for (const auto& node : report.nodes) {
    angles.push_back({node.angles_deg[0], node.angles_deg[1], node.angles_deg[2]});
  }
  json edges = json::array();
  for (const auto& e : tree.edges()) edges.push_back({e.u, e.v});

  json out = {
      {"n", n},
      {"omega", omega},
      {"a", a},
      {"terminals", point_array(tree.terminals)},
      {"steiner", point_array(tree.steiner)},
      {"edges", edges},
      {"total_length", tree.total_length},
      {"angles", angles},
      {"converged", tree.converged},
  };
  if (optimize) {
    out["finite_ratio"] = tree.total_length / steiner::mst_length(tree.terminals);
    out["sweeps"] = tree.sweeps;
  }
  const int io = emit_json(out, out_path, "srf tree");
  if (io != kOk) return io;
  if (optimize && !tree.converged) {
    std::cerr << "srf tree: optimizer did not converge after " << tree.sweeps
              << " sweeps (last displacement " << g17(tree.last_max_displacement) << ")\n";
    return kNoConvergence;
  }
  return kOk;
}

int cmd_ratio(int n, double omega, double a, double tol) {
  const steiner::HelixParams params{omega, a};
  const auto sample = steiner::srf(params);
  if (!sample) {
    std::cerr << "srf ratio: undefined SRF, A1 <= 0 at omega=" << g17(omega) << "\n";
    return kUndefined;
  }
  auto tree =
      steiner::optimize_steiner(steiner::build_sausage(n, params, steiner::SeedKind::analytic),
                                {tol, 100000});
  const double ratio = tree.total_length / steiner::mst_length(tree.terminals);
  json out = {
      {"n", n},
      {"finite_ratio", ratio},
      {"srf_limit", sample->rho},
      {"gap", std::abs(ratio - sample->rho)},
  };
  std::cout << out.dump() << "\n";
  if (!tree.converged) {
    std::cerr << "srf ratio: optimizer did not converge after " << tree.sweeps << " sweeps\n";
    return kNoConvergence;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner ratio surface of helical point sets"};
  app.require_subcommand(1);

  std::string config_path;

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate the SRF at one (omega, a)");
  double ev_omega = 0.0;
  double ev_a = 0.0;
  eval->add_option("--omega", ev_omega, "Angular step (radians)")->required();
  eval->add_option("--a", ev_a, "Pitch coefficient")->required();
  eval->add_option("--config", config_path, "JSON config file (flags override)");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "Evaluate the SRF over a grid, write CSV");
  GridFlags scan_grid;
  scan_grid.add_to(*scan_cmd);
  std::string scan_out;
  scan_cmd->add_option("--out", scan_out, "Output CSV path")->required();
  scan_cmd->add_option("--config", config_path, "JSON config file (flags override)");

  // certify
  auto* certify = app.add_subcommand("certify", "Scan, refine, and certify the global minimum");
  GridFlags cert_grid;
  cert_grid.add_to(*certify);
  double cert_tol = 1e-12;
  std::string cert_out;
  bool corrupt = false;
  certify->add_option("--tol", cert_tol, "Refinement residual tolerance")
      ->check(CLI::PositiveNumber);
  certify->add_option("--out", cert_out, "Certificate JSON path (stdout when absent)");
  certify->add_flag("--corrupt-sample", corrupt, "Test hook: damage one sample")
      ->group("");  // hidden
  certify->add_option("--config", config_path, "JSON config file (flags override)");

  // tree
  auto* tree = app.add_subcommand("tree", "Build (and optionally optimize) a 3-sausage tree");
  int tr_n = 0;
  double tr_omega = 0.0;
  double tr_a = 0.0;
  bool tr_opt = false;
  double tr_tol = 1e-10;
  int tr_maxit = 100000;
  std::string tr_seed = "analytic";
  std::string tr_out;
  tree->add_option("--n", tr_n, "Terminal count")->required()->check(CLI::Range(3, 1000000));
  tree->add_option("--omega", tr_omega, "Angular step (radians)")->required();
  tree->add_option("--a", tr_a, "Pitch coefficient")->required();
  tree->add_flag("--optimize", tr_opt, "Relocate Steiner points to convergence");
  tree->add_option("--tol", tr_tol, "Optimizer displacement tolerance")
      ->check(CLI::PositiveNumber);
  tree->add_option("--max-iter", tr_maxit, "Optimizer sweep cap")->check(CLI::PositiveNumber);
  tree->add_option("--seed", tr_seed, "Steiner seed: analytic | collapsed")
      ->check(CLI::IsMember({"analytic", "collapsed"}));
  tree->add_option("--out", tr_out, "Output JSON path (stdout when absent)");
  tree->add_option("--config", config_path, "JSON config file (flags override)");

  // ratio
  auto* ratio = app.add_subcommand("ratio", "Finite-n Steiner/MST ratio vs the SRF limit");
  int ra_n = 0;
  double ra_omega = 0.0;
  double ra_a = 0.0;
  double ra_tol = 1e-10;
  ratio->add_option("--n", ra_n, "Terminal count")->required()->check(CLI::Range(3, 1000000));
  ratio->add_option("--omega", ra_omega, "Angular step (radians)")->required();
  ratio->add_option("--a", ra_a, "Pitch coefficient")->required();
  ratio->add_option("--tol", ra_tol, "Optimizer displacement tolerance")
      ->check(CLI::PositiveNumber);
  ratio->add_option("--config", config_path, "JSON config file (flags override)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadFlags;
  }

  try {
    std::optional<json> cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
      if (!cfg) return kIoError;
    }
    if (eval->parsed()) {
      if (cfg) {
        config_override(*eval, *cfg, "omega", ev_omega);
        config_override(*eval, *cfg, "a", ev_a);
      }
      return cmd_eval(ev_omega, ev_a);
    }
    if (scan_cmd->parsed()) {
      if (cfg) {
        scan_grid.apply_config(*scan_cmd, *cfg);
        config_override(*scan_cmd, *cfg, "out", scan_out);
      }
      return cmd_scan(scan_grid, scan_out);
    }
    if (certify->parsed()) {
      if (cfg) {
        cert_grid.apply_config(*certify, *cfg);
        config_override(*certify, *cfg, "tol", cert_tol);
        config_override(*certify, *cfg, "out", cert_out);
      }
      return cmd_certify(cert_grid, cert_tol, cert_out, corrupt);
    }
    if (tree->parsed()) {
      if (cfg) {
        config_override(*tree, *cfg, "n", tr_n);
        config_override(*tree, *cfg, "omega", tr_omega);
        config_override(*tree, *cfg, "a", tr_a);
        config_override(*tree, *cfg, "tol", tr_tol);
        config_override(*tree, *cfg, "max-iter", tr_maxit);
        config_override(*tree, *cfg, "seed", tr_seed);
        config_override(*tree, *cfg, "out", tr_out);
      }
      return cmd_tree(tr_n, tr_omega, tr_a, tr_opt, tr_tol, tr_maxit, tr_seed, tr_out);
    }
    if (ratio->parsed()) {
      if (cfg) {
        config_override(*ratio, *cfg, "n", ra_n);
        config_override(*ratio, *cfg, "omega", ra_omega);
        config_override(*ratio, *cfg, "a", ra_a);
        config_override(*ratio, *cfg, "tol", ra_tol);
      }
      return cmd_ratio(ra_n, ra_omega, ra_a, ra_tol);
    }
  } catch (const steiner::infeasible_error& e) {
    std::cerr << "srf: " << e.what() << "\n";
    return kUndefined;
  } catch (const steiner::search_cap_error& e) {
    std::cerr << "srf: " << e.what() << "\n";
    return kUndefined;
  } catch (const json::exception& e) {
    std::cerr << "srf: config error: " << e.what() << "\n";
    return kBadFlags;
  } catch (const std::invalid_argument& e) {
    std::cerr << "srf: " << e.what() << "\n";
    return kBadFlags;
  } catch (const std::exception& e) {
    std::cerr << "srf: " << e.what() << "\n";
    return kBadFlags;
  }
  return kBadFlags;
}
