// Command-line front end: closed-form bounds, position optimization, sweeps,
// the fixed-layout baseline, and runtime benchmarking.
//
// Exit codes: 0 success, 2 configuration error, 3 nothing feasible.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fires/parallel.hpp"

#include "fires/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw fires::ConfigError("--seed: empty seed list");
  return seeds;
}

struct CommonOpts {
  std::string config_path;
  std::string seed_list;
  std::string out_path;
  std::string mode;
  std::string surface;
  int threads = -1;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON configuration file");
  cmd->add_option("--seed", opts.seed_list, "comma-separated seed list, e.g. 1,2,3");
  cmd->add_option("--out", opts.out_path, "output path");
  cmd->add_option("--mode", opts.mode, "access mode")->check(CLI::IsMember({"oma", "noma", "both"}));
  cmd->add_option("--surface", opts.surface, "surface type")->check(CLI::IsMember({"fires", "star"}));
  cmd->add_option("--threads", opts.threads, "worker threads (0 = auto)");
  cmd->add_flag("--timing", opts.timing, "record wall-clock in sweep CSV (breaks byte determinism)");
}

fires::ExperimentConfig resolve_config(const CommonOpts& opts) {
  fires::ExperimentConfig cfg =
      opts.config_path.empty() ? fires::default_config() : fires::load_config(opts.config_path);
  if (!opts.seed_list.empty()) cfg.seeds = parse_seed_list(opts.seed_list);
  if (!opts.mode.empty()) {
    cfg.modes.clear();
    if (opts.mode == "oma" || opts.mode == "both") cfg.modes.push_back(fires::AccessMode::oma);
    if (opts.mode == "noma" || opts.mode == "both") cfg.modes.push_back(fires::AccessMode::noma);
  }
  if (!opts.surface.empty())
    cfg.surfaces = {opts.surface == "fires" ? fires::Surface::fires : fires::Surface::star};
  if (!opts.out_path.empty()) cfg.out_path = opts.out_path;
  if (opts.threads >= 0) cfg.threads = opts.threads;
  if (opts.timing) cfg.timing = true;
  cfg.finalize();
  return cfg;
}

const char* mode_name(fires::AccessMode m) { return m == fires::AccessMode::oma ? "oma" : "noma"; }

int cmd_bound(const CommonOpts& opts) {
  const fires::ExperimentConfig cfg = resolve_config(opts);
  const fires::BoundReport rep = fires::run_bound(cfg);
  std::cout << rep.text;
  return rep.any_feasible ? kExitOk : kExitInfeasible;
}

int cmd_optimize(const CommonOpts& opts) {
  fires::ExperimentConfig cfg = resolve_config(opts);
  cfg.pso.threads = fires::resolve_threads(cfg.threads);
  bool any_feasible = false;
  std::ostringstream trace_csv;
  trace_csv << "mode,seed,iter,incumbent_J\n";
  for (fires::AccessMode mode : cfg.modes) {
    const fires::CoverageProblem problem = fires::make_problem(cfg, mode);
    for (std::uint64_t seed : cfg.seeds) {
      const fires::PsoResult res = fires::optimize(problem, cfg.pso, seed);
      const bool feasible = res.best.feasible && res.best.b_space == 0.0;
      any_feasible = any_feasible || feasible;
      std::cout << "optimize mode=" << mode_name(mode) << " seed=" << seed
                << " J=" << res.best.J << " D_r=" << res.best.D_r << " D_t=" << res.best.D_t
                << " D_tot=" << res.best.D_tot << " feasible=" << (feasible ? "yes" : "no")
                << " iters=" << res.iterations_run << " it99=" << res.it99
                << " secs=" << res.total_seconds;
      if (mode == fires::AccessMode::oma) {
        std::cout << " tau_star=" << res.best.oma.tau_star;
      } else {
        std::cout << " beta_r=" << res.best.noma.beta_r << " p_r=" << res.best.noma.p_r
                  << " strong=" << (res.best.noma.strong_user == 0 ? "r" : "t");
      }
      std::cout << '\n';
      for (std::size_t i = 0; i < res.trace.size(); ++i)
        trace_csv << mode_name(mode) << ',' << seed << ',' << i << ',' << res.trace[i] << '\n';
    }
  }
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << cfg.out_path << "'\n";
      return 1;
    }
    out << trace_csv.str();
  }
  return any_feasible ? kExitOk : kExitInfeasible;
}

int cmd_sweep(const CommonOpts& opts) {
  const fires::ExperimentConfig cfg = resolve_config(opts);
  if (!cfg.sweep) throw fires::ConfigError("sweep: config needs a sweep axis");
  const auto rows = fires::run_sweep(cfg);
  if (cfg.out_path.empty()) {
    std::cout << fires::csv_string(rows);
  } else {
    fires::write_csv(cfg.out_path, rows);
    std::cout << "wrote " << rows.size() << " rows to " << cfg.out_path << '\n';
  }
  bool any_feasible = false;
  for (const auto& r : rows) any_feasible = any_feasible || r.feas_rate > 0.0;
  return any_feasible ? kExitOk : kExitInfeasible;
}

int cmd_baseline(const CommonOpts& opts) {
  const fires::ExperimentConfig cfg = resolve_config(opts);
  bool any_feasible = false;
  for (fires::AccessMode mode : cfg.modes) {
    for (std::uint64_t seed : cfg.seeds) {
      const fires::RunOutcome o = fires::run_single(cfg, mode, fires::Surface::star, seed);
      any_feasible = any_feasible || o.feasible;
      std::cout << "baseline mode=" << mode_name(mode) << " surface=star seed=" << seed
                << " D_r=" << o.D_r << " D_t=" << o.D_t << " D_tot=" << o.D_tot
                << " feasible=" << (o.feasible ? "yes" : "no") << " secs=" << o.seconds << '\n';
    }
  }
  return any_feasible ? kExitOk : kExitInfeasible;
}

int cmd_bench(const CommonOpts& opts, std::vector<int>& m_list, std::vector<int>& np_list) {
  const fires::ExperimentConfig cfg = resolve_config(opts);
  const fires::BenchReport rep = fires::run_bench(cfg, m_list, np_list);
  std::cout << rep.text;
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << cfg.out_path << "'\n";
      return 1;
    }
    out << rep.text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FIRES coverage simulator and optimizer"};
  app.require_subcommand(1);

  CommonOpts bound_opts, optimize_opts, sweep_opts, baseline_opts, bench_opts;
  std::vector<int> bench_m{36, 64};
  std::vector<int> bench_np{30, 60};

  CLI::App* bound = app.add_subcommand("bound", "closed-form coverage radii, no outer search");
  add_common(bound, bound_opts);
  CLI::App* optimize = app.add_subcommand("optimize", "position optimization via the outer swarm");
  add_common(optimize, optimize_opts);
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep, CSV output");
  add_common(sweep, sweep_opts);
  CLI::App* baseline = app.add_subcommand("baseline", "fixed-layout benchmark surface");
  add_common(baseline, baseline_opts);
  CLI::App* bench = app.add_subcommand("bench", "runtime table across modes, M and swarm sizes");
  add_common(bench, bench_opts);
  bench->add_option("--m-list", bench_m, "element counts (perfect squares)");
  bench->add_option("--np-list", bench_np, "swarm sizes");

  try {
    app.parse(argc, argv);
    if (bound->parsed()) return cmd_bound(bound_opts);
    if (optimize->parsed()) return cmd_optimize(optimize_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts);
    if (baseline->parsed()) return cmd_baseline(baseline_opts);
    if (bench->parsed()) return cmd_bench(bench_opts, bench_m, bench_np);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const fires::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
