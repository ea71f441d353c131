#include "fires/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "fires/parallel.hpp"
#include "fires/units.hpp"

namespace fires {

namespace {

using nlohmann::json;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::string(buf);
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(ctx + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ConfigError(ctx + ": unknown key '" + it.key() + "'");
  }
}

double require_number(const json& obj, const std::string& ctx, const char* key) {
  if (!obj.contains(key)) throw ConfigError(ctx + ": missing key '" + key + "'");
  if (!obj[key].is_number()) throw ConfigError(ctx + ": key '" + key + "' must be a number");
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& ctx, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError(ctx + ": key '" + key + "' must be a number");
  return obj[key].get<double>();
}

int int_or(const json& obj, const std::string& ctx, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) throw ConfigError(ctx + ": key '" + key + "' must be an integer");
  return obj[key].get<int>();
}

PhaseErrorModel parse_phase(const json& obj, const std::string& ctx) {
  check_keys(obj, ctx, {"type", "sigma2", "levels"});
  if (!obj.contains("type") || !obj["type"].is_string())
    throw ConfigError(ctx + ": needs a 'type' string");
  const std::string type = obj["type"].get<std::string>();
  if (type == "ideal") return PhaseErrorModel::ideal();
  if (type == "gaussian") return PhaseErrorModel::gaussian(require_number(obj, ctx, "sigma2"));
  if (type == "quantized") {
    const double q = require_number(obj, ctx, "levels");
    if (q < 1.0 || q != std::floor(q)) throw ConfigError(ctx + ": 'levels' must be a positive integer");
    return PhaseErrorModel::quantized(static_cast<int>(q));
  }
  throw ConfigError(ctx + ": unknown phase-error type '" + type + "'");
}

std::vector<AccessMode> parse_modes(const std::string& s) {
  if (s == "oma") return {AccessMode::oma};
  if (s == "noma") return {AccessMode::noma};
  if (s == "both") return {AccessMode::oma, AccessMode::noma};
  throw ConfigError("mode: expected oma|noma|both, got '" + s + "'");
}

std::vector<Surface> parse_surfaces(const std::string& s) {
  if (s == "fires") return {Surface::fires};
  if (s == "star") return {Surface::star};
  if (s == "both") return {Surface::fires, Surface::star};
  throw ConfigError("surface: expected fires|star|both, got '" + s + "'");
}

const char* mode_name(AccessMode m) { return m == AccessMode::oma ? "oma" : "noma"; }
const char* surface_name(Surface s) { return s == Surface::fires ? "fires" : "star"; }

struct Stats {
  double mean{0.0};
  double stddev{0.0};
};

Stats stats_of(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

void ExperimentConfig::finalize() {
  try {
    aperture.validate();
    budget.elements = aperture.subarea_count();
    budget.chi_r = phase_attenuation(phase_r);
    budget.chi_t = phase_attenuation(phase_t);
    budget.validate();
    targets.validate();
    hops.f.validate();
    hops.r.validate();
    hops.t.validate();
    pso.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (modes.empty()) throw ConfigError("mode: at least one access mode required");
  if (surfaces.empty()) throw ConfigError("surface: at least one surface required");
  if (seeds.empty()) throw ConfigError("seeds: at least one seed required");
  if (oma_tau && (!(*oma_tau > 0.0) || *oma_tau >= 1.0))
    throw ConfigError("oma_tau: must lie in (0, 1)");
  if (beta_r < 0.0 || beta_r > 1.0) throw ConfigError("beta_r: must lie in [0, 1]");
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.aperture.A_h = 1.0;
  cfg.aperture.A_v = 1.0;
  cfg.aperture.M_h = 6;
  cfg.aperture.M_v = 6;
  cfg.aperture.N_h_sub = 100;
  cfg.aperture.N_v_sub = 100;
  cfg.aperture.lambda = units::wavelength_m(3.5e9);
  cfg.aperture.D_min = cfg.aperture.lambda / 2.0;

  cfg.budget.P = units::dbm_to_watt(30.0);
  cfg.budget.sigma2 = units::dbm_to_watt(-114.0);
  cfg.budget.rho0 = units::db_to_linear(-13.3);
  cfg.budget.alpha = 2.1;
  cfg.budget.d_f = 50.0;

  cfg.hops.f = HopParams{1.0, 5.0, deg_to_rad(30.0), deg_to_rad(-10.0)};
  cfg.hops.r = HopParams{1.0, 5.0, deg_to_rad(-40.0), deg_to_rad(5.0)};
  cfg.hops.t = HopParams{1.0, 5.0, deg_to_rad(25.0), deg_to_rad(-5.0)};

  cfg.phase_r = PhaseErrorModel::ideal();
  cfg.phase_t = PhaseErrorModel::ideal();
  cfg.targets = QosTargets{1.0, 1.0};
  cfg.modes = {AccessMode::oma, AccessMode::noma};
  cfg.surfaces = {Surface::fires, Surface::star};
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.finalize();
  return cfg;
}

ExperimentConfig parse_config(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": JSON parse failure: " + e.what());
  }
  check_keys(root, origin,
             {"aperture", "budget", "hops", "phase_error", "qos", "mode", "surface", "pso",
              "seeds", "threads", "timing", "sweep", "out", "oma_tau", "beta_r"});

  ExperimentConfig cfg = default_config();

  if (root.contains("aperture")) {
    const json& a = root["aperture"];
    const std::string ctx = origin + ".aperture";
    check_keys(a, ctx,
               {"A_h_m", "A_v_m", "M_h", "M_v", "N_h_sub", "N_v_sub", "f_c_GHz", "f_c_Hz",
                "lambda_m", "D_min_lambda", "D_min_m"});
    cfg.aperture.A_h = number_or(a, ctx, "A_h_m", cfg.aperture.A_h);
    cfg.aperture.A_v = number_or(a, ctx, "A_v_m", cfg.aperture.A_v);
    cfg.aperture.M_h = int_or(a, ctx, "M_h", cfg.aperture.M_h);
    cfg.aperture.M_v = int_or(a, ctx, "M_v", cfg.aperture.M_v);
    cfg.aperture.N_h_sub = int_or(a, ctx, "N_h_sub", cfg.aperture.N_h_sub);
    cfg.aperture.N_v_sub = int_or(a, ctx, "N_v_sub", cfg.aperture.N_v_sub);
    if (a.contains("lambda_m")) {
      cfg.aperture.lambda = require_number(a, ctx, "lambda_m");
    } else if (a.contains("f_c_Hz")) {
      cfg.aperture.lambda = units::wavelength_m(require_number(a, ctx, "f_c_Hz"));
    } else if (a.contains("f_c_GHz")) {
      cfg.aperture.lambda = units::wavelength_m(require_number(a, ctx, "f_c_GHz") * 1e9);
    }
    if (a.contains("D_min_m")) {
      cfg.aperture.D_min = require_number(a, ctx, "D_min_m");
    } else if (a.contains("D_min_lambda")) {
      cfg.aperture.D_min = require_number(a, ctx, "D_min_lambda") * cfg.aperture.lambda;
    } else {
      cfg.aperture.D_min = cfg.aperture.lambda / 2.0;
    }
  }

  if (root.contains("budget")) {
    const json& b = root["budget"];
    const std::string ctx = origin + ".budget";
    check_keys(b, ctx,
               {"P_dBm", "P_W", "sigma2_dBm", "sigma2_W", "rho0_dB", "rho0_dBm", "rho0_linear",
                "alpha", "d_f_m"});
    if (b.contains("P_W"))
      cfg.budget.P = require_number(b, ctx, "P_W");
    else if (b.contains("P_dBm"))
      cfg.budget.P = units::dbm_to_watt(require_number(b, ctx, "P_dBm"));
    if (b.contains("sigma2_W"))
      cfg.budget.sigma2 = require_number(b, ctx, "sigma2_W");
    else if (b.contains("sigma2_dBm"))
      cfg.budget.sigma2 = units::dbm_to_watt(require_number(b, ctx, "sigma2_dBm"));
    if (b.contains("rho0_linear"))
      cfg.budget.rho0 = require_number(b, ctx, "rho0_linear");
    else if (b.contains("rho0_dB"))
      cfg.budget.rho0 = units::db_to_linear(require_number(b, ctx, "rho0_dB"));
    else if (b.contains("rho0_dBm"))
      cfg.budget.rho0 = units::db_to_linear(require_number(b, ctx, "rho0_dBm"));
    cfg.budget.alpha = number_or(b, ctx, "alpha", cfg.budget.alpha);
    cfg.budget.d_f = number_or(b, ctx, "d_f_m", cfg.budget.d_f);
  }

  if (root.contains("hops")) {
    const json& h = root["hops"];
    const std::string ctx = origin + ".hops";
    check_keys(h, ctx,
               {"K_f", "K_r", "K_t", "bs_azimuth_deg", "bs_elevation_deg", "r_azimuth_deg",
                "r_elevation_deg", "t_azimuth_deg", "t_elevation_deg"});
    cfg.hops.f.k_factor = number_or(h, ctx, "K_f", cfg.hops.f.k_factor);
    cfg.hops.r.k_factor = number_or(h, ctx, "K_r", cfg.hops.r.k_factor);
    cfg.hops.t.k_factor = number_or(h, ctx, "K_t", cfg.hops.t.k_factor);
    if (h.contains("bs_azimuth_deg")) cfg.hops.f.azimuth = deg_to_rad(require_number(h, ctx, "bs_azimuth_deg"));
    if (h.contains("bs_elevation_deg")) cfg.hops.f.elevation = deg_to_rad(require_number(h, ctx, "bs_elevation_deg"));
    if (h.contains("r_azimuth_deg")) cfg.hops.r.azimuth = deg_to_rad(require_number(h, ctx, "r_azimuth_deg"));
    if (h.contains("r_elevation_deg")) cfg.hops.r.elevation = deg_to_rad(require_number(h, ctx, "r_elevation_deg"));
    if (h.contains("t_azimuth_deg")) cfg.hops.t.azimuth = deg_to_rad(require_number(h, ctx, "t_azimuth_deg"));
    if (h.contains("t_elevation_deg")) cfg.hops.t.elevation = deg_to_rad(require_number(h, ctx, "t_elevation_deg"));
  }

  if (root.contains("phase_error")) {
    const json& p = root["phase_error"];
    const std::string ctx = origin + ".phase_error";
    check_keys(p, ctx, {"r", "t"});
    if (p.contains("r")) cfg.phase_r = parse_phase(p["r"], ctx + ".r");
    if (p.contains("t")) cfg.phase_t = parse_phase(p["t"], ctx + ".t");
  }

  if (root.contains("qos")) {
    const json& q = root["qos"];
    const std::string ctx = origin + ".qos";
    check_keys(q, ctx, {"R_r_tar", "R_t_tar", "R_tar"});
    if (q.contains("R_tar")) {
      cfg.targets.rate_r = require_number(q, ctx, "R_tar");
      cfg.targets.rate_t = cfg.targets.rate_r;
    }
    cfg.targets.rate_r = number_or(q, ctx, "R_r_tar", cfg.targets.rate_r);
    cfg.targets.rate_t = number_or(q, ctx, "R_t_tar", cfg.targets.rate_t);
  }

  if (root.contains("mode")) {
    if (!root["mode"].is_string()) throw ConfigError(origin + ".mode: expected a string");
    cfg.modes = parse_modes(root["mode"].get<std::string>());
  }
  if (root.contains("surface")) {
    if (!root["surface"].is_string()) throw ConfigError(origin + ".surface: expected a string");
    cfg.surfaces = parse_surfaces(root["surface"].get<std::string>());
  }

  if (root.contains("pso")) {
    const json& p = root["pso"];
    const std::string ctx = origin + ".pso";
    check_keys(p, ctx,
               {"N_p", "T", "w", "w_max", "w_min", "c1", "c2", "v_max", "mu_space", "mu_q",
                "N_MC", "T_stall", "seeded_fraction"});
    cfg.pso.swarm = int_or(p, ctx, "N_p", cfg.pso.swarm);
    cfg.pso.iterations = int_or(p, ctx, "T", cfg.pso.iterations);
    if (p.contains("w")) {  // constant-inertia preset
      cfg.pso.w_max = require_number(p, ctx, "w");
      cfg.pso.w_min = cfg.pso.w_max;
    }
    cfg.pso.w_max = number_or(p, ctx, "w_max", cfg.pso.w_max);
    cfg.pso.w_min = number_or(p, ctx, "w_min", cfg.pso.w_min);
    cfg.pso.c1 = number_or(p, ctx, "c1", cfg.pso.c1);
    cfg.pso.c2 = number_or(p, ctx, "c2", cfg.pso.c2);
    cfg.pso.v_max = number_or(p, ctx, "v_max", cfg.pso.v_max);
    cfg.pso.mu_space = number_or(p, ctx, "mu_space", cfg.pso.mu_space);
    cfg.pso.mu_q = number_or(p, ctx, "mu_q", cfg.pso.mu_q);
    cfg.pso.mc_draws = int_or(p, ctx, "N_MC", cfg.pso.mc_draws);
    cfg.pso.stall_window = int_or(p, ctx, "T_stall", cfg.pso.stall_window);
    cfg.pso.seeded_fraction = number_or(p, ctx, "seeded_fraction", cfg.pso.seeded_fraction);
  }

  if (root.contains("seeds")) {
    if (!root["seeds"].is_array()) throw ConfigError(origin + ".seeds: expected an array");
    cfg.seeds.clear();
    for (const auto& s : root["seeds"]) {
      if (!s.is_number_integer()) throw ConfigError(origin + ".seeds: entries must be integers");
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }

  if (root.contains("threads")) cfg.threads = int_or(root, origin, "threads", cfg.threads);
  if (root.contains("timing")) {
    if (!root["timing"].is_boolean()) throw ConfigError(origin + ".timing: expected a boolean");
    cfg.timing = root["timing"].get<bool>();
  }
  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    const std::string ctx = origin + ".sweep";
    check_keys(s, ctx, {"axis", "values"});
    SweepSpec spec;
    if (!s.contains("axis") || !s["axis"].is_string())
      throw ConfigError(ctx + ": needs an 'axis' string");
    spec.axis = s["axis"].get<std::string>();
    if (!s.contains("values") || !s["values"].is_array() || s["values"].empty())
      throw ConfigError(ctx + ": needs a nonempty 'values' array");
    for (const auto& v : s["values"]) {
      if (!v.is_number()) throw ConfigError(ctx + ": values must be numbers");
      spec.values.push_back(v.get<double>());
    }
    cfg.sweep = spec;
  }
  if (root.contains("out")) {
    if (!root["out"].is_string()) throw ConfigError(origin + ".out: expected a string");
    cfg.out_path = root["out"].get<std::string>();
  }
  if (root.contains("oma_tau")) cfg.oma_tau = require_number(root, origin, "oma_tau");
  if (root.contains("beta_r")) cfg.beta_r = require_number(root, origin, "beta_r");

  cfg.finalize();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

ExperimentConfig apply_axis(const ExperimentConfig& base, const std::string& axis, double value) {
  ExperimentConfig cfg = base;
  if (axis == "P_dBm") {
    cfg.budget.P = units::dbm_to_watt(value);
  } else if (axis == "M") {
    const double side = std::sqrt(value);
    if (value < 1.0 || side != std::floor(side))
      throw ConfigError("sweep M: values must be perfect squares");
    cfg.aperture.M_h = static_cast<int>(side);
    cfg.aperture.M_v = static_cast<int>(side);
  } else if (axis == "R_tar") {
    cfg.targets.rate_r = value;
    cfg.targets.rate_t = value;
  } else if (axis == "Q") {
    if (value < 1.0 || value != std::floor(value))
      throw ConfigError("sweep Q: values must be positive integers");
    cfg.phase_r = PhaseErrorModel::quantized(static_cast<int>(value));
    cfg.phase_t = PhaseErrorModel::quantized(static_cast<int>(value));
  } else if (axis == "sigma_phi2") {
    cfg.phase_r = PhaseErrorModel::gaussian(value);
    cfg.phase_t = PhaseErrorModel::gaussian(value);
  } else if (axis == "K") {
    cfg.hops.f.k_factor = value;
    cfg.hops.r.k_factor = value;
    cfg.hops.t.k_factor = value;
  } else if (axis == "N_p") {
    cfg.pso.swarm = static_cast<int>(value);
  } else if (axis == "T") {
    cfg.pso.iterations = static_cast<int>(value);
  } else {
    throw ConfigError("sweep: unknown axis '" + axis + "'");
  }
  cfg.finalize();
  return cfg;
}

CoverageProblem make_problem(const ExperimentConfig& cfg, AccessMode mode) {
  return CoverageProblem(cfg.aperture, cfg.budget, cfg.hops, cfg.targets, mode);
}

RunOutcome run_single(const ExperimentConfig& cfg, AccessMode mode, Surface surface,
                      std::uint64_t seed) {
  const CoverageProblem problem = make_problem(cfg, mode);
  RunOutcome out;
  const double t0 = now_seconds();
  if (surface == Surface::fires) {
    const PsoResult res = optimize(problem, cfg.pso, seed);
    out.D_r = res.best.D_r;
    out.D_t = res.best.D_t;
    out.D_tot = res.best.D_tot;
    out.feasible = res.best.feasible && res.best.b_space == 0.0;
    out.iterations = res.iterations_run;
    out.it99 = res.it99;
    out.best_J = res.best.J;
    out.oma = res.best.oma;
    out.noma = res.best.noma;
  } else {
    const ScoreBreakdown sc =
        evaluate_placement(problem, cfg.pso, center_placement(cfg.aperture), seed);
    out.D_r = sc.D_r;
    out.D_t = sc.D_t;
    out.D_tot = sc.D_tot;
    out.feasible = sc.feasible && sc.b_space == 0.0;
    out.iterations = 1;
    out.it99 = 0;
    out.best_J = sc.J;
    out.oma = sc.oma;
    out.noma = sc.noma;
  }
  out.seconds = now_seconds() - t0;
  return out;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep: no axis configured");
  const SweepSpec& spec = *cfg.sweep;
  std::vector<SweepRow> rows;

  if (spec.axis == "beta_r") {
    // Closed-form energy-splitting sweep; no outer search involved.
    for (double v : spec.values) {
      if (v < 0.0 || v > 1.0) throw ConfigError("sweep beta_r: values must lie in [0, 1]");
      const SideResult r = radius_es(cfg.budget, v, cfg.budget.chi_r,
                                     QosTargets::noma_threshold(cfg.targets.rate_r));
      const SideResult t = radius_es(cfg.budget, 1.0 - v, cfg.budget.chi_t,
                                     QosTargets::noma_threshold(cfg.targets.rate_t));
      SweepRow row;
      row.axis_value = v;
      row.mode = "es";
      row.surface = "bound";
      row.d_r_mean = r.radius;
      row.d_t_mean = t.radius;
      row.d_tot_mean = r.radius + t.radius;
      row.feas_rate = (r.feasible && t.feasible) ? 1.0 : 0.0;
      rows.push_back(row);
    }
    return rows;
  }

  struct Task {
    std::size_t value_idx;
    std::size_t mode_idx;
    std::size_t surface_idx;
    std::size_t seed_idx;
  };
  std::vector<ExperimentConfig> per_value;
  per_value.reserve(spec.values.size());
  for (double v : spec.values) {
    ExperimentConfig c = apply_axis(cfg, spec.axis, v);
    c.pso.threads = 1;  // sweep parallelism lives at the task level
    per_value.push_back(std::move(c));
  }
  std::vector<Task> tasks;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi)
    for (std::size_t mi = 0; mi < cfg.modes.size(); ++mi)
      for (std::size_t si = 0; si < cfg.surfaces.size(); ++si)
        for (std::size_t ki = 0; ki < cfg.seeds.size(); ++ki) tasks.push_back({vi, mi, si, ki});

  std::vector<RunOutcome> outcomes(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int i) {
    const Task& t = tasks[static_cast<std::size_t>(i)];
    outcomes[static_cast<std::size_t>(i)] =
        run_single(per_value[t.value_idx], cfg.modes[t.mode_idx], cfg.surfaces[t.surface_idx],
                   cfg.seeds[t.seed_idx]);
  });

  // Deterministic assembly order: axis value, then mode, then surface.
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    for (std::size_t mi = 0; mi < cfg.modes.size(); ++mi) {
      for (std::size_t si = 0; si < cfg.surfaces.size(); ++si) {
        std::vector<double> drs, dts, dtots, secs;
        int feasible = 0;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
          const Task& t = tasks[i];
          if (t.value_idx != vi || t.mode_idx != mi || t.surface_idx != si) continue;
          const RunOutcome& o = outcomes[i];
          drs.push_back(o.D_r);
          dts.push_back(o.D_t);
          dtots.push_back(o.D_tot);
          secs.push_back(o.seconds);
          if (o.feasible) ++feasible;
        }
        SweepRow row;
        row.axis_value = spec.values[vi];
        row.mode = mode_name(cfg.modes[mi]);
        row.surface = surface_name(cfg.surfaces[si]);
        const Stats sr = stats_of(drs);
        const Stats st = stats_of(dts);
        const Stats stot = stats_of(dtots);
        row.d_r_mean = sr.mean;
        row.d_r_std = sr.stddev;
        row.d_t_mean = st.mean;
        row.d_t_std = st.stddev;
        row.d_tot_mean = stot.mean;
        row.d_tot_std = stot.stddev;
        row.feas_rate = drs.empty() ? 0.0 : static_cast<double>(feasible) / drs.size();
        row.secs = cfg.timing ? stats_of(secs).mean : 0.0;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string csv_string(const std::vector<SweepRow>& rows) {
  std::string out =
      "axis,mode,surface,D_r_mean,D_r_std,D_t_mean,D_t_std,D_tot_mean,D_tot_std,feas_rate,secs\n";
  for (const SweepRow& r : rows) {
    out += fmt(r.axis_value) + ',' + r.mode + ',' + r.surface + ',' + fmt(r.d_r_mean) + ',' +
           fmt(r.d_r_std) + ',' + fmt(r.d_t_mean) + ',' + fmt(r.d_t_std) + ',' +
           fmt(r.d_tot_mean) + ',' + fmt(r.d_tot_std) + ',' + fmt(r.feas_rate) + ',' +
           fmt(r.secs) + '\n';
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << csv_string(rows);
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

BoundReport run_bound(const ExperimentConfig& cfg) {
  BoundReport rep;
  const double d_ray = rayleigh_distance(cfg.aperture.A_h * cfg.aperture.A_v, cfg.aperture.lambda);

  const SideResult es_r = radius_es(cfg.budget, cfg.beta_r, cfg.budget.chi_r,
                                    QosTargets::noma_threshold(cfg.targets.rate_r));
  const SideResult es_t = radius_es(cfg.budget, 1.0 - cfg.beta_r, cfg.budget.chi_t,
                                    QosTargets::noma_threshold(cfg.targets.rate_t));
  rep.es.D_r = es_r.radius;
  rep.es.D_t = es_t.radius;
  rep.es.feasible_r = es_r.feasible;
  rep.es.feasible_t = es_t.feasible;
  rep.es.rayleigh_warning = (es_r.feasible && es_r.radius <= d_ray) ||
                            (es_t.feasible && es_t.radius <= d_ray);

  if (cfg.oma_tau) {
    const SideResult r = radius_oma(cfg.budget, cfg.budget.chi_r, *cfg.oma_tau, cfg.targets.rate_r);
    const SideResult t =
        radius_oma(cfg.budget, cfg.budget.chi_t, 1.0 - *cfg.oma_tau, cfg.targets.rate_t);
    rep.oma.tau_star = *cfg.oma_tau;
    rep.oma.D_r = r.radius;
    rep.oma.D_t = t.radius;
    rep.oma.D_tot = r.radius + t.radius;
    rep.oma.feasible = r.feasible && t.feasible;
  } else {
    rep.oma = maximize_oma_coverage(cfg.budget, cfg.targets);
  }
  rep.noma = maximize_noma_coverage(cfg.budget, cfg.targets);

  rep.any_feasible = rep.es.feasible_r || rep.es.feasible_t || rep.oma.feasible ||
                     rep.noma.feasible;

  std::ostringstream os;
  os << "rayleigh_distance_m=" << fmt(d_ray) << '\n';
  os << "es beta_r=" << fmt(cfg.beta_r) << " D_r=" << fmt(rep.es.D_r)
     << " D_t=" << fmt(rep.es.D_t) << " D_tot=" << fmt(rep.es.D_tot())
     << " feasible=" << (rep.es.feasible_r && rep.es.feasible_t ? "yes" : "no")
     << " rayleigh_warning=" << (rep.es.rayleigh_warning ? "yes" : "no") << '\n';
  os << "oma tau=" << fmt(rep.oma.tau_star) << " D_r=" << fmt(rep.oma.D_r)
     << " D_t=" << fmt(rep.oma.D_t) << " D_tot=" << fmt(rep.oma.D_tot)
     << " feasible=" << (rep.oma.feasible ? "yes" : "no") << '\n';
  os << "noma beta_r=" << fmt(rep.noma.beta_r) << " p_r=" << fmt(rep.noma.p_r)
     << " strong=" << (rep.noma.strong_user == 0 ? "r" : "t") << " D_r=" << fmt(rep.noma.D_r)
     << " D_t=" << fmt(rep.noma.D_t) << " D_tot=" << fmt(rep.noma.D_tot)
     << " feasible=" << (rep.noma.feasible ? "yes" : "no") << '\n';
  rep.text = os.str();
  return rep;
}

BenchReport run_bench(const ExperimentConfig& cfg, const std::vector<int>& m_list,
                      const std::vector<int>& np_list) {
  BenchReport rep;
  std::ostringstream os;
  os << "mode,M,N_p,T,TotTime_s,Time_per_iter_ms,It99,D_tot_best\n";
  for (AccessMode mode : cfg.modes) {
    for (int m : m_list) {
      for (int np : np_list) {
        ExperimentConfig c = apply_axis(cfg, "M", static_cast<double>(m));
        c.pso.swarm = np;
        c.finalize();
        const RunOutcome o = run_single(c, mode, Surface::fires, cfg.seeds.front());
        BenchRow row;
        row.mode = mode_name(mode);
        row.M = m;
        row.N_p = np;
        row.T = c.pso.iterations;
        row.total_seconds = o.seconds;
        row.ms_per_iter = o.iterations > 0 ? 1000.0 * o.seconds / o.iterations : 0.0;
        row.it99 = o.it99;
        row.d_tot = o.D_tot;
        rep.rows.push_back(row);
        os << row.mode << ',' << row.M << ',' << row.N_p << ',' << row.T << ','
           << fmt(row.total_seconds) << ',' << fmt(row.ms_per_iter) << ',' << row.it99 << ','
           << fmt(row.d_tot) << '\n';
      }
    }
  }
  // Scaling summaries: runtime should grow about linearly with the swarm size
  // and per-iteration time roughly with M^2 for the channel step.
  for (AccessMode mode : cfg.modes) {
    const char* mn = mode_name(mode);
    for (int m : m_list) {
      const BenchRow* lo = nullptr;
      const BenchRow* hi = nullptr;
      for (const BenchRow& r : rep.rows) {
        if (r.mode != mn || r.M != m) continue;
        if (lo == nullptr || r.N_p < lo->N_p) lo = &r;
        if (hi == nullptr || r.N_p > hi->N_p) hi = &r;
      }
      if (lo != nullptr && hi != nullptr && lo->N_p < hi->N_p && lo->total_seconds > 0.0) {
        const double ratio = hi->total_seconds / lo->total_seconds;
        const double np_ratio = static_cast<double>(hi->N_p) / lo->N_p;
        os << "# " << mn << " M=" << m << " runtime(N_p=" << hi->N_p << ")/runtime(N_p=" << lo->N_p
           << ")=" << fmt(ratio) << " (linear target " << fmt(np_ratio) << ")\n";
      }
    }
    if (m_list.size() >= 2) {
      const int m0 = m_list.front();
      const int m1 = m_list.back();
      const BenchRow* a = nullptr;
      const BenchRow* b = nullptr;
      for (const BenchRow& r : rep.rows) {
        if (r.mode != mn) continue;
        if (r.M == m0 && (a == nullptr)) a = &r;
        if (r.M == m1 && (b == nullptr)) b = &r;
      }
      if (a != nullptr && b != nullptr && a->ms_per_iter > 0.0) {
        os << "# " << mn << " time_per_iter(M=" << m1 << ")/(M=" << m0
           << ")=" << fmt(b->ms_per_iter / a->ms_per_iter) << " (M^2 target "
           << fmt(static_cast<double>(m1) * m1 / (static_cast<double>(m0) * m0)) << ")\n";
      }
    }
  }
  rep.text = os.str();
  return rep;
}

}  // namespace fires
