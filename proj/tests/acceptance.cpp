// Acceptance suite: one check per shipped guarantee, each printed as a
// PASS/FAIL line with the measured numbers. Exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fires/access.hpp"
#include "fires/channel.hpp"
#include "fires/coverage.hpp"
#include "fires/geometry.hpp"
#include "fires/harness.hpp"
#include "fires/parallel.hpp"
#include "fires/pso.hpp"
#include "fires/rng.hpp"
#include "fires/units.hpp"

using namespace fires;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Criterion {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Criterion> g_results;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  g_results.push_back({id, name, pass, detail});
  std::printf("[%s] criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// independent oracles (duplicated here on purpose; they must not share code
// with the closed forms they check)

double oracle_snr(double P, double sigma2, double beta, double chi, int M, double rho0,
                  double d_f, double alpha, double D) {
  return (P / sigma2) * beta * chi * chi * double(M) * double(M) * rho0 * rho0 *
         std::pow(d_f, -alpha) * std::pow(D, -alpha);
}

double bisect_decreasing(const std::function<double(double)>& f, double lo = 1e-3,
                         double hi = 1e6) {
  double f_lo = f(lo);
  if (f_lo < 0.0) return 0.0;
  if (f(hi) > 0.0) return hi;
  for (int it = 0; it < 220; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct BruteNoma {
  double value{-1.0};
  bool found{false};
};

BruteNoma brute_noma(double W_r, double W_t, double alpha, const QosTargets& targets, int n) {
  const bool r_strong = W_r >= W_t;
  const double W_s = r_strong ? W_r : W_t;
  const double W_w = r_strong ? W_t : W_r;
  const double gamma_s = QosTargets::noma_threshold(r_strong ? targets.rate_r : targets.rate_t);
  const double gamma_w = QosTargets::noma_threshold(r_strong ? targets.rate_t : targets.rate_r);
  const double s = 1.0 / alpha;
  BruteNoma best;
  for (int i = 1; i + 1 < n; ++i) {
    const double beta = double(i) / (n - 1);
    for (int j = 1; j + 1 < n; ++j) {
      const double p = double(j) / (n - 1);
      const double head = (1.0 - p) - p * gamma_w;
      if (head <= 0.0) break;  // head decreases in p
      const double d_s = std::pow(W_s * beta * p / gamma_s, s);
      const double d_w = std::pow(W_w * (1.0 - beta) * head / gamma_w, s);
      if (!(d_s > 0.0) || !(d_w > 0.0)) continue;
      best.found = true;
      best.value = std::max(best.value, d_s + d_w);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

void criterion_1() {
  auto gen = rng::stream(20260811, rng::kValidation, 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double t0 = now_seconds();
  int checked = 0;
  double worst = 0.0;
  bool ok = true;
  std::string fail_note;

  auto draw_budget = [&](LinkBudget& b, double& chi) {
    b.P = std::pow(10.0, -2.0 + 3.0 * u(gen));
    b.sigma2 = std::pow(10.0, -15.0 + 6.0 * u(gen));
    b.rho0 = std::pow(10.0, -3.0 + 3.0 * u(gen));
    b.alpha = 1.9 + 1.6 * u(gen);
    b.d_f = 5.0 + 195.0 * u(gen);
    b.elements = 4 + int(gen() % 97);
    chi = 0.3 + 0.7 * u(gen);
  };
  auto in_range = [](double r) { return r > 1e-2 && r < 1e5; };

  while (checked < 1000) {
    LinkBudget b;
    double chi = 1.0;
    draw_budget(b, chi);

    // energy-splitting radius
    const double beta = 0.05 + 0.95 * u(gen);
    const double gamma = std::pow(10.0, -2.0 + 5.0 * u(gen));
    const SideResult es = radius_es(b, beta, chi, gamma);
    if (!es.feasible || !in_range(es.radius)) continue;
    const double es_want = bisect_decreasing([&](double D) {
      return oracle_snr(b.P, b.sigma2, beta, chi, b.elements, b.rho0, b.d_f, b.alpha, D) - gamma;
    });
    double err = std::abs(es.radius - es_want) / es_want;
    worst = std::max(worst, err);
    if (err > 1e-9) {
      ok = false;
      fail_note = "es radius mismatch";
      break;
    }

    // time-share radius
    const double tau = 0.05 + 0.9 * u(gen);
    const double rate = 0.1 + 4.9 * u(gen);
    const SideResult oma = radius_oma(b, chi, tau, rate);
    if (!oma.feasible || !in_range(oma.radius)) continue;
    const double g_oma = std::exp2(rate / tau) - 1.0;
    const double oma_want = bisect_decreasing([&](double D) {
      return oracle_snr(b.P, b.sigma2, 1.0, chi, b.elements, b.rho0, b.d_f, b.alpha, D) - g_oma;
    });
    err = std::abs(oma.radius - oma_want) / oma_want;
    worst = std::max(worst, err);
    if (err > 1e-9) {
      ok = false;
      fail_note = "time-share radius mismatch";
      break;
    }

    // power-domain pair
    const double beta_r = 0.05 + 0.9 * u(gen);
    const double p_r = 0.02 + 0.5 * u(gen);
    const double rate_r = 0.2 + 2.0 * u(gen);
    const double rate_t = 0.2 + 2.0 * u(gen);
    const double g_r = std::exp2(rate_r) - 1.0;
    const double g_t = std::exp2(rate_t) - 1.0;
    const double p_t = 1.0 - p_r;
    if (p_t - p_r * g_t <= 1e-6) continue;
    const NomaRadii nr = radius_noma(b, beta_r, 1.0 - beta_r, p_r, p_t, chi, chi, g_r, g_t);
    if (!nr.feasible_r || !nr.feasible_t || !in_range(nr.D_r) || !in_range(nr.D_t)) continue;
    const double strong_want = bisect_decreasing([&](double D) {
      return p_r * oracle_snr(b.P, b.sigma2, beta_r, chi, b.elements, b.rho0, b.d_f, b.alpha, D) -
             g_r;
    });
    err = std::abs(nr.D_r - strong_want) / strong_want;
    worst = std::max(worst, err);
    if (err > 1e-9) {
      ok = false;
      fail_note = "strong-user radius mismatch";
      break;
    }
    const double weak_want = bisect_decreasing([&](double D) {
      const double G = oracle_snr(b.P, b.sigma2, 1.0, chi, b.elements, b.rho0, b.d_f, b.alpha, D);
      const double bt = 1.0 - beta_r;
      return bt * p_t * G / (bt * p_r * G + 1.0) - g_t;
    });
    err = std::abs(nr.D_t - weak_want) / weak_want;
    worst = std::max(worst, err);
    if (err > 1e-9) {
      ok = false;
      fail_note = "weak-user radius mismatch";
      break;
    }
    ++checked;
  }
  const double secs = now_seconds() - t0;
  if (secs >= 5.0) {
    ok = false;
    fail_note += " runtime over budget";
  }
  std::ostringstream os;
  os << checked << " tuples, worst rel err " << worst << ", " << secs << " s";
  if (!ok) os << " (" << fail_note << ")";
  report(1, "closed forms match bisection oracles to 1e-9", ok, os.str());
}

void criterion_2() {
  const double chi_q2 = phase_attenuation(PhaseErrorModel::quantized(2));
  const bool q2_ok = std::abs(chi_q2 - 2.0 / std::acos(-1.0)) < 1e-15;
  const bool g0_ok = phase_attenuation(PhaseErrorModel::gaussian(0.0)) == 1.0;

  LinkBudget b;
  b.P = units::dbm_to_watt(30.0);
  b.sigma2 = units::dbm_to_watt(-114.0);
  b.rho0 = units::db_to_linear(-13.3);
  b.alpha = 2.1;
  b.d_f = 50.0;
  b.elements = 36;
  const double sigma2_phase = 0.5;
  const double chi = phase_attenuation(PhaseErrorModel::gaussian(sigma2_phase));
  const double ratio = radius_es(b, 1.0, chi, 2.0).radius / radius_es(b, 1.0, 1.0, 2.0).radius;
  const double want = std::exp(-sigma2_phase / b.alpha);
  const bool ratio_ok = std::abs(ratio - want) <= 1e-6;

  std::ostringstream os;
  os << "chi(Q=2)=" << chi_q2 << ", chi(0)=1 exact=" << (g0_ok ? "yes" : "no")
     << ", jitter ratio=" << ratio << " vs " << want;
  report(2, "phase-error laws (2/pi exact, jitter coverage ratio)", q2_ok && g0_ok && ratio_ok,
         os.str());
}

void criterion_3() {
  bool ok = true;
  std::ostringstream os;

  // pitch = lambda/4, so a 2-step axis offset sits exactly at lambda/2
  ApertureConfig zcfg;
  zcfg.A_h = 0.5;
  zcfg.A_v = 0.5;
  zcfg.M_h = 1;
  zcfg.M_v = 1;
  zcfg.N_h_sub = 5;
  zcfg.N_v_sub = 5;
  zcfg.lambda = 0.5;
  const CorrelationModel zero_corr(zcfg);
  double worst_zero = 0.0;
  for (int k = 0; k < 3; ++k) {
    worst_zero = std::max(worst_zero,
                          std::abs(zero_corr.entry(GridIndex{k, 1}, GridIndex{k + 2, 1})));
    worst_zero = std::max(worst_zero,
                          std::abs(zero_corr.entry(GridIndex{1, k}, GridIndex{1, k + 2})));
  }
  ok = ok && worst_zero < 1e-12;

  const Eigen::MatrixXd R0 = zero_corr.full();
  ok = ok && (R0 - R0.transpose()).cwiseAbs().maxCoeff() == 0.0;
  for (Eigen::Index i = 0; i < R0.rows(); ++i) ok = ok && R0(i, i) == 1.0;

  // empirical covariance over 1e5 correlated draws on a strongly coupled set
  ApertureConfig cfg;
  cfg.A_h = 0.04;
  cfg.A_v = 0.04;
  cfg.M_h = 2;
  cfg.M_v = 2;
  cfg.N_h_sub = 2;
  cfg.N_v_sub = 2;
  cfg.lambda = units::wavelength_m(3.5e9);
  const CorrelationModel corr(cfg);
  const Placement p = center_placement(cfg);
  const Eigen::MatrixXd R = corr.active(p);
  const Eigen::MatrixXd F = corr.active_factor(p);
  const int m = cfg.subarea_count();
  auto gen = rng::stream(20260811, rng::kValidation, 3);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m, m);
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXcd z = F * complex_normal(m, gen);
    acc += z * z.adjoint();
  }
  const Eigen::MatrixXd emp = (acc / double(draws)).real();
  const double worst_emp = (emp - R).cwiseAbs().maxCoeff();
  ok = ok && worst_emp <= 0.03;

  os << "max |entry| at lambda/2 offsets " << worst_zero << ", empirical covariance max dev "
     << worst_emp << " over " << draws << " draws";
  report(3, "grid covariance structure and empirical match", ok, os.str());
}

void criterion_4() {
  bool ok = true;
  std::ostringstream os;

  LinkBudget b;
  b.P = units::dbm_to_watt(30.0);
  b.sigma2 = units::dbm_to_watt(-114.0);
  b.rho0 = units::db_to_linear(-13.3);
  b.alpha = 2.1;
  b.d_f = 50.0;
  b.elements = 36;
  const QosTargets sym{1.0, 1.0};

  const InnerSolutionOMA s = maximize_oma_coverage(b, sym);
  const double tau_dev = std::abs(s.tau_star - 0.5);
  ok = ok && s.feasible && tau_dev <= 1e-6;

  // dense-grid agreement on an asymmetric instance
  const double W_r = 1e9;
  const double W_t = 2e8;
  const QosTargets asym{1.0, 1.5};
  const InnerSolutionOMA sa = maximize_oma_coverage(W_r, W_t, 2.1, asym);
  const int n = 100000;
  const double lo = 1e-4;
  const double hi = 1.0 - 1e-4;
  double best_tau = lo;
  double best_v = -1.0;
  for (int i = 0; i < n; ++i) {
    const double tau = lo + (hi - lo) * i / (n - 1);
    const double v = oma_radius_from_factor(W_r, tau, asym.rate_r, 2.1).radius +
                     oma_radius_from_factor(W_t, 1.0 - tau, asym.rate_t, 2.1).radius;
    if (v > best_v) {
      best_v = v;
      best_tau = tau;
    }
  }
  const double step = (hi - lo) / (n - 1);
  const double grid_dev = std::abs(sa.tau_star - best_tau);
  ok = ok && grid_dev <= step + 1e-12;

  // both QoS constraints tight at the returned solution
  const double W_sym = b.unit_gain(1.0);
  const double rate_r = s.tau_star * std::log2(1.0 + W_sym * std::pow(s.D_r, -b.alpha));
  const double rate_t = (1.0 - s.tau_star) * std::log2(1.0 + W_sym * std::pow(s.D_t, -b.alpha));
  const double margin = std::max(std::abs(rate_r - sym.rate_r), std::abs(rate_t - sym.rate_t));
  ok = ok && margin < 1e-12;

  os << "tau* dev " << tau_dev << ", grid dev " << grid_dev << " (step " << step << ")"
     << ", max tightness margin " << margin;
  report(4, "time-share inner solver (symmetry, grid oracle, tightness)", ok, os.str());
}

void criterion_5() {
  bool grid_ok = true;
  bool boundary_ok = true;
  std::ostringstream os;

  // (i) solver vs 2000x2000 brute force
  auto gen = rng::stream(20260811, rng::kValidation, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double W_r = std::pow(10.0, 8.0 + 3.0 * u(gen));
    const double W_t = std::pow(10.0, 8.0 + 3.0 * u(gen));
    const double alpha = 2.0 + u(gen);
    const QosTargets targets{0.5 + 2.0 * u(gen), 0.5 + 2.0 * u(gen)};
    const InnerSolutionNOMA sol = maximize_noma_coverage(W_r, W_t, alpha, targets);
    const BruteNoma brute = brute_noma(W_r, W_t, alpha, targets, 2000);
    if (!sol.feasible || !brute.found) {
      grid_ok = grid_ok && (sol.feasible == brute.found);
      continue;
    }
    const double err = std::abs(sol.D_tot - brute.value) / brute.value;
    worst = std::max(worst, err);
    grid_ok = grid_ok && err <= 0.005;
  }

  // (ii) weak radius exactly zero on p_t <= p_r * gamma
  LinkBudget b;
  b.P = 1.0;
  b.sigma2 = 1e-12;
  b.rho0 = 0.05;
  b.alpha = 2.1;
  b.d_f = 50.0;
  b.elements = 36;
  const double gamma = 1.0;
  for (double p_r : {0.5, 0.6, 0.75, 0.9}) {  // p_t = 1-p_r <= p_r * 1
    const NomaRadii r = radius_noma(b, 0.5, 0.5, p_r, 1.0 - p_r, 1.0, 1.0, gamma, gamma);
    boundary_ok = boundary_ok && r.D_t == 0.0 && !r.feasible_t;
  }
  {
    const NomaRadii r = radius_noma(b, 0.5, 0.5, 0.49, 0.51, 1.0, 1.0, gamma, gamma);
    boundary_ok = boundary_ok && r.D_t > 0.0;
  }

  // (iii) dominance over the time-share optimum on random feasible instances
  int feasible_pairs = 0;
  int dominated = 0;
  int attempts = 0;
  while (feasible_pairs < 100 && attempts < 5000) {
    ++attempts;
    const double W_r = std::pow(10.0, 8.0 + 4.0 * u(gen));
    const double W_t = W_r * std::pow(10.0, -1.0 + 2.0 * u(gen));
    const double alpha = 2.0 + u(gen);
    const QosTargets targets{0.5 + 3.5 * u(gen), 0.5 + 3.5 * u(gen)};
    const InnerSolutionOMA oma = maximize_oma_coverage(W_r, W_t, alpha, targets);
    const InnerSolutionNOMA noma = maximize_noma_coverage(W_r, W_t, alpha, targets);
    if (!oma.feasible || !noma.feasible) continue;
    ++feasible_pairs;
    if (noma.D_tot >= oma.D_tot - 1e-9) ++dominated;
  }
  const bool dominance_ok = feasible_pairs == 100 && dominated >= 99;

  os << "grid worst rel err " << worst << "; boundary zeros " << (boundary_ok ? "exact" : "BROKEN")
     << "; dominance " << dominated << "/" << feasible_pairs
     << " (superposition dominance does not hold for the printed closed forms; see notes)";
  report(5, "power-domain inner solver (grid oracle, SIC boundary, dominance)",
         grid_ok && boundary_ok && dominance_ok, os.str());
}

struct SweepSummary {
  std::map<std::string, std::vector<double>> curves;  // key: mode|surface -> means by value
};

SweepSummary run_axis(const ExperimentConfig& base, const std::string& axis,
                      const std::vector<double>& values, bool both_surfaces) {
  ExperimentConfig cfg = base;
  cfg.sweep = SweepSpec{axis, values};
  cfg.surfaces = both_surfaces ? std::vector<Surface>{Surface::fires, Surface::star}
                               : std::vector<Surface>{Surface::fires};
  const auto rows = run_sweep(cfg);
  SweepSummary out;
  for (const auto& r : rows) out.curves[r.mode + "|" + r.surface].push_back(r.d_tot_mean);
  return out;
}

bool nondecreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] < xs[i - 1]) return false;
  return true;
}

bool nonincreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[i - 1]) return false;
  return true;
}

ExperimentConfig acceptance_base() {
  ExperimentConfig cfg = default_config();
  cfg.pso.swarm = 30;
  cfg.pso.iterations = 60;
  cfg.pso.w_max = 0.4;  // constant-inertia desk preset
  cfg.pso.w_min = 0.4;
  cfg.pso.mc_draws = 5;
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.threads = 0;
  return cfg;
}

SweepSummary g_m_axis;  // shared between criteria 6 and 7

void criterion_6() {
  const ExperimentConfig base = acceptance_base();
  bool ok = true;
  std::ostringstream os;

  struct Axis {
    const char* name;
    std::vector<double> values;
    bool increasing;
    bool both_surfaces;
  };
  const std::vector<Axis> axes = {
      {"P_dBm", {20.0, 25.0, 30.0}, true, false},
      {"M", {16.0, 36.0, 64.0}, true, true},
      {"Q", {2.0, 4.0, 8.0, 16.0}, true, false},
      {"K", {0.0, 1.0, 5.0, 20.0}, true, false},
      {"R_tar", {0.5, 1.0, 2.0, 4.0}, false, false},
      {"sigma_phi2", {0.0, 0.25, 0.5}, false, false},
  };

  for (const Axis& axis : axes) {
    const SweepSummary summary = run_axis(base, axis.name, axis.values, axis.both_surfaces);
    if (std::string(axis.name) == "M") g_m_axis = summary;
    for (const char* mode : {"oma", "noma"}) {
      const auto it = summary.curves.find(std::string(mode) + "|fires");
      if (it == summary.curves.end() || it->second.size() != axis.values.size()) {
        ok = false;
        os << axis.name << "/" << mode << ": missing rows; ";
        continue;
      }
      const bool mono = axis.increasing ? nondecreasing(it->second) : nonincreasing(it->second);
      if (!mono) {
        ok = false;
        os << axis.name << "/" << mode << ": not monotone; ";
      }
    }
  }
  if (ok) os << "all six axes monotone for both modes (10-seed means)";
  report(6, "monotone coverage trends at desk defaults", ok, os.str());
}

void criterion_7() {
  bool fires_ok = true;
  bool noma_ok = true;
  bool m_ok = true;
  std::ostringstream os;
  // g_m_axis rows: values {16, 36, 64}; orderings use 36 and 64
  auto get = [&](const char* mode, const char* surf, int idx) {
    const auto it = g_m_axis.curves.find(std::string(mode) + "|" + surf);
    return (it != g_m_axis.curves.end() && idx < int(it->second.size()))
               ? it->second[std::size_t(idx)]
               : -1.0;
  };
  for (const char* mode : {"oma", "noma"}) {
    for (int idx : {1, 2}) {  // M = 36, 64
      if (get(mode, "fires", idx) < get(mode, "star", idx)) fires_ok = false;
    }
  }
  for (const char* surf : {"fires", "star"}) {
    for (int idx : {1, 2}) {
      if (get("noma", surf, idx) < get("oma", surf, idx)) noma_ok = false;
    }
  }
  for (const char* mode : {"oma", "noma"}) {
    for (const char* surf : {"fires", "star"}) {
      if (!(get(mode, surf, 2) > get(mode, surf, 1))) m_ok = false;
    }
  }
  os << "fires>=star " << (fires_ok ? "yes" : "NO") << "; noma>=oma " << (noma_ok ? "yes" : "NO")
     << " (oma@36 fires " << get("oma", "fires", 1) << " vs noma " << get("noma", "fires", 1)
     << "; printed closed forms favor time sharing, see notes)"
     << "; M64>M36 " << (m_ok ? "yes" : "NO");
  report(7, "surface/mode/element-count orderings", fires_ok && noma_ok && m_ok, os.str());
}

void criterion_8() {
  ExperimentConfig cfg = default_config();
  cfg.pso.swarm = 30;
  cfg.pso.iterations = 80;
  cfg.pso.mc_draws = 5;
  cfg.pso.threads = resolve_threads(0);
  const CoverageProblem problem = make_problem(cfg, AccessMode::oma);
  int early = 0;
  bool monotone = true;
  double worst_secs = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PsoResult res = optimize(problem, cfg.pso, seed);
    for (std::size_t i = 1; i < res.trace.size(); ++i)
      monotone = monotone && res.trace[i] >= res.trace[i - 1];
    if (res.it99 <= 40) ++early;
    worst_secs = std::max(worst_secs, res.total_seconds);
  }
  const bool ok = monotone && early >= 8 && worst_secs < 60.0;
  std::ostringstream os;
  os << "trace monotone " << (monotone ? "yes" : "NO") << ", it99<=40 on " << early
     << "/10 seeds, slowest run " << worst_secs << " s";
  report(8, "outer-search convergence behavior", ok, os.str());
}

void criterion_9() {
  ExperimentConfig cfg = default_config();
  std::vector<double> values;
  for (int i = 1; i <= 19; ++i) values.push_back(0.05 * i);
  cfg.sweep = SweepSpec{"beta_r", values};
  const auto rows = run_sweep(cfg);
  bool inc = true;
  bool dec = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    inc = inc && rows[i].d_r_mean > rows[i - 1].d_r_mean;
    dec = dec && rows[i].d_t_mean < rows[i - 1].d_t_mean;
  }
  double crossing = -1.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].d_r_mean >= rows[i].d_t_mean) {
      if (i == 0) break;
      // linear interpolation of the sign change between grid points
      const double x0 = rows[i - 1].axis_value;
      const double x1 = rows[i].axis_value;
      const double g0 = rows[i - 1].d_r_mean - rows[i - 1].d_t_mean;
      const double g1 = rows[i].d_r_mean - rows[i].d_t_mean;
      crossing = g1 == g0 ? x1 : x0 + (x1 - x0) * (0.0 - g0) / (g1 - g0);
      break;
    }
  }
  const bool cross_ok = crossing >= 0.45 && crossing <= 0.55;
  std::ostringstream os;
  os << "D_r strictly increasing " << (inc ? "yes" : "NO") << ", D_t strictly decreasing "
     << (dec ? "yes" : "NO") << ", crossing at beta_r=" << crossing;
  report(9, "energy-split sweep shape and crossing", inc && dec && cross_ok, os.str());
}

void criterion_10() {
  ExperimentConfig cfg = parse_config(R"({
    "aperture": {"M_h": 3, "M_v": 3, "N_h_sub": 5, "N_v_sub": 5},
    "pso": {"N_p": 6, "T": 4, "N_MC": 2},
    "seeds": [1, 2],
    "mode": "both",
    "surface": "both",
    "threads": 4,
    "sweep": {"axis": "K", "values": [0.0, 5.0]}
  })",
                                      "acceptance10");
  const std::string a = csv_string(run_sweep(cfg));
  const std::string b = csv_string(run_sweep(cfg));
  ExperimentConfig serial = cfg;
  serial.threads = 1;
  const std::string c = csv_string(run_sweep(serial));
  const bool ok = a == b && a == c;
  std::ostringstream os;
  os << "parallel re-run identical " << (a == b ? "yes" : "NO") << ", serial equals parallel "
     << (a == c ? "yes" : "NO") << " (" << a.size() << " bytes)";
  report(10, "byte-identical CSV under identical config and seeds", ok, os.str());
}

}  // namespace

int main() {
  const double t0 = now_seconds();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();

  int failed = 0;
  for (const Criterion& c : g_results)
    if (!c.pass) ++failed;
  std::printf("%d/%zu criteria passed (%.1f s total)\n", int(g_results.size()) - failed,
              g_results.size(), now_seconds() - t0);
  return failed == 0 ? 0 : 1;
}
