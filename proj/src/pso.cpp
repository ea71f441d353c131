#include "fires/pso.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fires/parallel.hpp"
#include "fires/rng.hpp"

namespace fires {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// Rate user u would see at unit distance with every resource devoted to it;
// the shortfall against the target feeds the infeasibility penalty.
double rate_shortfall(double W, double rate_target) {
  const double rate = std::log2(1.0 + std::max(W, 0.0));
  return std::max(0.0, rate_target - rate);
}

Placement snap_and_repair(const ApertureConfig& cfg, const std::vector<double>& y,
                          int* residual_out) {
  const int m_count = cfg.subarea_count();
  Placement p;
  p.active.reserve(static_cast<std::size_t>(m_count));
  for (int m = 0; m < m_count; ++m) {
    const Vec2 unit{y[static_cast<std::size_t>(2 * m)], y[static_cast<std::size_t>(2 * m + 1)]};
    p.active.push_back(snap(cfg, m, unit));
  }
  RepairResult repaired = repair_spacing(cfg, p);
  if (residual_out != nullptr) *residual_out = repaired.residual;
  return std::move(repaired.placement);
}

}  // namespace

void PsoConfig::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(std::string("pso: ") + what); };
  if (swarm < 1 || iterations < 1) fail("swarm size and iterations must be at least 1");
  if (!(w_min > 0.0) || !(w_min <= w_max)) fail("inertia endpoints need 0 < w_min <= w_max");
  if (c1 < 0.0 || c2 < 0.0) fail("acceleration coefficients must be nonnegative");
  if (!(v_max > 0.0)) fail("velocity clamp must be positive");
  if (!(mu_space > 0.0) || !(mu_q > 0.0)) fail("penalty weights must be positive");
  if (mc_draws < 1) fail("at least one fading draw per evaluation");
  if (stall_window < 1) fail("stall window must be at least 1");
  if (seeded_fraction < 0.0 || seeded_fraction > 1.0) fail("seeded fraction outside [0, 1]");
}

double inertia_weight(const PsoConfig& cfg, int t) {
  const double T = static_cast<double>(cfg.iterations);
  return cfg.w_min + (cfg.w_max - cfg.w_min) * (T - t) / T;
}

CoverageProblem::CoverageProblem(const ApertureConfig& aperture, const LinkBudget& budget,
                                 const HopSet& hops, const QosTargets& targets, AccessMode mode)
    : aperture_(aperture),
      budget_(budget),
      hops_(hops),
      targets_(targets),
      mode_(mode),
      corr_(aperture) {
  aperture_.validate();
  budget_.validate();
  targets_.validate();
  hops_.f.validate();
  hops_.r.validate();
  hops_.t.validate();
  if (budget_.elements != aperture_.subarea_count())
    throw std::invalid_argument("problem: budget element count must match subarea count");
  // Realized-gain convention: feeder hop carries rho0 * d_f^-alpha, user hops
  // are referenced to unit distance (rho0), so radii come straight from the
  // realized SNR factor.
  hops_.f.gain = budget_.rho0 * std::pow(budget_.d_f, -budget_.alpha);
  hops_.r.gain = budget_.rho0;
  hops_.t.gain = budget_.rho0;
  if (mode_ == AccessMode::noma)
    noma_ = std::make_shared<const NomaCoverageSolver>(budget_.alpha, targets_);
}

FadingDraws CoverageProblem::make_draws(std::uint64_t seed, int mc_draws) const {
  FadingDraws draws;
  draws.g.resize(static_cast<std::size_t>(mc_draws));
  const int m = aperture_.subarea_count();
  for (int k = 0; k < mc_draws; ++k) {
    for (int q = 0; q < 3; ++q) {
      auto gen = rng::stream(seed, rng::kChannel, static_cast<std::uint64_t>(k),
                             static_cast<std::uint64_t>(q));
      draws.g[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] = complex_normal(m, gen);
    }
  }
  return draws;
}

ScoreBreakdown CoverageProblem::score(const Placement& placement, const FadingDraws& draws,
                                      double mu_space, double mu_q) const {
  ScoreBreakdown out;
  const std::vector<Vec2> positions = placement_positions(aperture_, placement);
  out.b_space = spacing_violations(aperture_, positions);

  const Eigen::MatrixXd factor = corr_.active_factor(placement);
  const Eigen::VectorXcd los_f =
      steering_vector(aperture_, positions, hops_.f.azimuth, hops_.f.elevation);
  const Eigen::VectorXcd los_r =
      steering_vector(aperture_, positions, hops_.r.azimuth, hops_.r.elevation);
  const Eigen::VectorXcd los_t =
      steering_vector(aperture_, positions, hops_.t.azimuth, hops_.t.elevation);

  const int draws_n = static_cast<int>(draws.g.size());
  double d_r_sum = 0.0;
  double d_t_sum = 0.0;
  double b_q_sum = 0.0;
  int feasible_draws = 0;
  for (int k = 0; k < draws_n; ++k) {
    const auto& g = draws.g[static_cast<std::size_t>(k)];
    const HopChannel h_f = compose_hop(hops_.f, los_f, factor, g[0]);
    const HopChannel h_r = compose_hop(hops_.r, los_r, factor, g[1]);
    const HopChannel h_t = compose_hop(hops_.t, los_t, factor, g[2]);
    const EffectiveGains gains =
        make_effective_gains(budget_, cascaded_gain(h_f, h_r), cascaded_gain(h_f, h_t));
    const double W_r = gains.S_r;
    const double W_t = gains.S_t;

    double d_r = 0.0;
    double d_t = 0.0;
    bool feasible = false;
    if (mode_ == AccessMode::oma) {
      const InnerSolutionOMA sol = maximize_oma_coverage(W_r, W_t, budget_.alpha, targets_);
      d_r = sol.D_r;
      d_t = sol.D_t;
      feasible = sol.feasible;
      if (k == 0) out.oma = sol;
    } else {
      const InnerSolutionNOMA sol = noma_->solve(W_r, W_t);
      d_r = sol.D_r;
      d_t = sol.D_t;
      feasible = sol.feasible;
      if (k == 0) out.noma = sol;
    }
    d_r_sum += d_r;
    d_t_sum += d_t;
    if (feasible) {
      ++feasible_draws;
    } else {
      b_q_sum += 1.0 + rate_shortfall(W_r, targets_.rate_r) + rate_shortfall(W_t, targets_.rate_t);
    }
  }

  out.D_r = d_r_sum / draws_n;
  out.D_t = d_t_sum / draws_n;
  out.D_tot = out.D_r + out.D_t;
  out.b_q = b_q_sum / draws_n;
  out.feasible_fraction = static_cast<double>(feasible_draws) / draws_n;
  out.feasible = feasible_draws == draws_n;
  out.J = out.D_tot - mu_space * out.b_space - mu_q * out.b_q;
  return out;
}

Swarm init_swarm(const CoverageProblem& problem, const PsoConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const ApertureConfig& ap = problem.aperture();
  const int m_count = ap.subarea_count();
  const int dims = 2 * m_count;
  const int seeded = static_cast<int>(std::ceil(cfg.seeded_fraction * cfg.swarm));

  // Heuristic seed: per subarea, the preset maximizing the LoS magnitude
  // surrogate sum_u |a_u| * |a_f|. Plane-wave steering is unimodular, so the
  // surrogate ties everywhere and the tie rule (nearest subarea center, then
  // lowest local index) lands on the center preset.
  std::vector<double> seed_template(static_cast<std::size_t>(dims));
  for (int m = 0; m < m_count; ++m) {
    const SubareaBox box = subarea_box(ap, m);
    const Vec2 center{0.5 * (box.lo.x + box.hi.x), 0.5 * (box.lo.y + box.hi.y)};
    bool have = false;
    double best_score = 0.0;
    double best_center_d2 = 0.0;
    int best_local = 0;
    for (int local = 0; local < ap.presets_per_subarea(); ++local) {
      const Vec2 pos = preset_position(ap, PresetIndex{m, local});
      const std::vector<Vec2> single{pos};
      const double a_f = std::abs(
          steering_vector(ap, single, problem.hop_f().azimuth, problem.hop_f().elevation)[0]);
      const double a_r = std::abs(
          steering_vector(ap, single, problem.hop_r().azimuth, problem.hop_r().elevation)[0]);
      const double a_t = std::abs(
          steering_vector(ap, single, problem.hop_t().azimuth, problem.hop_t().elevation)[0]);
      const double score = a_r * a_f + a_t * a_f;
      const double dx = pos.x - center.x;
      const double dy = pos.y - center.y;
      const double d2 = dx * dx + dy * dy;
      bool take = false;
      if (!have || score > best_score + 1e-12) {
        take = true;
      } else if (score > best_score - 1e-12 && d2 + 1e-15 < best_center_d2) {
        take = true;  // surrogate tie: prefer the preset nearest the center
      }
      if (take) {
        have = true;
        best_score = score;
        best_center_d2 = d2;
        best_local = local;
      }
    }
    const Vec2 unit = unit_of_preset(ap, PresetIndex{m, best_local});
    seed_template[static_cast<std::size_t>(2 * m)] = unit.x;
    seed_template[static_cast<std::size_t>(2 * m + 1)] = unit.y;
  }

  auto gen = rng::stream(seed, rng::kInit);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> vel(-cfg.v_max, cfg.v_max);

  Swarm swarm;
  swarm.mu_space = cfg.mu_space;
  swarm.mu_q = cfg.mu_q;
  swarm.particles.resize(static_cast<std::size_t>(cfg.swarm));
  for (int p = 0; p < cfg.swarm; ++p) {
    Particle& particle = swarm.particles[static_cast<std::size_t>(p)];
    particle.y.resize(static_cast<std::size_t>(dims));
    particle.v.resize(static_cast<std::size_t>(dims));
    if (p < seeded) {
      particle.y = seed_template;
    } else {
      for (int d = 0; d < dims; ++d) particle.y[static_cast<std::size_t>(d)] = unit(gen);
    }
    for (int d = 0; d < dims; ++d) particle.v[static_cast<std::size_t>(d)] = vel(gen);
    particle.placement = snap_and_repair(ap, particle.y, &particle.repair_residual);
  }
  return swarm;
}

void score_swarm(Swarm& swarm, const CoverageProblem& problem, const PsoConfig& cfg,
                 const FadingDraws& draws, int iteration) {
  const int n = static_cast<int>(swarm.particles.size());
  parallel_for(n, cfg.threads, [&](int p) {
    Particle& particle = swarm.particles[static_cast<std::size_t>(p)];
    particle.last = problem.score(particle.placement, draws, swarm.mu_space, swarm.mu_q);
  });

  // Sequential reduction: pbest on strict improvement, gbest ties keep the
  // lowest particle index.
  for (int p = 0; p < n; ++p) {
    Particle& particle = swarm.particles[static_cast<std::size_t>(p)];
    if (!particle.scored || particle.last.J > particle.pbest_J) {
      particle.pbest_J = particle.last.J;
      particle.pbest_y = particle.y;
    }
    particle.scored = true;
    if (particle.last.b_space > 0.0 || particle.last.b_q > 0.0)
      swarm.any_violation_in_window = true;
    if (swarm.gbest_index < 0 || particle.last.J > swarm.best_score.J) {
      swarm.best_score = particle.last;
      swarm.best_placement = particle.placement;
    }
    if (swarm.gbest_index < 0 || particle.pbest_J > swarm.gbest_J) {
      swarm.gbest_J = particle.pbest_J;
      swarm.gbest_y = particle.pbest_y;
      swarm.gbest_index = p;
    }
  }

  if (cfg.penalty_every > 0 && (iteration + 1) % cfg.penalty_every == 0) {
    if (swarm.any_violation_in_window) {
      swarm.mu_space = std::min(swarm.mu_space * 2.0, cfg.mu_cap);
      swarm.mu_q = std::min(swarm.mu_q * 2.0, cfg.mu_cap);
    }
    swarm.any_violation_in_window = false;
  }
}

void step_swarm(Swarm& swarm, const CoverageProblem& problem, const PsoConfig& cfg, int iteration,
                std::mt19937_64& update_rng) {
  const double w = inertia_weight(cfg, iteration);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& particle : swarm.particles) {
    const std::size_t dims = particle.y.size();
    for (std::size_t d = 0; d < dims; ++d) {
      const double r1 = unit(update_rng);
      const double r2 = unit(update_rng);
      double v = w * particle.v[d] + cfg.c1 * r1 * (particle.pbest_y[d] - particle.y[d]) +
                 cfg.c2 * r2 * (swarm.gbest_y[d] - particle.y[d]);
      v = std::clamp(v, -cfg.v_max, cfg.v_max);
      particle.v[d] = v;
      particle.y[d] = std::clamp(particle.y[d] + v, 0.0, 1.0);
    }
    particle.placement = snap_and_repair(problem.aperture(), particle.y, &particle.repair_residual);
  }
}

int compute_it99(const std::vector<double>& trace) {
  if (trace.empty()) return 0;
  const double final_j = trace.back();
  const double threshold = final_j - 0.01 * std::abs(final_j);
  for (std::size_t i = 0; i < trace.size(); ++i)
    if (trace[i] >= threshold) return static_cast<int>(i);
  return static_cast<int>(trace.size()) - 1;
}

PsoResult optimize(const CoverageProblem& problem, const PsoConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const double t_start = now_seconds();
  Swarm swarm = init_swarm(problem, cfg, seed);
  auto update_rng = rng::stream(seed, rng::kUpdate);
  const FadingDraws draws = problem.make_draws(seed, cfg.mc_draws);

  PsoResult result;
  double last_best = 0.0;
  int stalled = 0;
  for (int t = 0; t < cfg.iterations; ++t) {
    const double iter_start = now_seconds();
    if (t > 0) step_swarm(swarm, problem, cfg, t, update_rng);
    score_swarm(swarm, problem, cfg, draws, t);
    result.trace.push_back(swarm.gbest_J);
    result.iter_seconds.push_back(now_seconds() - iter_start);
    result.iterations_run = t + 1;
    if (t > 0 && swarm.gbest_J - last_best <= cfg.stall_tol) {
      ++stalled;
    } else {
      stalled = 0;
    }
    last_best = swarm.gbest_J;
    if (stalled >= cfg.stall_window) break;
  }

  result.best_placement = swarm.best_placement;
  result.best = swarm.best_score;
  result.it99 = compute_it99(result.trace);
  result.total_seconds = now_seconds() - t_start;
  return result;
}

ScoreBreakdown evaluate_placement(const CoverageProblem& problem, const PsoConfig& cfg,
                                  const Placement& placement, std::uint64_t seed) {
  const FadingDraws draws = problem.make_draws(seed, cfg.mc_draws);
  return problem.score(placement, draws, cfg.mu_space, cfg.mu_q);
}

}  // namespace fires
