#include "fires/access.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fires {

namespace {

// Golden-section maximization; returns the best sampled (x, f(x)).
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double best_x = a;
  double best_f = f(a);
  const double f_hi = f(b);
  if (f_hi > best_f) {
    best_f = f_hi;
    best_x = b;
  }
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  auto track = [&](double x, double v) {
    if (v > best_f) {
      best_f = v;
      best_x = x;
    }
  };
  track(x1, f1);
  track(x2, f2);
  int guard = 0;
  while ((b - a) > tol && guard++ < 300) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
      track(x2, f2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
      track(x1, f1);
    }
  }
  return {best_x, best_f};
}

}  // namespace

EffectiveGains make_effective_gains(const LinkBudget& budget, double H_r, double H_t) {
  EffectiveGains g;
  g.S_r = budget.snr_scale() * budget.chi_r * budget.chi_r * H_r * H_r;
  g.S_t = budget.snr_scale() * budget.chi_t * budget.chi_t * H_t * H_t;
  g.G_r = g.S_r;  // full power folded in; see the field comment
  g.G_t = g.S_t;
  return g;
}

NomaSinrs noma_sinrs(double G_r, double G_t, double beta_r, double beta_t, double p_r,
                     double p_t) {
  NomaSinrs out;
  out.weak = beta_t * p_t * G_t / (beta_t * p_r * G_t + 1.0);
  out.cross = beta_t * p_t * G_r / (beta_t * p_r * G_r + 1.0);
  out.strong = beta_r * p_r * G_r;
  return out;
}

OmaSplit check_oma(double S_r, double S_t, const QosTargets& targets) {
  targets.validate();
  if (!(S_r >= 0.0) || !(S_t >= 0.0))
    throw std::invalid_argument("check_oma: SNR factors must be nonnegative");
  OmaSplit out;
  const double den_r = std::log2(1.0 + S_r);
  out.tau_star = den_r > 0.0 ? targets.rate_r / den_r : std::numeric_limits<double>::infinity();
  if (out.tau_star > 0.0 && out.tau_star < 1.0) {
    const double den_t = std::log2(1.0 + S_t);
    out.feasible = (1.0 - out.tau_star) * den_t >= targets.rate_t;
  }
  return out;
}

NomaFeasibility check_noma(double G_r, double G_t, double beta_r, double p_r,
                           const QosTargets& targets) {
  targets.validate();
  if (beta_r < 0.0 || beta_r > 1.0 || p_r < 0.0 || p_r > 1.0)
    throw std::invalid_argument("check_noma: splits outside [0, 1]");
  const NomaSinrs s = noma_sinrs(G_r, G_t, beta_r, 1.0 - beta_r, p_r, 1.0 - p_r);
  NomaFeasibility out;
  out.margin_weak = std::log2(1.0 + s.weak) - targets.rate_t;
  out.margin_strong = std::log2(1.0 + s.strong) - targets.rate_r;
  out.margin_sic = std::log2(1.0 + s.cross) - targets.rate_t;
  out.feasible = out.margin_weak >= 0.0 && out.margin_strong >= 0.0 && out.margin_sic >= 0.0;
  return out;
}

InnerSolutionOMA maximize_oma_coverage(double W_r, double W_t, double alpha,
                                       const QosTargets& targets) {
  targets.validate();
  constexpr double kLo = 1e-4;
  constexpr double kHi = 1.0 - 1e-4;
  auto d_tot = [&](double tau) {
    return oma_radius_from_factor(W_r, tau, targets.rate_r, alpha).radius +
           oma_radius_from_factor(W_t, 1.0 - tau, targets.rate_t, alpha).radius;
  };
  // Bracket first: the coverage objective can grow a second spike where one
  // slot collapses, so a plain golden section may latch onto the wrong basin.
  constexpr int kScan = 257;
  constexpr double kStep = (kHi - kLo) / (kScan - 1);
  int best_i = 0;
  double best_v = -1.0;
  for (int i = 0; i < kScan; ++i) {
    const double v = d_tot(kLo + i * kStep);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double b_lo = std::max(kLo, kLo + (best_i - 1) * kStep);
  const double b_hi = std::min(kHi, kLo + (best_i + 1) * kStep);
  const auto [tau, value] = golden_max(d_tot, b_lo, b_hi, 1e-7);
  InnerSolutionOMA out;
  out.tau_star = tau;
  const SideResult r = oma_radius_from_factor(W_r, tau, targets.rate_r, alpha);
  const SideResult t = oma_radius_from_factor(W_t, 1.0 - tau, targets.rate_t, alpha);
  out.D_r = r.radius;
  out.D_t = t.radius;
  out.D_tot = r.radius + t.radius;
  out.feasible = r.feasible && t.feasible;
  (void)value;
  return out;
}

InnerSolutionOMA maximize_oma_coverage(const LinkBudget& budget, const QosTargets& targets) {
  budget.validate();
  return maximize_oma_coverage(budget.unit_gain(budget.chi_r), budget.unit_gain(budget.chi_t),
                               budget.alpha, targets);
}

NomaCoverageSolver::NomaCoverageSolver(double alpha, const QosTargets& targets, int grid_n,
                                       int refine_sweeps)
    : alpha_(alpha),
      s_(1.0 / alpha),
      gamma_r_(QosTargets::noma_threshold(targets.rate_r)),
      gamma_t_(QosTargets::noma_threshold(targets.rate_t)),
      n_(grid_n),
      sweeps_(refine_sweeps) {
  if (!(alpha > 0.0)) throw std::invalid_argument("noma solver: alpha must be positive");
  if (grid_n < 2) throw std::invalid_argument("noma solver: grid too small");
  targets.validate();
  const double step = 1.0 / (n_ - 1);
  strong_.resize(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i) {
    const double beta = i * step;
    for (int j = 0; j < n_; ++j) {
      const double p = j * step;
      strong_[static_cast<std::size_t>(i) * n_ + j] = std::pow(beta * p, s_);
    }
  }
  auto build = [&](double gamma_weak) {
    Tables t;
    t.gamma_weak = gamma_weak;
    t.weak.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
      const double one_m_beta = 1.0 - i * step;
      for (int j = 0; j < n_; ++j) {
        const double head = 1.0 - j * step * (1.0 + gamma_weak);
        const double arg = one_m_beta * head;
        t.weak[static_cast<std::size_t>(i) * n_ + j] = arg > 0.0 ? std::pow(arg, s_) : -1.0;
      }
    }
    return t;
  };
  weak_r_ = build(gamma_r_);
  weak_t_ = build(gamma_t_);
}

double NomaCoverageSolver::objective(bool r_strong, double c_strong, double c_weak,
                                     double beta_s, double p_s) const {
  if (!(beta_s > 0.0) || !(beta_s < 1.0) || !(p_s > 0.0) || !(p_s < 1.0)) return -1.0;
  const double gamma_weak = r_strong ? gamma_t_ : gamma_r_;
  const double head = (1.0 - p_s) - p_s * gamma_weak;
  if (!(head > 0.0)) return -1.0;
  const double d_strong = c_strong * std::pow(beta_s * p_s, s_);
  const double d_weak = c_weak * std::pow((1.0 - beta_s) * head, s_);
  if (!(d_strong > 0.0) || !(d_weak > 0.0)) return -1.0;
  return d_strong + d_weak;
}

InnerSolutionNOMA NomaCoverageSolver::solve(double W_r, double W_t) const {
  const bool r_strong = W_r >= W_t;  // ties go to the reflection side
  InnerSolutionNOMA out;
  out.strong_user = r_strong ? 0 : 1;
  const double W_s = r_strong ? W_r : W_t;
  const double W_w = r_strong ? W_t : W_r;
  const double gamma_s = r_strong ? gamma_r_ : gamma_t_;
  const Tables& tbl = r_strong ? weak_t_ : weak_r_;
  if (!(W_s > 0.0) || !(W_w > 0.0)) return out;
  const double c_s = std::pow(W_s / gamma_s, s_);
  const double c_w = std::pow(W_w / tbl.gamma_weak, s_);
  if (!std::isfinite(c_s) || !std::isfinite(c_w) || !(c_s > 0.0) || !(c_w > 0.0)) return out;

  double best = -1.0;
  int bi = -1;
  int bj = -1;
  for (int i = 1; i + 1 < n_; ++i) {
    const double* srow = &strong_[static_cast<std::size_t>(i) * n_];
    const double* wrow = &tbl.weak[static_cast<std::size_t>(i) * n_];
    for (int j = 1; j + 1 < n_; ++j) {
      if (wrow[j] <= 0.0 || srow[j] <= 0.0) continue;
      const double v = c_s * srow[j] + c_w * wrow[j];
      if (v > best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  if (bi < 0) return out;  // empty feasible set

  const double step = 1.0 / (n_ - 1);
  double beta_s = bi * step;
  double p_s = bj * step;
  double value = best;
  for (int sweep = 0; sweep < sweeps_; ++sweep) {
    const auto [b_ref, vb] = golden_max(
        [&](double b) { return objective(r_strong, c_s, c_w, b, p_s); },
        std::max(0.0, beta_s - step), std::min(1.0, beta_s + step), 1e-10);
    if (vb > value) {
      value = vb;
      beta_s = b_ref;
    }
    const auto [p_ref, vp] = golden_max(
        [&](double p) { return objective(r_strong, c_s, c_w, beta_s, p); },
        std::max(0.0, p_s - step), std::min(1.0, p_s + step), 1e-10);
    if (vp > value) {
      value = vp;
      p_s = p_ref;
    }
  }

  const double head = (1.0 - p_s) - p_s * tbl.gamma_weak;
  const SideResult d_strong = radius_from_factor(W_s * beta_s * p_s, gamma_s, alpha_);
  const SideResult d_weak =
      head > 0.0 ? radius_from_factor(W_w * (1.0 - beta_s) * head, tbl.gamma_weak, alpha_)
                 : SideResult{};
  out.beta_r = r_strong ? beta_s : 1.0 - beta_s;
  out.p_r = r_strong ? p_s : 1.0 - p_s;
  out.D_r = r_strong ? d_strong.radius : d_weak.radius;
  out.D_t = r_strong ? d_weak.radius : d_strong.radius;
  out.D_tot = out.D_r + out.D_t;
  out.feasible = d_strong.feasible && d_weak.feasible;
  return out;
}

InnerSolutionNOMA maximize_noma_coverage(double W_r, double W_t, double alpha,
                                         const QosTargets& targets) {
  return NomaCoverageSolver(alpha, targets).solve(W_r, W_t);
}

InnerSolutionNOMA maximize_noma_coverage(const LinkBudget& budget, const QosTargets& targets) {
  budget.validate();
  return maximize_noma_coverage(budget.unit_gain(budget.chi_r), budget.unit_gain(budget.chi_t),
                                budget.alpha, targets);
}

}  // namespace fires
