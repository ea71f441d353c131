#pragma once

// Inner resource-allocation solvers. For a fixed element layout the OMA
// problem is a 1-D time-split search and the power-domain problem is a
// 2-variable box search over the energy split and the strong user's power
// fraction, with the decoding order fixed to the stronger effective gain.

#include <vector>

#include "fires/coverage.hpp"

namespace fires {

// S_u: full-power SNR factors (P/sigma^2) chi_u^2 H_u^2 used by the time-share
// path. G_u: effective gains driving the power-domain SINRs; these carry the
// full transmit power so that the SINR formulas below are dimensionless.
struct EffectiveGains {
  double S_r{0.0};
  double S_t{0.0};
  double G_r{0.0};
  double G_t{0.0};

  int strong_user() const { return G_r >= G_t ? 0 : 1; }  // ties to reflection
};

// From realized cascaded gains at unit user distance.
EffectiveGains make_effective_gains(const LinkBudget& budget, double H_r, double H_t);

struct NomaSinrs {
  double weak{0.0};    // gamma_t
  double cross{0.0};   // gamma_{r->t}, weak layer decoded at the strong user
  double strong{0.0};  // gamma_r after cancellation
};

NomaSinrs noma_sinrs(double G_r, double G_t, double beta_r, double beta_t, double p_r,
                     double p_t);

struct OmaSplit {
  double tau_star{0.0};
  bool feasible{false};
};

// Fixed-gain feasibility: tau* = R_r / log2(1+S_r); feasible iff tau* lands in
// (0,1) and the remaining slot still carries the other user's target.
OmaSplit check_oma(double S_r, double S_t, const QosTargets& targets);

struct NomaFeasibility {
  double margin_weak{0.0};    // bit/s/Hz above the weak user's target
  double margin_strong{0.0};  // strong user's own target after cancellation
  double margin_sic{0.0};     // weak layer decoded at the strong user
  bool feasible{false};
};

NomaFeasibility check_noma(double G_r, double G_t, double beta_r, double p_r,
                           const QosTargets& targets);

struct InnerSolutionOMA {
  double tau_star{0.5};
  bool feasible{false};
  double D_r{0.0};
  double D_t{0.0};
  double D_tot{0.0};
};

struct InnerSolutionNOMA {
  double beta_r{0.0};
  double p_r{0.0};
  int strong_user{0};  // 0 = reflection side, 1 = transmission side
  bool feasible{false};
  double D_r{0.0};
  double D_t{0.0};
  double D_tot{0.0};
};

// Golden-section search of D_r(tau) + D_t(1-tau) over tau in
// [1e-4, 1-1e-4]; the interval is clipped to dodge the threshold
// singularities at the slot boundaries.
InnerSolutionOMA maximize_oma_coverage(double W_r, double W_t, double alpha,
                                       const QosTargets& targets);
InnerSolutionOMA maximize_oma_coverage(const LinkBudget& budget, const QosTargets& targets);

// Deterministic 2-variable search: a coarse grid over (beta, p) followed by
// per-coordinate golden-section refinement. Threshold-dependent power tables
// are cached at construction so per-draw solves stay cheap inside the outer
// optimizer.
class NomaCoverageSolver {
 public:
  NomaCoverageSolver(double alpha, const QosTargets& targets, int grid_n = 200,
                     int refine_sweeps = 3);

  // W_u = (P/sigma^2) chi_u^2 H_u^2; decoding order goes to the larger one,
  // ties to the reflection side.
  InnerSolutionNOMA solve(double W_r, double W_t) const;

  int grid_n() const { return n_; }

 private:
  struct Tables {
    double gamma_weak{0.0};
    std::vector<double> weak;  // ((1-beta_i)(1 - p_j (1+gamma_weak)))^s, <0 if infeasible
  };

  double objective(bool r_strong, double c_strong, double c_weak, double beta_s,
                   double p_s) const;

  double alpha_{2.0};
  double s_{0.5};
  double gamma_r_{1.0};
  double gamma_t_{1.0};
  int n_{200};
  int sweeps_{3};
  std::vector<double> strong_;  // (beta_i * p_j)^s
  Tables weak_r_;               // user r as the weak side
  Tables weak_t_;               // user t as the weak side
};

InnerSolutionNOMA maximize_noma_coverage(double W_r, double W_t, double alpha,
                                         const QosTargets& targets);
InnerSolutionNOMA maximize_noma_coverage(const LinkBudget& budget, const QosTargets& targets);

}  // namespace fires
