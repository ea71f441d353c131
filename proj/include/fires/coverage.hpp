#pragma once

// Closed-form far-field coverage radii and the SNR/SINR evaluations behind
// them. Everything here is in strictly linear units; dB conversions happen at
// the configuration boundary only.

#include <cmath>

namespace fires {

struct LinkBudget {
  double P{1.0};       // transmit power [W]
  double sigma2{1.0};  // noise power [W]
  double rho0{1.0};    // unit-distance gain (linear)
  double alpha{2.0};   // path-loss exponent
  double d_f{1.0};     // BS-to-surface distance [m]
  int elements{1};     // active element count M
  double chi_r{1.0};   // phase attenuation, reflection side
  double chi_t{1.0};   // phase attenuation, transmission side

  void validate() const;  // throws std::invalid_argument

  double snr_scale() const { return P / sigma2; }
  // Far-field SNR factor at unit user distance: (P/sigma^2) chi^2 M^2 rho0^2 d_f^-alpha.
  double unit_gain(double chi) const;
};

struct QosTargets {
  double rate_r{1.0};  // bit/s/Hz
  double rate_t{1.0};

  void validate() const;

  static double oma_threshold(double rate, double tau) { return std::exp2(rate / tau) - 1.0; }
  static double noma_threshold(double rate) { return std::exp2(rate) - 1.0; }
};

struct SideResult {
  double radius{0.0};
  bool feasible{false};
};

struct NomaRadii {
  double D_r{0.0};
  double D_t{0.0};
  bool feasible_r{false};
  bool feasible_t{false};  // false whenever p_t <= p_r * gamma_th_t
};

struct CoverageResult {
  double D_r{0.0};
  double D_t{0.0};
  bool feasible_r{false};
  bool feasible_t{false};
  bool rayleigh_warning{false};

  double D_tot() const { return D_r + D_t; }
};

// Far-field validity boundary 2A/lambda (A is the aperture area).
double rayleigh_distance(double aperture_area, double lambda);

// gamma_u(D) = (P/sigma^2) beta chi^2 M^2 rho0^2 d_f^-alpha D^-alpha.
double snr_at_distance(const LinkBudget& budget, double beta, double chi, double distance);

// Core closed form: D = (W / gamma_th)^(1/alpha); nonpositive or degenerate
// arguments return radius 0 with the infeasible flag instead of throwing so
// inner solvers can fold infeasibility into the objective.
SideResult radius_from_factor(double unit_snr_factor, double gamma_th, double alpha);

SideResult radius_es(const LinkBudget& budget, double beta, double chi, double gamma_th);

// Time-share radius at threshold 2^(rate/tau)-1 with full power; beta defaults
// to 1 (whole surface devoted to the in-slot side) but stays exposed.
SideResult radius_oma(const LinkBudget& budget, double chi, double tau, double rate_target,
                      double beta = 1.0);

// Power-domain pair: strong side scales with beta_r*p_r, weak side with
// beta_t*(p_t - p_r*gamma_th_t) and collapses to zero when the power headroom
// is gone.
NomaRadii radius_noma(const LinkBudget& budget, double beta_r, double beta_t, double p_r,
                      double p_t, double chi_r, double chi_t, double gamma_th_r,
                      double gamma_th_t);

// Position-aware variants used by the optimizer: the caller supplies the
// realized unit-distance SNR factor W = (P/sigma^2) chi^2 H^2 directly.
SideResult oma_radius_from_factor(double W, double tau, double rate_target, double alpha);
NomaRadii noma_radii_from_factors(double W_r, double W_t, double beta_r, double beta_t,
                                  double p_r, double p_t, double gamma_th_r, double gamma_th_t,
                                  double alpha);

}  // namespace fires
