#include "fires/coverage.hpp"

#include <stdexcept>

namespace fires {

void LinkBudget::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(std::string("budget: ") + what); };
  // P = 0 is allowed so degenerate budgets flow into infeasible radii rather
  // than construction errors.
  if (!(P >= 0.0)) fail("transmit power must be nonnegative");
  if (!(sigma2 > 0.0)) fail("noise power must be positive");
  if (!(rho0 > 0.0)) fail("unit-distance gain must be positive");
  if (!(alpha > 0.0)) fail("path-loss exponent must be positive");
  if (!(d_f > 0.0)) fail("feeder distance must be positive");
  if (elements < 1) fail("element count must be at least 1");
  if (!(chi_r > 0.0 && chi_r <= 1.0)) fail("chi_r outside (0, 1]");
  if (!(chi_t > 0.0 && chi_t <= 1.0)) fail("chi_t outside (0, 1]");
}

double LinkBudget::unit_gain(double chi) const {
  const double m = static_cast<double>(elements);
  return snr_scale() * chi * chi * m * m * rho0 * rho0 * std::pow(d_f, -alpha);
}

void QosTargets::validate() const {
  if (!(rate_r > 0.0) || !(rate_t > 0.0))
    throw std::invalid_argument("targets: rates must be positive");
}

double rayleigh_distance(double aperture_area, double lambda) {
  return 2.0 * aperture_area / lambda;
}

double snr_at_distance(const LinkBudget& budget, double beta, double chi, double distance) {
  if (!(distance > 0.0)) throw std::domain_error("snr_at_distance: distance must be positive");
  return budget.snr_scale() * beta * chi * chi * static_cast<double>(budget.elements) *
         static_cast<double>(budget.elements) * budget.rho0 * budget.rho0 *
         std::pow(budget.d_f, -budget.alpha) * std::pow(distance, -budget.alpha);
}

SideResult radius_from_factor(double unit_snr_factor, double gamma_th, double alpha) {
  if (!(gamma_th > 0.0) || !std::isfinite(gamma_th)) return {0.0, false};
  if (!(unit_snr_factor > 0.0) || !std::isfinite(unit_snr_factor)) return {0.0, false};
  const double radius = std::pow(unit_snr_factor / gamma_th, 1.0 / alpha);
  if (!(radius > 0.0) || !std::isfinite(radius)) return {0.0, false};
  return {radius, true};
}

SideResult radius_es(const LinkBudget& budget, double beta, double chi, double gamma_th) {
  return radius_from_factor(budget.unit_gain(chi) * beta, gamma_th, budget.alpha);
}

SideResult radius_oma(const LinkBudget& budget, double chi, double tau, double rate_target,
                      double beta) {
  return oma_radius_from_factor(budget.unit_gain(chi) * beta, tau, rate_target, budget.alpha);
}

SideResult oma_radius_from_factor(double W, double tau, double rate_target, double alpha) {
  if (!(tau > 0.0) || tau > 1.0) throw std::domain_error("radius_oma: tau outside (0, 1]");
  return radius_from_factor(W, QosTargets::oma_threshold(rate_target, tau), alpha);
}

NomaRadii radius_noma(const LinkBudget& budget, double beta_r, double beta_t, double p_r,
                      double p_t, double chi_r, double chi_t, double gamma_th_r,
                      double gamma_th_t) {
  return noma_radii_from_factors(budget.unit_gain(chi_r), budget.unit_gain(chi_t), beta_r, beta_t,
                                 p_r, p_t, gamma_th_r, gamma_th_t, budget.alpha);
}

NomaRadii noma_radii_from_factors(double W_r, double W_t, double beta_r, double beta_t,
                                  double p_r, double p_t, double gamma_th_r, double gamma_th_t,
                                  double alpha) {
  if (!(p_r >= 0.0) || !(p_t >= 0.0) || p_r + p_t > 1.0 + 1e-12)
    throw std::invalid_argument("radius_noma: power fractions invalid");
  if (std::abs(beta_r + beta_t - 1.0) > 1e-9 || beta_r < -1e-12 || beta_t < -1e-12)
    throw std::invalid_argument("radius_noma: energy split invalid");
  NomaRadii out;
  const SideResult strong = radius_from_factor(W_r * beta_r * p_r, gamma_th_r, alpha);
  out.D_r = strong.radius;
  out.feasible_r = strong.feasible;
  const double headroom = p_t - p_r * gamma_th_t;
  if (headroom > 0.0) {
    const SideResult weak = radius_from_factor(W_t * beta_t * headroom, gamma_th_t, alpha);
    out.D_t = weak.radius;
    out.feasible_t = weak.feasible;
  }  // else: SIC power condition fails, weak radius is exactly 0
  return out;
}

}  // namespace fires
