#pragma once

// Per-hop Rician channel synthesis: line-of-sight steering plus spatially
// correlated scattering with a sinc-kernel (Jakes) covariance over the preset
// grid. The phase-aligned cascaded gain and the deterministic phase-error
// attenuation live here as well.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "fires/geometry.hpp"

namespace fires {

struct HopParams {
  double gain{1.0};      // large-scale power gain l_q (linear)
  double k_factor{0.0};  // Rician K (linear), >= 0
  double azimuth{0.0};   // rad, in (-pi, pi]
  double elevation{0.0}; // rad, in (-pi, pi]

  void validate() const;  // throws std::invalid_argument
};

struct PhaseErrorModel {
  enum class Kind { ideal, gaussian, quantized };
  Kind kind{Kind::ideal};
  double sigma2{0.0};  // rad^2, gaussian jitter variance
  int levels{0};       // quantizer levels Q >= 1

  static PhaseErrorModel ideal() { return {}; }
  static PhaseErrorModel gaussian(double sigma2);
  static PhaseErrorModel quantized(int levels);
};

// chi: ideal -> 1, gaussian -> exp(-sigma^2/2), quantized -> |sin(pi/Q)/(pi/Q)|.
double phase_attenuation(const PhaseErrorModel& model);

// Draws one residual phase error (validation use; the optimizer path only
// sees the deterministic chi).
double sample_phase_error(const PhaseErrorModel& model, std::mt19937_64& gen);

// Entry m = exp(j*(2*pi/lambda)*(x_m sin(az) cos(el) + y_m sin(el))).
Eigen::VectorXcd steering_vector(const ApertureConfig& cfg, const std::vector<Vec2>& positions,
                                 double azimuth, double elevation);

// Unit-variance circular complex Gaussian vector; fixed draw order (re, im).
Eigen::VectorXcd complex_normal(int n, std::mt19937_64& gen);

// Symmetric PSD square root via eigendecomposition with negative eigenvalues
// floored at zero; F satisfies F*F^T ~= floor(S).
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sym);

// Sinc-kernel spatial correlation over the full preset grid. Entries are
// computed on demand; the full L x L matrix is only materialized for small
// grids, the optimizer extracts M x M active blocks instead.
class CorrelationModel {
 public:
  explicit CorrelationModel(ApertureConfig cfg);

  double entry(GridIndex a, GridIndex b) const;

  Eigen::MatrixXd full() const;                      // L x L (small grids only)
  Eigen::MatrixXd full_factor() const;               // floored factor of full()
  Eigen::MatrixXd active(const Placement& p) const;  // M x M block at active presets
  Eigen::MatrixXd active_factor(const Placement& p) const;

  const ApertureConfig& config() const { return cfg_; }

 private:
  ApertureConfig cfg_;
};

struct HopChannel {
  Eigen::VectorXcd h;
  Eigen::VectorXd magnitudes;
};

// h = sqrt(l) * (sqrt(K/(K+1)) * los + sqrt(1/(K+1)) * factor * iid).
HopChannel compose_hop(const HopParams& params, const Eigen::VectorXcd& los,
                       const Eigen::MatrixXd& factor, const Eigen::VectorXcd& iid);

// Convenience path: factors the active covariance and draws the scattered
// component from `gen`. Deterministic for a fixed generator state.
HopChannel draw_hop(const HopParams& params, const ApertureConfig& cfg, const Placement& p,
                    const CorrelationModel& corr, std::mt19937_64& gen);

// Phase-aligned cascaded gain: sum_m |a_m| * |b_m|.
double cascaded_gain(const HopChannel& a, const HopChannel& b);

}  // namespace fires
