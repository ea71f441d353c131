#include "fires/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fires {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double t) {
  if (t == 0.0) return 1.0;
  return std::sin(kPi * t) / (kPi * t);
}

}  // namespace

void HopParams::validate() const {
  if (!(gain > 0.0)) throw std::invalid_argument("hop: gain must be positive");
  if (!(k_factor >= 0.0)) throw std::invalid_argument("hop: K factor must be nonnegative");
  if (!(azimuth > -kPi - 1e-12) || !(azimuth <= kPi + 1e-12))
    throw std::invalid_argument("hop: azimuth outside (-pi, pi]");
  if (!(elevation > -kPi - 1e-12) || !(elevation <= kPi + 1e-12))
    throw std::invalid_argument("hop: elevation outside (-pi, pi]");
}

PhaseErrorModel PhaseErrorModel::gaussian(double sigma2) {
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("phase error: sigma^2 must be nonnegative");
  PhaseErrorModel m;
  m.kind = Kind::gaussian;
  m.sigma2 = sigma2;
  return m;
}

PhaseErrorModel PhaseErrorModel::quantized(int levels) {
  if (levels < 1) throw std::domain_error("phase error: quantizer needs at least one level");
  PhaseErrorModel m;
  m.kind = Kind::quantized;
  m.levels = levels;
  return m;
}

double phase_attenuation(const PhaseErrorModel& model) {
  switch (model.kind) {
    case PhaseErrorModel::Kind::ideal:
      return 1.0;
    case PhaseErrorModel::Kind::gaussian:
      return std::exp(-model.sigma2 / 2.0);
    case PhaseErrorModel::Kind::quantized: {
      if (model.levels < 1) throw std::domain_error("phase error: quantizer needs at least one level");
      const double x = kPi / model.levels;
      return std::abs(std::sin(x) / x);
    }
  }
  throw std::logic_error("phase error: unknown model kind");
}

double sample_phase_error(const PhaseErrorModel& model, std::mt19937_64& gen) {
  switch (model.kind) {
    case PhaseErrorModel::Kind::ideal:
      return 0.0;
    case PhaseErrorModel::Kind::gaussian: {
      std::normal_distribution<double> nd(0.0, std::sqrt(model.sigma2));
      return nd(gen);
    }
    case PhaseErrorModel::Kind::quantized: {
      if (model.levels < 1) throw std::domain_error("phase error: quantizer needs at least one level");
      std::uniform_real_distribution<double> ud(-kPi / model.levels, kPi / model.levels);
      return ud(gen);
    }
  }
  throw std::logic_error("phase error: unknown model kind");
}

Eigen::VectorXcd steering_vector(const ApertureConfig& cfg, const std::vector<Vec2>& positions,
                                 double azimuth, double elevation) {
  const double k = 2.0 * kPi / cfg.lambda;
  const double sa = std::sin(azimuth);
  const double ce = std::cos(elevation);
  const double se = std::sin(elevation);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(positions.size()));
  for (std::size_t m = 0; m < positions.size(); ++m) {
    const double phase = k * (positions[m].x * sa * ce + positions[m].y * se);
    out[static_cast<Eigen::Index>(m)] = std::polar(1.0, phase);
  }
  return out;
}

Eigen::VectorXcd complex_normal(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double scale = std::sqrt(0.5);
  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i) {
    const double re = nd(gen);
    const double im = nd(gen);
    out[i] = std::complex<double>(re * scale, im * scale);
  }
  return out;
}

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "covariance factorization failed for " << sym.rows() << "x" << sym.cols()
        << " matrix (norm " << sym.norm() << ")";
    throw std::runtime_error(msg.str());
  }
  Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * vals.cwiseSqrt().asDiagonal();
}

CorrelationModel::CorrelationModel(ApertureConfig cfg) : cfg_(cfg) { cfg_.validate(); }

double CorrelationModel::entry(GridIndex a, GridIndex b) const {
  const double dh = std::abs(a.h - b.h) * cfg_.pitch_h();
  const double dv = std::abs(a.v - b.v) * cfg_.pitch_v();
  return sinc(2.0 / cfg_.lambda * std::hypot(dh, dv));
}

Eigen::MatrixXd CorrelationModel::full() const {
  const std::int64_t L = cfg_.grid_total();
  if (L > 4096)
    throw std::invalid_argument("full correlation matrix requested for a large grid; use active()");
  Eigen::MatrixXd R(L, L);
  for (std::int64_t i = 0; i < L; ++i) {
    const GridIndex gi = unmap_index(cfg_, i);
    for (std::int64_t j = i; j < L; ++j) {
      const GridIndex gj = unmap_index(cfg_, j);
      const double v = entry(gi, gj);
      R(i, j) = v;
      R(j, i) = v;
    }
  }
  return R;
}

Eigen::MatrixXd CorrelationModel::full_factor() const { return psd_factor(full()); }

Eigen::MatrixXd CorrelationModel::active(const Placement& p) const {
  const int M = cfg_.subarea_count();
  if (static_cast<int>(p.active.size()) != M)
    throw std::invalid_argument("active: placement size mismatch");
  std::vector<GridIndex> grid(p.active.size());
  for (int m = 0; m < M; ++m) grid[static_cast<std::size_t>(m)] = preset_grid(cfg_, p.active[static_cast<std::size_t>(m)]);
  Eigen::MatrixXd R(M, M);
  for (int i = 0; i < M; ++i) {
    for (int j = i; j < M; ++j) {
      const double v = entry(grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(j)]);
      R(i, j) = v;
      R(j, i) = v;
    }
  }
  return R;
}

Eigen::MatrixXd CorrelationModel::active_factor(const Placement& p) const {
  return psd_factor(active(p));
}

HopChannel compose_hop(const HopParams& params, const Eigen::VectorXcd& los,
                       const Eigen::MatrixXd& factor, const Eigen::VectorXcd& iid) {
  if (los.size() != iid.size() || factor.rows() != los.size() || factor.cols() != los.size())
    throw std::invalid_argument("compose_hop: dimension mismatch");
  const double k = params.k_factor;
  const double los_w = std::sqrt(k / (k + 1.0));
  const double nlos_w = std::sqrt(1.0 / (k + 1.0));
  const double amp = std::sqrt(params.gain);
  HopChannel out;
  out.h = amp * (los_w * los + nlos_w * (factor * iid));
  out.magnitudes = out.h.cwiseAbs();
  return out;
}

HopChannel draw_hop(const HopParams& params, const ApertureConfig& cfg, const Placement& p,
                    const CorrelationModel& corr, std::mt19937_64& gen) {
  params.validate();
  const auto positions = placement_positions(cfg, p);
  const Eigen::VectorXcd los = steering_vector(cfg, positions, params.azimuth, params.elevation);
  const Eigen::MatrixXd factor = corr.active_factor(p);
  const Eigen::VectorXcd iid = complex_normal(static_cast<int>(positions.size()), gen);
  return compose_hop(params, los, factor, iid);
}

double cascaded_gain(const HopChannel& a, const HopChannel& b) {
  if (a.magnitudes.size() != b.magnitudes.size())
    throw std::invalid_argument("cascaded_gain: length mismatch");
  return a.magnitudes.dot(b.magnitudes);
}

}  // namespace fires
