#pragma once

// Experiment configuration, sweep/baseline/bench runners and CSV emission.
// This is the only layer that understands dB/dBm/GHz; everything below it is
// strictly linear-unit.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fires/pso.hpp"

namespace fires {

// Raised for malformed configuration (CLI maps it to exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Surface { fires, star };

struct SweepSpec {
  std::string axis;             // P_dBm, M, R_tar, Q, sigma_phi2, K, N_p, T, beta_r
  std::vector<double> values;
};

struct ExperimentConfig {
  ApertureConfig aperture;
  LinkBudget budget;            // chi fields derived from the phase models
  HopSet hops;
  PhaseErrorModel phase_r;
  PhaseErrorModel phase_t;
  QosTargets targets;
  std::vector<AccessMode> modes;      // from "mode": oma | noma | both
  std::vector<Surface> surfaces;      // from "surface": fires | star | both
  PsoConfig pso;
  std::vector<std::uint64_t> seeds;
  std::optional<SweepSpec> sweep;
  std::string out_path;
  int threads{0};        // sweep-level workers; 0 = auto
  bool timing{false};    // when false the CSV secs column stays 0 (deterministic output)
  std::optional<double> oma_tau;  // bound subcommand: fixed time split
  double beta_r{0.5};             // bound subcommand: energy split

  void finalize();  // derives chi/budget fields and validates; throws ConfigError
};

ExperimentConfig default_config();                       // Table-style desk defaults
ExperimentConfig load_config(const std::string& path);   // JSON file
ExperimentConfig parse_config(const std::string& json_text, const std::string& origin);

// Applies one sweep-axis value (power, element count, targets, ...).
ExperimentConfig apply_axis(const ExperimentConfig& base, const std::string& axis, double value);

CoverageProblem make_problem(const ExperimentConfig& cfg, AccessMode mode);

struct RunOutcome {
  double D_r{0.0};
  double D_t{0.0};
  double D_tot{0.0};
  bool feasible{false};
  double seconds{0.0};
  int iterations{0};
  int it99{0};
  double best_J{0.0};
  InnerSolutionOMA oma;
  InnerSolutionNOMA noma;
};

RunOutcome run_single(const ExperimentConfig& cfg, AccessMode mode, Surface surface,
                      std::uint64_t seed);

struct SweepRow {
  double axis_value{0.0};
  std::string mode;
  std::string surface;
  double d_r_mean{0.0}, d_r_std{0.0};
  double d_t_mean{0.0}, d_t_std{0.0};
  double d_tot_mean{0.0}, d_tot_std{0.0};
  double feas_rate{0.0};
  double secs{0.0};
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);
std::string csv_string(const std::vector<SweepRow>& rows);
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);

struct BoundReport {
  CoverageResult es;     // energy-splitting radii at the configured beta_r
  InnerSolutionOMA oma;  // at the fixed tau when given, else coverage-optimal
  InnerSolutionNOMA noma;
  bool any_feasible{false};
  std::string text;      // printable summary
};

BoundReport run_bound(const ExperimentConfig& cfg);

struct BenchRow {
  std::string mode;
  int M{0};
  int N_p{0};
  int T{0};
  double total_seconds{0.0};
  double ms_per_iter{0.0};
  int it99{0};
  double d_tot{0.0};
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string text;  // table plus scaling-ratio lines
};

BenchReport run_bench(const ExperimentConfig& cfg, const std::vector<int>& m_list,
                      const std::vector<int>& np_list);

}  // namespace fires
