// Monte-Carlo experiment driver: spatial realizations x fading draws with
// deterministic counter-derived seeding, parallel execution and ordered
// reduction, so a (config, master_seed) pair always reproduces bit-identical
// metrics regardless of thread count.
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "udnsim/radio.hpp"

namespace udnsim {

struct ScenarioConfig {
  double lambda_s = 5000.0;  // small cells per km^2
  double lambda_h = 500.0;   // HTC users per km^2
  double lambda_m = 1e6;     // MTC devices per km^2
  double eta = 0.1;          // MTC activation fraction
  int multicell_size = 5;    // M
  double rho = std::numeric_limits<double>::infinity();  // bps/Hz
  double alpha = 4.0;
  int n_rb = 10;
  double side_km = 1.0;
  int n_spatial = 500;
  int n_fading = 10;
  std::uint64_t master_seed = 1;
  double noise_over_power = 0.0;
  double max_spectral_efficiency = 30.0;
  // Uplink SIR/rate evaluation is subsampled to this many supported devices
  // per realization (scaled estimator); 0 evaluates every device.
  std::uint64_t mtc_sir_sample_cap = 2000;
  int n_threads = 0;  // 0 = hardware concurrency
  std::vector<double> sir_thresholds = {0.1, 1.0, 10.0};

  void validate() const;  // throws std::invalid_argument naming the field
  RadioParams radio_params() const;
  Window window() const { return Window{side_km}; }
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // over spatial realizations
};

struct MetricSet {
  Estimate ase_htc;             // bps/Hz/km^2
  Estimate ase_mtc;             // bps/Hz/km^2
  Estimate lambda_m_supported;  // devices/km^2
  Estimate active_density;      // active cells/km^2, all tiers
  std::vector<Estimate> tier_density;       // per tier k = 1..M
  std::vector<Estimate> ase_htc_per_tier;   // partition of ase_htc by tier
  std::vector<double> sir_thresholds;
  std::vector<std::vector<double>> htc_sir_ccdf;  // [tier][threshold], pooled
  std::vector<double> mtc_sir_ccdf;               // [threshold], pooled
  int n_spatial = 0;
};

// One spatial realization (identified by its index, which fixes all random
// streams), averaged over the configured fading draws.
MetricSet run_realization(const ScenarioConfig& config,
                          std::uint64_t realization_index);

// Full experiment: mean and standard error over n_spatial realizations.
MetricSet run_experiment(const ScenarioConfig& config);

// Shares the spatial and fading sampling across a grid of backhaul caps;
// element r is bit-identical to run_experiment with rho = rho_grid[r].
std::vector<MetricSet> run_experiment_rho_grid(const ScenarioConfig& config,
                                               std::span<const double> rho_grid);

enum class SweepAxis { MulticellSize, Rho, LambdaS, LambdaH, LambdaMActive, NRb };

// Accepts the axis names used by the CLI: M, rho, lambda_s, lambda_h,
// lambda_m_active, N_RB. Throws on anything else.
SweepAxis parse_sweep_axis(std::string_view name);
std::string_view sweep_axis_name(SweepAxis axis);

ScenarioConfig apply_axis(ScenarioConfig base, SweepAxis axis, double value);

struct SweepPoint {
  double value = 0.0;
  MetricSet metrics;
};

// One run_experiment per value. The template's master seed is reused for
// every point, so same-density axes see common random numbers and curve
// comparisons across points are paired.
std::vector<SweepPoint> sweep(const ScenarioConfig& base, SweepAxis axis,
                              std::span<const double> values);

}  // namespace udnsim
