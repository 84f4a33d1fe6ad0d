#include "udnsim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "udnsim/association.hpp"
#include "udnsim/geometry.hpp"

namespace udnsim {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    throw std::invalid_argument(std::string("config: ") + field + " " + what);
  }
}

struct RealizationAccum {
  std::vector<double> ase_htc_by_rho;            // [rho]
  std::vector<double> ase_htc_tier_by_rho;       // [rho * M + (k-1)]
  double ase_mtc = 0.0;
  double lambda_m_supported = 0.0;
  double active_density = 0.0;
  std::vector<double> tier_density;              // [M]
  std::vector<std::uint64_t> htc_sir_count;      // [M]
  std::vector<std::uint64_t> htc_sir_exceed;     // [M * n_zeta]
  std::uint64_t mtc_sir_count = 0;
  std::vector<std::uint64_t> mtc_sir_exceed;     // [n_zeta]
};

RealizationAccum simulate_one(const ScenarioConfig& cfg,
                              std::span<const double> rho_grid,
                              std::uint64_t index) {
  const int M = cfg.multicell_size;
  const std::size_t n_zeta = cfg.sir_thresholds.size();
  const double area = cfg.window().area();
  const double side = cfg.side_km;
  const RadioParams radio = cfg.radio_params();

  RealizationAccum acc;
  acc.ase_htc_by_rho.assign(rho_grid.size(), 0.0);
  acc.ase_htc_tier_by_rho.assign(rho_grid.size() * M, 0.0);
  acc.tier_density.assign(M, 0.0);
  acc.htc_sir_count.assign(M, 0);
  acc.htc_sir_exceed.assign(M * n_zeta, 0);
  acc.mtc_sir_exceed.assign(n_zeta, 0);

  RngStream cells_rng(cfg.master_seed, index, StreamPurpose::Cells);
  RngStream users_rng(cfg.master_seed, index, StreamPurpose::Users);
  const PointSet cells =
      sample_hppp(cfg.lambda_s, PointKind::SmallCell, cfg.window(), cells_rng);
  const PointSet users =
      sample_hppp(cfg.lambda_h, PointKind::HtcUser, cfg.window(), users_rng);

  std::vector<TierAssociation> assoc;
  std::vector<CellActivation> activations;
  if (!users.empty()) {
    assoc = associate_htc(users, cells, M);
    activations = resolve_conflicts(assoc);
  }

  const auto counts = tier_activation_counts(activations, M);
  for (int k = 0; k < M; ++k) {
    acc.tier_density[k] = static_cast<double>(counts[k]) / area;
    acc.active_density += acc.tier_density[k];
  }

  // Active cells grouped by serving tier, ascending cell index.
  std::vector<std::vector<std::size_t>> tier_cells(M + 1);
  for (const CellActivation& a : activations) {
    tier_cells[a.serving_tier].push_back(a.cell);
  }

  // MTC association (independent of fading).
  RngStream mtc_rng(cfg.master_seed, index, StreamPurpose::MtcPoints);
  RngStream thin_rng(cfg.master_seed, index, StreamPurpose::MtcThin);
  RngStream select_rng(cfg.master_seed, index, StreamPurpose::MtcSelect);
  const PointSet mtc_all =
      sample_hppp(cfg.lambda_m, PointKind::MtcDevice, cfg.window(), mtc_rng);
  const PointSet mtc_active = thin(mtc_all, cfg.eta, thin_rng);

  struct Supported {
    std::size_t device;
    std::size_t cell;
    int rb;
  };
  std::vector<Supported> supported;
  std::vector<std::vector<std::size_t>> rb_members(cfg.n_rb);  // device ids
  if (!activations.empty() && !mtc_active.empty()) {
    const auto allocations =
        associate_mtc(mtc_active, activations, cells, cfg.n_rb, select_rng);
    for (const RbAllocation& alloc : allocations) {
      for (const RbAssignment& a : alloc.assignments) {
        rb_members[a.rb].push_back(a.device);
        supported.push_back({a.device, alloc.cell, a.rb});
      }
    }
  }
  acc.lambda_m_supported = static_cast<double>(supported.size()) / area;

  // Subset of supported devices whose SIR/rate is evaluated.
  std::vector<std::size_t> sampled(supported.size());
  std::iota(sampled.begin(), sampled.end(), 0);
  if (cfg.mtc_sir_sample_cap > 0 && sampled.size() > cfg.mtc_sir_sample_cap) {
    RngStream sample_rng(cfg.master_seed, index, StreamPurpose::MtcSirSample);
    sample_rng.shuffle(sampled);
    sampled.resize(cfg.mtc_sir_sample_cap);
    std::sort(sampled.begin(), sampled.end());
  }

  RngStream fading_htc(cfg.master_seed, index, StreamPurpose::FadingHtc);
  RngStream fading_mtc(cfg.master_seed, index, StreamPurpose::FadingMtc);
  const double fade_norm = 1.0 / cfg.n_fading;

  std::vector<double> sirs;
  for (int draw = 0; draw < cfg.n_fading; ++draw) {
    FadingDraw gain{fading_htc};
    for (const CellActivation& a : activations) {
      const int k = a.serving_tier;
      const auto& same_tier = tier_cells[k];
      sirs.clear();
      for (const std::size_t u : a.served_users) {
        const double sir =
            sir_downlink(users.points[u], u, a.cell, same_tier, cells.points,
                         gain, radio, side);
        sirs.push_back(sir);
        ++acc.htc_sir_count[k - 1];
        for (std::size_t z = 0; z < n_zeta; ++z) {
          if (sir > cfg.sir_thresholds[z]) ++acc.htc_sir_exceed[(k - 1) * n_zeta + z];
        }
      }
      const CellRate rate = rate_htc_cell(sirs, radio);
      for (std::size_t r = 0; r < rho_grid.size(); ++r) {
        const double capped = std::min(rate.uncapped, rho_grid[r]);
        acc.ase_htc_by_rho[r] += capped / area * fade_norm;
        acc.ase_htc_tier_by_rho[r * M + (k - 1)] += capped / area * fade_norm;
      }
    }

    if (!sampled.empty()) {
      FadingDraw gain_m{fading_mtc};
      double rate_sum = 0.0;
      for (const std::size_t s : sampled) {
        const Supported& dev = supported[s];
        const double sir = sir_uplink(
            mtc_active.points[dev.device], dev.device, cells.points[dev.cell],
            dev.cell, rb_members[dev.rb], mtc_active.points, gain_m, radio, side);
        rate_sum += rate_mtc(sir, cfg.n_rb, cfg.max_spectral_efficiency);
        ++acc.mtc_sir_count;
        for (std::size_t z = 0; z < n_zeta; ++z) {
          if (sir > cfg.sir_thresholds[z]) ++acc.mtc_sir_exceed[z];
        }
      }
      // Scaled estimator: mean sampled rate times supported count.
      acc.ase_mtc += rate_sum / static_cast<double>(sampled.size()) *
                     static_cast<double>(supported.size()) / area * fade_norm;
    }
  }
  return acc;
}

Estimate reduce(const std::vector<double>& xs) {
  Estimate e;
  const std::size_t n = xs.size();
  if (n == 0) return e;
  for (double x : xs) e.mean += x;
  e.mean /= static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.std_error = std::sqrt(ss / (static_cast<double>(n) * (n - 1.0)));
  }
  return e;
}

void run_parallel(int n, int n_threads, const std::function<void(int)>& body) {
  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads <= 0) n_threads = 1;
  }
  n_threads = std::min(n_threads, n);
  if (n_threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<MetricSet> aggregate(const ScenarioConfig& cfg,
                                 std::span<const double> rho_grid,
                                 const std::vector<RealizationAccum>& accs) {
  const int M = cfg.multicell_size;
  const std::size_t n_zeta = cfg.sir_thresholds.size();
  const std::size_t n = accs.size();

  std::vector<MetricSet> out(rho_grid.size());
  std::vector<double> buf(n);

  auto collect = [&](auto getter) {
    for (std::size_t i = 0; i < n; ++i) buf[i] = getter(accs[i]);
    return reduce(buf);
  };

  // Pooled SIR CCDFs are rho-independent; compute once.
  std::vector<std::vector<double>> htc_ccdf(M, std::vector<double>(n_zeta, 0.0));
  std::vector<double> mtc_ccdf(n_zeta, 0.0);
  {
    std::vector<std::uint64_t> cnt(M, 0), exc(M * n_zeta, 0);
    std::uint64_t mcnt = 0;
    std::vector<std::uint64_t> mexc(n_zeta, 0);
    for (const RealizationAccum& a : accs) {
      for (int k = 0; k < M; ++k) cnt[k] += a.htc_sir_count[k];
      for (std::size_t j = 0; j < exc.size(); ++j) exc[j] += a.htc_sir_exceed[j];
      mcnt += a.mtc_sir_count;
      for (std::size_t z = 0; z < n_zeta; ++z) mexc[z] += a.mtc_sir_exceed[z];
    }
    for (int k = 0; k < M; ++k) {
      for (std::size_t z = 0; z < n_zeta; ++z) {
        htc_ccdf[k][z] = cnt[k] ? static_cast<double>(exc[k * n_zeta + z]) / cnt[k] : 0.0;
      }
    }
    for (std::size_t z = 0; z < n_zeta; ++z) {
      mtc_ccdf[z] = mcnt ? static_cast<double>(mexc[z]) / mcnt : 0.0;
    }
  }

  for (std::size_t r = 0; r < rho_grid.size(); ++r) {
    MetricSet& m = out[r];
    m.n_spatial = static_cast<int>(n);
    m.sir_thresholds = cfg.sir_thresholds;
    m.htc_sir_ccdf = htc_ccdf;
    m.mtc_sir_ccdf = mtc_ccdf;
    m.ase_htc = collect([r](const RealizationAccum& a) { return a.ase_htc_by_rho[r]; });
    m.ase_mtc = collect([](const RealizationAccum& a) { return a.ase_mtc; });
    m.lambda_m_supported =
        collect([](const RealizationAccum& a) { return a.lambda_m_supported; });
    m.active_density =
        collect([](const RealizationAccum& a) { return a.active_density; });
    m.tier_density.resize(M);
    m.ase_htc_per_tier.resize(M);
    for (int k = 0; k < M; ++k) {
      m.tier_density[k] =
          collect([k](const RealizationAccum& a) { return a.tier_density[k]; });
      m.ase_htc_per_tier[k] = collect([&, k](const RealizationAccum& a) {
        return a.ase_htc_tier_by_rho[r * a.tier_density.size() + k];
      });
    }
  }
  return out;
}

}  // namespace

void ScenarioConfig::validate() const {
  require(lambda_s >= 0.0 && std::isfinite(lambda_s), "lambda_s", "must be >= 0");
  require(lambda_h >= 0.0 && std::isfinite(lambda_h), "lambda_h", "must be >= 0");
  require(lambda_m >= 0.0 && std::isfinite(lambda_m), "lambda_m", "must be >= 0");
  require(eta >= 0.0 && eta <= 1.0, "eta", "must be in [0,1]");
  require(multicell_size >= 1, "M", "must be >= 1");
  require(rho >= 0.0, "rho", "must be >= 0");
  require(alpha > 2.0, "alpha", "must be > 2");
  require(n_rb >= 1, "N_RB", "must be >= 1");
  require(side_km > 0.0 && std::isfinite(side_km), "side", "must be > 0");
  require(n_spatial >= 1, "n_spatial", "must be >= 1");
  require(n_fading >= 1, "n_fading", "must be >= 1");
  require(noise_over_power >= 0.0, "noise_over_power", "must be >= 0");
  require(max_spectral_efficiency > 0.0, "max_se", "must be > 0");
  require(!sir_thresholds.empty(), "sir_thresholds", "must not be empty");
}

RadioParams ScenarioConfig::radio_params() const {
  RadioParams p;
  p.alpha = alpha;
  p.noise_over_power = noise_over_power;
  p.rho = std::numeric_limits<double>::infinity();  // caps applied per rho
  p.multicell_size = multicell_size;
  p.n_rb = n_rb;
  p.max_spectral_efficiency = max_spectral_efficiency;
  return p;
}

MetricSet run_realization(const ScenarioConfig& config,
                          std::uint64_t realization_index) {
  config.validate();
  const std::vector<double> grid{config.rho};
  std::vector<RealizationAccum> accs;
  accs.push_back(simulate_one(config, grid, realization_index));
  return aggregate(config, grid, accs)[0];
}

std::vector<MetricSet> run_experiment_rho_grid(const ScenarioConfig& config,
                                               std::span<const double> rho_grid) {
  config.validate();
  if (rho_grid.empty()) throw std::invalid_argument("rho grid must not be empty");
  std::vector<RealizationAccum> accs(config.n_spatial);
  run_parallel(config.n_spatial, config.n_threads, [&](int i) {
    accs[i] = simulate_one(config, rho_grid, static_cast<std::uint64_t>(i));
  });
  return aggregate(config, rho_grid, accs);
}

MetricSet run_experiment(const ScenarioConfig& config) {
  const std::vector<double> grid{config.rho};
  return run_experiment_rho_grid(config, grid)[0];
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "M") return SweepAxis::MulticellSize;
  if (name == "rho") return SweepAxis::Rho;
  if (name == "lambda_s") return SweepAxis::LambdaS;
  if (name == "lambda_h") return SweepAxis::LambdaH;
  if (name == "lambda_m_active") return SweepAxis::LambdaMActive;
  if (name == "N_RB") return SweepAxis::NRb;
  throw std::invalid_argument(
      "unknown sweep axis '" + std::string(name) +
      "' (expected M, rho, lambda_s, lambda_h, lambda_m_active, N_RB)");
}

std::string_view sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::MulticellSize: return "M";
    case SweepAxis::Rho: return "rho";
    case SweepAxis::LambdaS: return "lambda_s";
    case SweepAxis::LambdaH: return "lambda_h";
    case SweepAxis::LambdaMActive: return "lambda_m_active";
    case SweepAxis::NRb: return "N_RB";
  }
  throw std::logic_error("unreachable");
}

ScenarioConfig apply_axis(ScenarioConfig base, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::MulticellSize:
      base.multicell_size = static_cast<int>(std::llround(value));
      break;
    case SweepAxis::Rho:
      base.rho = value;
      break;
    case SweepAxis::LambdaS:
      base.lambda_s = value;
      break;
    case SweepAxis::LambdaH:
      base.lambda_h = value;
      break;
    case SweepAxis::LambdaMActive:
      if (!(base.eta > 0.0)) {
        throw std::invalid_argument("lambda_m_active sweep requires eta > 0");
      }
      base.lambda_m = value / base.eta;
      break;
    case SweepAxis::NRb:
      base.n_rb = static_cast<int>(std::llround(value));
      break;
  }
  return base;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& base, SweepAxis axis,
                              std::span<const double> values) {
  std::vector<SweepPoint> out;
  out.reserve(values.size());
  for (const double v : values) {
    const ScenarioConfig cfg = apply_axis(base, axis, v);
    out.push_back({v, run_experiment(cfg)});
  }
  return out;
}

}  // namespace udnsim
