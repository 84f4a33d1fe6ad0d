// Channel sampling, SIR computation per tier band / resource block, and rate
// computation with the equal bandwidth split and backhaul capping.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "udnsim/geometry.hpp"
#include "udnsim/rng.hpp"

namespace udnsim {

struct RadioParams {
  double alpha = 4.0;             // path-loss exponent, > 2
  double noise_over_power = 0.0;  // sigma^2 / P; 0 = interference-limited
  double rho = std::numeric_limits<double>::infinity();  // backhaul cap, bps/Hz
  int multicell_size = 1;         // M
  int n_rb = 10;
  // Spectral-efficiency ceiling; keeps the isolated-cell infinite-SIR
  // sentinel from blowing up uncapped aggregates.
  double max_spectral_efficiency = 30.0;
};

inline double path_gain(double dist2, double alpha) {
  if (alpha == 4.0) return 1.0 / (dist2 * dist2);
  return std::pow(dist2, -0.5 * alpha);
}

inline double spectral_efficiency(double sir, double max_se) {
  if (std::isinf(sir)) return max_se;
  return std::min(std::log2(1.0 + sir), max_se);
}

// Fresh unit-mean exponential gain per query. Valid as a block-fading draw
// because every (tx, rx) pair is evaluated at most once per TTI.
struct FadingDraw {
  RngStream& stream;
  double operator()(std::size_t, std::size_t) { return stream.exponential(); }
};

// Explicit gain table for tests and worked examples; unset pairs are 1.
class GainTable {
 public:
  void set(std::size_t tx, std::size_t rx, double gain) {
    gains_[key(tx, rx)] = gain;
  }
  double operator()(std::size_t tx, std::size_t rx) const {
    const auto it = gains_.find(key(tx, rx));
    return it == gains_.end() ? 1.0 : it->second;
  }

 private:
  static std::uint64_t key(std::size_t tx, std::size_t rx) {
    return (static_cast<std::uint64_t>(tx) << 32) | static_cast<std::uint32_t>(rx);
  }
  std::unordered_map<std::uint64_t, double> gains_;
};

// Downlink SIR of `user` served by `serving_cell` on one tier band. The
// interferer set is exactly the other active cells of that tier (tiers are
// orthogonal in frequency). Returns +inf when there is no interference and
// no noise.
template <typename GainFn>
double sir_downlink(Vec2 user, std::size_t user_id, std::size_t serving_cell,
                    std::span<const std::size_t> tier_cells,
                    const std::vector<Vec2>& cell_positions, GainFn&& gain,
                    const RadioParams& params, double side) {
  double signal = 0.0;
  double interference = 0.0;
  for (const std::size_t c : tier_cells) {
    const double d2 = toroidal_dist2(user, cell_positions[c], side);
    const double rx = gain(c, user_id) * path_gain(d2, params.alpha);
    if (c == serving_cell) {
      signal = rx;
    } else {
      interference += rx;
    }
  }
  const double denom = interference + params.noise_over_power;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return signal / denom;
}

// Uplink SIR of a supported device at its tagged cell; interference comes
// from the devices holding the same RB index in other cells. Entries equal
// to device_id in co_rb_devices are skipped.
template <typename GainFn>
double sir_uplink(Vec2 device, std::size_t device_id, Vec2 tagged_cell,
                  std::size_t tagged_cell_id,
                  std::span<const std::size_t> co_rb_devices,
                  const std::vector<Vec2>& device_positions, GainFn&& gain,
                  const RadioParams& params, double side) {
  const double d2 = toroidal_dist2(device, tagged_cell, side);
  const double signal =
      gain(device_id, tagged_cell_id) * path_gain(d2, params.alpha);
  double interference = 0.0;
  for (const std::size_t j : co_rb_devices) {
    if (j == device_id) continue;
    const double r2 = toroidal_dist2(device_positions[j], tagged_cell, side);
    interference += gain(j, tagged_cell_id) * path_gain(r2, params.alpha);
  }
  const double denom = interference + params.noise_over_power;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return signal / denom;
}

struct CellRate {
  double uncapped = 0.0;          // bps/Hz before the backhaul cap
  double capped = 0.0;            // min(uncapped, rho)
  std::vector<double> per_user;   // shares, scaled down when capped
};

// Aggregate rate of one active cell serving n users on its tier band: each
// user gets an equal FDMA sub-share of the 1/M tier band, and the backhaul
// cap applies to the cell aggregate.
CellRate rate_htc_cell(std::span<const double> user_sirs,
                       const RadioParams& params);

// Uplink per-device rate on one RB out of n_rb; no backhaul cap.
double rate_mtc(double sir, int n_rb, double max_spectral_efficiency = 30.0);

}  // namespace udnsim
