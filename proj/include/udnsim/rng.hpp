// Counter-derived random number streams. Every consumer gets its own stream
// keyed by (master_seed, stream_id, purpose), so results do not depend on
// thread scheduling or evaluation order.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace udnsim {

// One substream per sampling purpose inside a realization.
enum class StreamPurpose : std::uint64_t {
  Cells = 1,
  Users = 2,
  MtcPoints = 3,
  MtcThin = 4,
  MtcSelect = 5,
  FadingHtc = 6,
  FadingMtc = 7,
  MtcSirSample = 8,
  Generic = 0xff,
};

// SplitMix64 finalizer; avalanches a 64-bit value.
std::uint64_t mix64(std::uint64_t x);

// Seed for the (master, stream, purpose) substream.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_id,
                          StreamPurpose purpose);

class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id,
            StreamPurpose purpose)
      : engine_(derive_seed(master_seed, stream_id, purpose)) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Unit-mean exponential.
  double exponential() { return -std::log1p(-uniform()); }

  std::int64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(engine_);
  }

  // Unbiased integer in [0, n), n >= 1.
  std::uint64_t uniform_below(std::uint64_t n);

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace udnsim
