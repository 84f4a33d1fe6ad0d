#include "udnsim/rng.hpp"

#include <limits>
#include <stdexcept>

namespace udnsim {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_id,
                          StreamPurpose purpose) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ (stream_id + 0x9e3779b97f4a7c15ull));
  h = mix64(h ^ (static_cast<std::uint64_t>(purpose) * 0xd6e8feb86659fd93ull));
  return h;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be >= 1");
  const std::uint64_t threshold = (0ull - n) % n;  // 2^64 mod n
  std::uint64_t x;
  do {
    x = engine_();
  } while (x < threshold);
  return x % n;
}

}  // namespace udnsim
