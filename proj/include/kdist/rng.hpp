#pragma once

#include <array>
#include <cstdint>

namespace kdist {

// Counter-based stream identity. Distinct (base_seed, stream_index) pairs give
// statistically independent streams; the same pair replays bit-identically.
struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;

  // Child stream derived through the block cipher, so substream trees never
  // collide for distinct (index, k).
  [[nodiscard]] SeedSpec substream(std::uint64_t k) const;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// Threefry-2x64, 20 rounds. Pure function of (key, counter).
std::array<std::uint64_t, 2> threefry2x64(const std::array<std::uint64_t, 2>& key,
                                          const std::array<std::uint64_t, 2>& counter);

// Deterministic generator over one stream. Draw order is part of the contract:
// callers that need reproducibility must keep their consumption sequence fixed.
class RngStream {
 public:
  explicit RngStream(SeedSpec seed)
      : key_{seed.base_seed, seed.stream_index} {}

  std::uint64_t next_u64();

  // (0, 1]; never returns 0 so log() is safe.
  double uniform01();
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller (second value cached).
  double gaussian();

  // Gamma(shape, 1) by Marsaglia-Tsang, with the shape<1 boost step.
  double gamma(double shape);

  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

 private:
  std::array<std::uint64_t, 2> key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> block_{};
  int block_pos_ = 2;
  double cached_gauss_ = 0.0;
  bool has_cached_gauss_ = false;
};

}  // namespace kdist
