#include "kdist/rng.hpp"

#include <cmath>

#include "kdist/errors.hpp"

namespace kdist {

namespace {

constexpr std::uint64_t kKeyParity = 0x1BD11BDAA9FC1A22ull;
constexpr int kRotations[8] = {16, 42, 12, 31, 16, 32, 24, 21};

inline std::uint64_t rotl(std::uint64_t x, int r) {
  return (x << r) | (x >> (64 - r));
}

}  // namespace

std::array<std::uint64_t, 2> threefry2x64(const std::array<std::uint64_t, 2>& key,
                                          const std::array<std::uint64_t, 2>& counter) {
  const std::uint64_t ks[3] = {key[0], key[1], key[0] ^ key[1] ^ kKeyParity};
  std::uint64_t x0 = counter[0] + ks[0];
  std::uint64_t x1 = counter[1] + ks[1];
  for (int round = 0; round < 20; ++round) {
    x0 += x1;
    x1 = rotl(x1, kRotations[round % 8]) ^ x0;
    if (round % 4 == 3) {
      const int j = round / 4 + 1;
      x0 += ks[j % 3];
      x1 += ks[(j + 1) % 3] + static_cast<std::uint64_t>(j);
    }
  }
  return {x0, x1};
}

SeedSpec SeedSpec::substream(std::uint64_t k) const {
  const auto mixed = threefry2x64({base_seed, stream_index}, {0x6b64697374726565ull, k});
  return SeedSpec{base_seed, mixed[0] ^ (mixed[1] << 1)};
}

std::uint64_t RngStream::next_u64() {
  if (block_pos_ == 2) {
    block_ = threefry2x64(key_, {counter_++, 0});
    block_pos_ = 0;
  }
  return block_[block_pos_++];
}

double RngStream::uniform01() {
  // 53 mantissa bits, shifted into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RngStream::gaussian() {
  if (has_cached_gauss_) {
    has_cached_gauss_ = false;
    return cached_gauss_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  cached_gauss_ = radius * std::sin(angle);
  has_cached_gauss_ = true;
  return radius * std::cos(angle);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw validation_error("gamma: shape must be > 0");
  if (shape < 1.0) {
    const double boost = std::pow(uniform01(), 1.0 / shape);
    return boost * gamma(shape + 1.0);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace kdist
