// Counter-based random streams for reproducible, partition-independent
// Monte Carlo. A stream is addressed by (seed, stream id); the id space is
// typically the trial index, so any worker can regenerate any trial's
// randomness without coordination.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace pncsim {

using Complex = std::complex<double>;

namespace detail {

// Philox-4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3").
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }
};

}  // namespace detail

// One logical random sequence. The 64-bit seed is the Philox key; the
// stream id occupies the high counter words and the block index the low
// ones, so distinct (seed, id) pairs index disjoint counter subspaces.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    if (lane_ >= 4) refill();
    const std::uint64_t lo = lanes_[lane_];
    const std::uint64_t hi = lanes_[lane_ + 1];
    lane_ += 2;
    return lo | (hi << 32);
  }

  // Strictly inside (0, 1); safe as a log() argument.
  double next_unit_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform symbol in Z_M, exact for power-of-two M.
  unsigned next_symbol(unsigned order) {
    return static_cast<unsigned>(next_u64() & (order - 1));
  }

  // Circularly symmetric complex Gaussian, E|z|^2 = variance.
  Complex next_cgauss(double variance) {
    const double u1 = next_unit_double();
    const double u2 = next_unit_double();
    const double r = std::sqrt(-variance * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  void refill() {
    lanes_ = detail::Philox4x32::block(
        {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
         static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)},
        {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
    ++block_;
    lane_ = 0;
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> lanes_{};
  int lane_ = 4;
};

}  // namespace pncsim
