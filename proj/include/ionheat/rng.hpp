#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "ionheat/constants.hpp"

// Counter-based random numbers. Every variate is addressed by
// (seed, stream, block, lane), so ensembles are reproducible no matter how
// realizations are scheduled. The generator is Philox4x64-10; outputs match
// the widely used reference implementation block for block.
namespace ionheat {

struct SeedSpec {
  std::uint64_t seed = 42;
  std::uint64_t stream = 0;
};

namespace philox {

inline constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
inline constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
inline constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

inline std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                          std::array<std::uint64_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMult0, ctr[0], hi0, lo0);
    mulhilo(kMult1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

}  // namespace philox

// Standard normal variates, four per Philox block via Box-Muller.
class GaussianStream {
 public:
  explicit GaussianStream(SeedSpec spec) : spec_(spec) {}

  double next() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  SeedSpec spec() const { return spec_; }

 private:
  static double to_open_unit(std::uint64_t x) {
    // (0,1) exclusive: 53-bit mantissa offset by half an ulp
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
  }

  void refill() {
    const auto words = philox::block({block_index_++, 0, 0, 0}, {spec_.seed, spec_.stream});
    for (int i = 0; i < 2; ++i) {
      const double u1 = to_open_unit(words[2 * i]);
      const double u2 = to_open_unit(words[2 * i + 1]);
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * constants::pi * u2;
      buf_[2 * i] = radius * std::cos(angle);
      buf_[2 * i + 1] = radius * std::sin(angle);
    }
    pos_ = 0;
  }

  SeedSpec spec_;
  std::uint64_t block_index_ = 0;
  int pos_ = 4;
  std::array<double, 4> buf_{};
};

}  // namespace ionheat
