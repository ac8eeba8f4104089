#pragma once

#include <array>
#include <cstdint>
#include <string_view>

// Counter-based random numbers. Every draw is a pure function of
// (key, counter), so any worker can reproduce any draw without shared state.
namespace homog::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
Counter philox4x32(Counter ctr, Key key);

/// Mixes a master seed with a label and two indices into a sub-stream seed.
std::uint64_t derive(std::uint64_t master, std::string_view label,
                     std::uint64_t a = 0, std::uint64_t b = 0);

inline Key key_of(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

inline Counter counter_of(std::uint64_t a, std::uint64_t b) {
  return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
}

/// Uniform on [0,1) with 53 random bits taken from two 32-bit words.
inline double unit_from(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

/// Uniform on [0,1) at position (a, b) of the stream `seed`.
double uniform_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Standard normal at position (a, b) of the stream `seed` (Box-Muller).
double normal_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Sequential view over a counter-based stream.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : seed_(seed) {}

  double uniform();
  double normal();
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace homog::rng
