#include "homog/rng.hpp"

#include <cmath>
#include <numbers>

namespace homog::rng {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::array<double, 2> box_muller(const Counter& r) {
  double u1 = unit_from(r[0], r[1]);
  const double u2 = unit_from(r[2], r[3]);
  if (u1 <= 0.0) u1 = 0x1.0p-54;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

Counter philox4x32(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t derive(std::uint64_t master, std::string_view label, std::uint64_t a,
                     std::uint64_t b) {
  // FNV-1a over the label, then chained splitmix finalizers.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char ch : label) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  }
  std::uint64_t z = splitmix(master ^ splitmix(h));
  z = splitmix(z ^ splitmix(a + 0x632BE59BD9B4E019ull));
  z = splitmix(z ^ splitmix(b + 0x85157AF5ull));
  return z;
}

double uniform_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  const Counter r = philox4x32(counter_of(a, b), key_of(seed));
  return unit_from(r[0], r[1]);
}

double normal_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return box_muller(philox4x32(counter_of(a, b), key_of(seed)))[0];
}

double Stream::uniform() {
  const Counter r = philox4x32(counter_of(counter_++, 0x5EED), key_of(seed_));
  return unit_from(r[0], r[1]);
}

double Stream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const auto z = box_muller(philox4x32(counter_of(counter_++, 0x6A55), key_of(seed_)));
  spare_ = z[1];
  has_spare_ = true;
  return z[0];
}

}  // namespace homog::rng
