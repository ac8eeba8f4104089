#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "homog/rng.hpp"
#include "homog/stats.hpp"

using namespace homog;

TEST_CASE("philox4x32-10 known answers") {
  CHECK(rng::philox4x32({0, 0, 0, 0}, {0, 0}) ==
        rng::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(rng::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                        {0xffffffffu, 0xffffffffu}) ==
        rng::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(rng::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                        {0xa4093822u, 0x299f31d0u}) ==
        rng::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("derive separates labels and indices") {
  std::set<std::uint64_t> seen;
  for (const char* label : {"field", "path", "limit"}) {
    for (std::uint64_t a = 0; a < 20; ++a) {
      for (std::uint64_t b = 0; b < 5; ++b) seen.insert(rng::derive(7, label, a, b));
    }
  }
  CHECK(seen.size() == 300);
  CHECK(rng::derive(7, "field", 3, 1) == rng::derive(7, "field", 3, 1));
  CHECK(rng::derive(7, "field", 3) != rng::derive(8, "field", 3));
}

TEST_CASE("draws are pure functions of their position") {
  CHECK(rng::uniform_at(5, 10, 2) == rng::uniform_at(5, 10, 2));
  CHECK(rng::normal_at(5, 10, 2) == rng::normal_at(5, 10, 2));
  CHECK(rng::normal_at(5, 10, 2) != rng::normal_at(5, 11, 2));
}

TEST_CASE("uniform and normal moments") {
  const std::size_t n = 100000;
  std::vector<double> u(n), z(n), z2(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = rng::uniform_at(11, i);
    REQUIRE(u[i] >= 0.0);
    REQUIRE(u[i] < 1.0);
    z[i] = rng::normal_at(12, i);
    z2[i] = z[i] * z[i];
  }
  const double se_u = std::sqrt(1.0 / 12.0 / n);
  CHECK(std::abs(stats::mean(u) - 0.5) < 4 * se_u);
  CHECK(std::abs(stats::mean(z)) < 4 / std::sqrt(double(n)));
  CHECK(std::abs(stats::mean(z2) - 1.0) < 4 * std::sqrt(2.0 / n));
}

TEST_CASE("sequential stream") {
  rng::Stream a(3), b(3);
  for (int i = 0; i < 10; ++i) CHECK(a.normal() == b.normal());
  rng::Stream c(3);
  std::vector<double> xs(50000);
  for (auto& x : xs) x = c.normal();
  CHECK(std::abs(stats::variance(xs) - 1.0) < 4 * std::sqrt(2.0 / xs.size()));
}
