#include <doctest.h>

#include <cmath>
#include <vector>

#include "homog/paths.hpp"
#include "homog/rng.hpp"
#include "homog/stats.hpp"

using namespace homog;

TEST_CASE("path basics") {
  const PathGrid p = simulate_path(2.0, 100, 5);
  CHECK(p.n_steps() == 100);
  CHECK(p.values.size() == 101);
  CHECK(p.values[0] == 0.0);
  CHECK(p.dt == doctest::Approx(0.02));
  CHECK(p.time(50) == doctest::Approx(1.0));
  CHECK(p.at(0.03) == doctest::Approx(0.5 * (p.values[1] + p.values[2])));
  CHECK(p.at(5.0) == p.values.back());
}

TEST_CASE("endpoint does not depend on the step count") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const double end = simulate_path(1.0, 8, s).values.back();
    for (std::size_t n : {1u, 3u, 20u, 37u, 512u}) CHECK(simulate_path(1.0, n, s).values.back() == end);
  }
}

TEST_CASE("refinement keeps the coarse grid points") {
  for (std::size_t n : {5u, 12u, 64u}) {
    const PathGrid coarse = simulate_path(1.0, n, 77);
    const PathGrid fine = simulate_path(1.0, 4 * n, 77);
    for (std::size_t k = 0; k <= n; ++k) CHECK(fine.values[4 * k] == coarse.values[k]);
  }
}

TEST_CASE("increments are N(0, dt)") {
  const std::size_t n_paths = 4000;
  const std::size_t n = 12;
  for (std::size_t k : {0u, 5u, 11u}) {
    std::vector<double> inc(n_paths), sq(n_paths);
    for (std::size_t s = 0; s < n_paths; ++s) {
      const PathGrid p = simulate_path(3.0, n, rng::derive(1, "inc", s));
      inc[s] = p.values[k + 1] - p.values[k];
      sq[s] = inc[s] * inc[s];
    }
    const double dt = 0.25;
    CHECK(std::abs(stats::mean(inc)) < 4 * std::sqrt(dt / n_paths));
    CHECK(std::abs(stats::mean(sq) - dt) < 4 * dt * std::sqrt(2.0 / n_paths));
  }
  // increments over disjoint steps are uncorrelated
  std::vector<double> prod(n_paths);
  for (std::size_t s = 0; s < n_paths; ++s) {
    const PathGrid p = simulate_path(3.0, n, rng::derive(1, "inc", s));
    prod[s] = (p.values[3] - p.values[2]) * (p.values[9] - p.values[8]);
  }
  CHECK(std::abs(stats::mean(prod)) < 4 * 0.25 / std::sqrt(double(n_paths)));
}

TEST_CASE("rescale and shift") {
  const PathGrid p = simulate_path(1.0, 100, 3);
  const PathGrid r = rescale_path(p, 0.5, 2.0);
  CHECK(r.n_steps() == p.n_steps());
  CHECK(r.t_end == doctest::Approx(0.25));
  CHECK(r.values[40] == doctest::Approx(0.5 * p.values[40]));
  const PathGrid s = shift_path(p, 1.5);
  CHECK(s.values[0] == 1.5);
  CHECK(s.values[7] == doctest::Approx(p.values[7] + 1.5));
}

TEST_CASE("local time mass equals elapsed time") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const double t = 0.5 + rng::uniform_at(9, s);
    const PathGrid p = simulate_path(t, 200, rng::derive(2, "lt", s));
    const LocalTimeGrid lt = local_time(p, 0.03);
    CHECK(lt.total_mass(200) == doctest::Approx(t).epsilon(1e-13));
    CHECK(lt.total_mass(100) == doctest::Approx(t / 2).epsilon(1e-13));
    CHECK(lt.total_mass(0) == 0.0);
  }
}

TEST_CASE("local time occupation formula") {
  const PathGrid p = simulate_path(1.0, 1000, 8);
  const LocalTimeGrid lt = local_time(p, 0.01);
  // sum_j f(y_j) L(t, y_j) dy versus the time integral of f along the path
  const auto f = [](double y) { return std::cos(y) + y * y; };
  double direct = 0.0;
  for (std::size_t k = 0; k < 1000; ++k) {
    const double y = lt.bin_center(bin_index(p.values[k], 0.01));
    direct += f(y) * p.dt;
  }
  CHECK(lt.integrate(f, 1000) == doctest::Approx(direct).epsilon(1e-12));
  const auto profile = lt.profile(1000);
  double mass = 0.0;
  for (double v : profile) mass += v * lt.dy();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("local time combinations are linear") {
  const LocalTimeGrid a = local_time(simulate_path(1.0, 100, 1), 0.05);
  const LocalTimeGrid b = local_time(simulate_path(1.0, 100, 2), 0.05);
  const LocalTimeGrid c = LocalTimeGrid::combine(2.0, a, -1.0, b);
  CHECK(c.total_mass(100) == doctest::Approx(1.0));
  for (double y : {-0.3, 0.0, 0.22}) CHECK(c.at(60, y) == doctest::Approx(2 * a.at(60, y) - b.at(60, y)));
}
