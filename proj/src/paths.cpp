#include "homog/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "homog/rng.hpp"

namespace homog {

double PathGrid::at(double s) const {
  const std::size_t n = n_steps();
  if (n == 0) return values.empty() ? 0.0 : values.front();
  if (s <= 0.0) return values.front();
  if (s >= t_end) return values.back();
  const double pos = s / dt;
  const auto k = std::min(static_cast<std::size_t>(pos), n - 1);
  const double frac = pos - static_cast<double>(k);
  return values[k] + frac * (values[k + 1] - values[k]);
}

PathGrid simulate_path(double t, std::size_t n_steps, std::uint64_t seed) {
  if (!(t > 0.0)) throw std::invalid_argument("simulate_path: t must be positive");
  if (n_steps < 1) throw std::invalid_argument("simulate_path: n_steps must be >= 1");

  std::size_t base = n_steps;
  int levels = 0;
  while (base % 2 == 0) {
    base /= 2;
    ++levels;
  }

  const std::uint64_t base_stream = rng::derive(seed, "path-base");
  const std::uint64_t bridge_stream = rng::derive(seed, "path-bridge");

  // Endpoint first, then the skeleton as a sequential bridge towards it, so
  // B(t) is the same for every step count.
  std::vector<double> values(base + 1, 0.0);
  values[base] = std::sqrt(t) * rng::normal_at(base_stream, 0, 1);
  const double h_base = t / static_cast<double>(base);
  for (std::size_t k = 0; k + 1 < base; ++k) {
    const double remaining = static_cast<double>(base - k);
    const double mean = values[k] + (values[base] - values[k]) / remaining;
    const double sd = std::sqrt(h_base * (remaining - 1.0) / remaining);
    values[k + 1] = mean + sd * rng::normal_at(base_stream, k);
  }

  double h = h_base;
  for (int level = 1; level <= levels; ++level) {
    const std::size_t n = values.size() - 1;
    std::vector<double> finer(2 * n + 1);
    const double mid_sd = std::sqrt(h / 4.0);
    for (std::size_t k = 0; k < n; ++k) {
      finer[2 * k] = values[k];
      finer[2 * k + 1] = 0.5 * (values[k] + values[k + 1]) +
                         mid_sd * rng::normal_at(bridge_stream, k, static_cast<std::uint64_t>(level));
    }
    finer[2 * n] = values[n];
    values = std::move(finer);
    h *= 0.5;
  }

  PathGrid path;
  path.t_end = t;
  path.dt = t / static_cast<double>(n_steps);
  path.values = std::move(values);
  path.seed = seed;
  return path;
}

PathGrid rescale_path(const PathGrid& path, double eps, double nu) {
  if (!(eps > 0.0)) throw std::invalid_argument("rescale_path: eps must be positive");
  const double time_factor = std::pow(eps, nu);
  const double space_factor = std::pow(eps, 0.5 * nu);
  PathGrid out = path;
  out.t_end = path.t_end * time_factor;
  out.dt = path.dt * time_factor;
  for (double& v : out.values) v *= space_factor;
  return out;
}

PathGrid shift_path(const PathGrid& path, double x) {
  PathGrid out = path;
  for (double& v : out.values) v += x;
  return out;
}

// ---------------------------------------------------------------------------

LocalTimeGrid::LocalTimeGrid(double dt, double dy, std::size_t n_steps, std::int64_t bin_lo,
                             std::int64_t bin_hi, std::vector<Entry> entries)
    : dt_(dt), dy_(dy), n_steps_(n_steps), bin_lo_(bin_lo), bin_hi_(bin_hi),
      entries_(std::move(entries)) {
  if (!(dy > 0.0)) throw std::invalid_argument("local time bin width must be positive");
  if (bin_hi < bin_lo) throw std::invalid_argument("empty local time bin range");
}

std::vector<double> LocalTimeGrid::profile(std::size_t k) const {
  std::vector<double> out(n_bins(), 0.0);
  for (const auto& e : entries_) {
    if (e.step < k) out[static_cast<std::size_t>(e.bin - bin_lo_)] += e.density;
  }
  return out;
}

double LocalTimeGrid::at(std::size_t k, double y) const {
  const std::int64_t bin = bin_index(y, dy_);
  double sum = 0.0;
  for (const auto& e : entries_) {
    if (e.step < k && e.bin == bin) sum += e.density;
  }
  return sum;
}

double LocalTimeGrid::total_mass(std::size_t k) const {
  double sum = 0.0;
  for (const double v : profile(k)) sum += v * dy_;
  return sum;
}

double LocalTimeGrid::integrate(const std::function<double(double)>& f, std::size_t k) const {
  const auto prof = profile(k);
  double sum = 0.0;
  for (std::size_t j = 0; j < prof.size(); ++j) {
    if (prof[j] != 0.0) sum += f(bin_center(bin_lo_ + static_cast<std::int64_t>(j))) * prof[j] * dy_;
  }
  return sum;
}

LocalTimeGrid LocalTimeGrid::combine(double a, const LocalTimeGrid& lhs, double b,
                                     const LocalTimeGrid& rhs) {
  if (lhs.dt_ != rhs.dt_ || lhs.dy_ != rhs.dy_ || lhs.n_steps_ != rhs.n_steps_) {
    throw std::invalid_argument("local time grids differ");
  }
  std::vector<Entry> entries;
  entries.reserve(lhs.entries_.size() + rhs.entries_.size());
  for (const auto& e : lhs.entries_) entries.push_back({e.step, e.bin, a * e.density});
  for (const auto& e : rhs.entries_) entries.push_back({e.step, e.bin, b * e.density});
  return {lhs.dt_, lhs.dy_, lhs.n_steps_, std::min(lhs.bin_lo_, rhs.bin_lo_),
          std::max(lhs.bin_hi_, rhs.bin_hi_), std::move(entries)};
}

LocalTimeGrid local_time(const PathGrid& path, double dy) {
  if (!(dy > 0.0)) throw std::invalid_argument("local_time: dy must be positive");
  const std::size_t n = path.n_steps();
  const auto [lo_it, hi_it] = std::minmax_element(path.values.begin(), path.values.end());
  const std::int64_t bin_lo = bin_index(*lo_it, dy) - 4;
  const std::int64_t bin_hi = bin_index(*hi_it, dy) + 4;
  const double density = path.dt / dy;
  std::vector<LocalTimeGrid::Entry> entries;
  entries.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    entries.push_back({k, bin_index(path.values[k], dy), density});
  }
  return {path.dt, dy, n, bin_lo, bin_hi, std::move(entries)};
}

}  // namespace homog
