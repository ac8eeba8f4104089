#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace homog {

/// Brownian path sampled on the uniform grid t_k = k * dt, k = 0..n_steps.
struct PathGrid {
  double t_end = 0.0;
  double dt = 0.0;
  std::vector<double> values;  // B(t_k), values[0] == 0 for a fresh path
  std::uint64_t seed = 0;

  std::size_t n_steps() const { return values.empty() ? 0 : values.size() - 1; }
  double time(std::size_t k) const { return t_end * static_cast<double>(k) / static_cast<double>(n_steps()); }
  /// Piecewise-linear interpolation; clamps outside [0, t_end].
  double at(double s) const;
};

/// Simulates B on [0, t] with n_steps uniform steps.
///
/// The path is built from a coarse skeleton (odd part of n_steps) refined by
/// Brownian-bridge midpoints keyed by (level, index). Consequently the paths
/// for n and 2n steps with the same seed coincide on the common grid points,
/// which is what grid-refinement studies need. The endpoint B(t) is drawn
/// first and does not depend on n_steps at all.
PathGrid simulate_path(double t, std::size_t n_steps, std::uint64_t seed);

/// Path s -> eps^{nu/2} B(s / eps^nu) on the induced grid (no new randomness).
PathGrid rescale_path(const PathGrid& path, double eps, double nu);

/// Shifts every value by x (the process X^x = x + B).
PathGrid shift_path(const PathGrid& path, double x);

/// Occupation-measure local time of a piecewise-constant path.
///
/// Bins are aligned with the origin: bin j covers [j dy, (j+1) dy). During
/// step k the path sits at values[k] and deposits density dt/dy into its bin.
/// Entries are stored sparsely; linear combinations of local times are again
/// LocalTimeGrids (entries with arbitrary real weights).
class LocalTimeGrid {
 public:
  struct Entry {
    std::size_t step;
    std::int64_t bin;
    double density;  // increment of L(., y_bin) over the step, units time/space
  };

  LocalTimeGrid(double dt, double dy, std::size_t n_steps, std::int64_t bin_lo,
                std::int64_t bin_hi, std::vector<Entry> entries);

  double dt() const { return dt_; }
  double dy() const { return dy_; }
  std::size_t n_steps() const { return n_steps_; }
  std::int64_t bin_lo() const { return bin_lo_; }
  std::int64_t bin_hi() const { return bin_hi_; }
  std::size_t n_bins() const { return static_cast<std::size_t>(bin_hi_ - bin_lo_ + 1); }
  const std::vector<Entry>& entries() const { return entries_; }
  double bin_center(std::int64_t bin) const { return (static_cast<double>(bin) + 0.5) * dy_; }

  /// L(t_k, y_j) for j = bin_lo..bin_hi.
  std::vector<double> profile(std::size_t k) const;
  /// L(t_k, y) for the bin containing y.
  double at(std::size_t k, double y) const;
  /// sum_j L(t_k, y_j) dy, equal to t_k for a path local time.
  double total_mass(std::size_t k) const;
  /// sum_j f(y_j) L(t_k, y_j) dy.
  double integrate(const std::function<double(double)>& f, std::size_t k) const;

  /// a * lhs + b * rhs (same dt, dy and step count).
  static LocalTimeGrid combine(double a, const LocalTimeGrid& lhs, double b,
                               const LocalTimeGrid& rhs);

 private:
  double dt_;
  double dy_;
  std::size_t n_steps_;
  std::int64_t bin_lo_;
  std::int64_t bin_hi_;
  std::vector<Entry> entries_;
};

/// Bins the path with width dy over [min B - 4 dy, max B + 4 dy].
LocalTimeGrid local_time(const PathGrid& path, double dy);

/// Global bin index of y for width dy.
inline std::int64_t bin_index(double y, double dy) {
  return static_cast<std::int64_t>(std::floor(y / dy));
}

}  // namespace homog
