#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "homog/field.hpp"

namespace homog::detail {

// Cumulative trapezoid integrals of one time cell's spatial profile on the
// nodes m * dy, m = m_lo..m_hi, anchored at y = 0.
struct CellPrimitives {
  std::vector<double> g1;  // int_0^y profile(z / scale) dz
  std::vector<double> g2;  // int_0^y g1
};

class SpatialPrimitives {
 public:
  SpatialPrimitives(const KernelField& field, double scale, double dy, double y_min, double y_max,
                    std::int64_t cell_lo, std::int64_t cell_hi)
      : dy_(dy), cell_lo_(cell_lo) {
    m_lo_ = static_cast<std::int64_t>(std::floor(std::min(y_min, 0.0) / dy)) - 2;
    const auto m_hi = static_cast<std::int64_t>(std::ceil(std::max(y_max, 0.0) / dy)) + 2;
    const auto n_nodes = static_cast<std::size_t>(m_hi - m_lo_ + 1);
    const auto zero = static_cast<std::size_t>(-m_lo_);
    cells_.resize(static_cast<std::size_t>(cell_hi - cell_lo + 1));
    std::vector<double> profile(n_nodes);
    for (std::int64_t i = cell_lo; i <= cell_hi; ++i) {
      for (std::size_t m = 0; m < n_nodes; ++m) {
        const double y = static_cast<double>(m_lo_ + static_cast<std::int64_t>(m)) * dy;
        profile[m] = field.cell_profile(i, y / scale);
      }
      auto& cell = cells_[static_cast<std::size_t>(i - cell_lo)];
      cell.g1 = cumulative(profile, zero);
      cell.g2 = cumulative(cell.g1, zero);
    }
  }

  // Returns (G1(y), G2(y)) with G1 linear between nodes and G2 its exact integral.
  std::pair<double, double> at(std::int64_t cell, double y) const {
    const auto& c = cells_[static_cast<std::size_t>(cell - cell_lo_)];
    const double pos = y / dy_ - static_cast<double>(m_lo_);
    const auto m = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(0.0, std::floor(pos))), 0,
                                           c.g1.size() - 2);
    const double h = y - static_cast<double>(m_lo_ + static_cast<std::int64_t>(m)) * dy_;
    const double slope = (c.g1[m + 1] - c.g1[m]) / dy_;
    return {c.g1[m] + slope * h, c.g2[m] + c.g1[m] * h + 0.5 * slope * h * h};
  }

  std::int64_t node_lo() const { return m_lo_; }
  std::size_t n_nodes() const { return cells_.empty() ? 0 : cells_.front().g1.size(); }
  /// G1 of `cell` at node node_lo() + m.
  double g1_node(std::int64_t cell, std::size_t m) const {
    return cells_[static_cast<std::size_t>(cell - cell_lo_)].g1[m];
  }

 private:
  std::vector<double> cumulative(const std::vector<double>& f, std::size_t zero) const {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t m = zero; m + 1 < f.size(); ++m) out[m + 1] = out[m] + 0.5 * dy_ * (f[m] + f[m + 1]);
    for (std::size_t m = zero; m > 0; --m) out[m - 1] = out[m] - 0.5 * dy_ * (f[m] + f[m - 1]);
    return out;
  }

  double dy_;
  std::int64_t cell_lo_;
  std::int64_t m_lo_ = 0;
  std::vector<CellPrimitives> cells_;
};

}  // namespace homog::detail
