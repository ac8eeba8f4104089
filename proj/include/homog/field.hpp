#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homog/kernel.hpp"

namespace homog {

/// Law of the lattice marks xi_ij; all are symmetric, centred and bounded by 1.
enum class MarkLaw { Rademacher, Uniform, Zero };

MarkLaw mark_law_from_name(const std::string& name);
std::string to_string(MarkLaw law);
double mark_variance(MarkLaw law);

enum class SmoothnessClass { C0, C2InTime, HolderTheta };

struct SpaceTimePoint {
  double t;
  double x;
};

/// Randomly shifted lattice shot noise
///
///   c(t, x) = a * sum_{i,j} xi_ij k_t(t - i - U) k_x(x - j - V)
///
/// with iid marks xi_ij and a uniform shift (U, V) in the unit cell. Marks and
/// shift are pure functions of the seed, so the realization can be queried at
/// arbitrary coordinates in any order.
class KernelField {
 public:
  KernelField(Kernel1D kernel_t, Kernel1D kernel_x, MarkLaw marks, std::uint64_t seed,
              double amplitude = 1.0);

  /// Same law, different realization.
  KernelField with_seed(std::uint64_t seed) const;
  /// Same realization with every mark flipped; equal in law for symmetric marks.
  KernelField negated() const;

  double value(double t, double x) const;
  double operator()(double t, double x) const { return value(t, x); }
  /// d^order c / dt^order; needs a C^2 time kernel.
  double time_derivative(double t, double x, int order) const;

  double mark(std::int64_t i, std::int64_t j) const;
  std::pair<double, double> shift() const { return {shift_t_, shift_x_}; }

  /// sup|xi| * (overlapping cells) * sup|K| * amplitude.
  double sup_bound() const;
  /// Values at points farther apart than this (in t or in x) are uncorrelated.
  std::pair<double, double> dependence_range() const;
  SmoothnessClass smoothness_class() const;
  bool is_c2_in_time() const { return kernel_t_.smoothness() >= 2; }

  const Kernel1D& kernel_t() const { return kernel_t_; }
  const Kernel1D& kernel_x() const { return kernel_x_; }
  MarkLaw marks() const { return marks_; }
  double amplitude() const { return amplitude_; }
  std::uint64_t seed() const { return seed_; }
  /// Variance of amplitude * xi.
  double scaled_mark_variance() const;

  /// Lattice cells i whose time support covers t (inclusive range).
  std::pair<std::int64_t, std::int64_t> time_cells(double t) const;
  /// Spatial profile sum_j xi_ij k_x(x - j - V) of the time cell i.
  double cell_profile(std::int64_t i, double x) const;
  /// k_t (or its derivative) evaluated for time cell i.
  double time_factor(std::int64_t i, double t, int order = 0) const;

 private:
  Kernel1D kernel_t_;
  Kernel1D kernel_x_;
  MarkLaw marks_;
  std::uint64_t seed_;
  std::uint64_t mark_stream_;
  double amplitude_;
  double shift_t_;
  double shift_x_;
};

/// Evaluates c(t / time_scale, x / space_scale): a pure change of coordinates.
class ScaledField {
 public:
  ScaledField(const KernelField& field, double time_scale, double space_scale)
      : field_(&field), time_scale_(time_scale), space_scale_(space_scale) {}

  double operator()(double t, double x) const {
    return field_->value(t / time_scale_, x / space_scale_);
  }
  double sup_bound() const { return field_->sup_bound(); }

 private:
  const KernelField* field_;
  double time_scale_;
  double space_scale_;
};

std::vector<double> sample_field(const KernelField& field, std::span<const SpaceTimePoint> points);

/// Closed-form correlation functionals of a KernelField. With a product
/// kernel, Phi(tau, chi) = var(a xi) A_t(tau) A_x(chi) where A is the 1-d
/// kernel autocorrelation. The integrals of A_t and A_x are obtained by
/// adaptive quadrature at construction.
class CorrelationModel {
 public:
  explicit CorrelationModel(const KernelField& field);

  double phi(double tau, double chi) const;
  /// Psi(r) = int Phi(r, y) dy.
  double psi(double r) const;
  /// R(x) = int Phi(r, x) dr.
  double r_of_x(double x) const;
  double sigma_two_sided() const { return sigma_two_sided_; }
  double sigma_one_sided() const { return 0.5 * sigma_two_sided_; }
  double variance() const { return phi(0.0, 0.0); }
  /// E Phi(tau, sd * Z) for standard normal Z.
  double gaussian_average(double tau, double sd) const;
  /// Phi vanishes for |tau| >= t_support() or |chi| >= x_support().
  double t_support() const { return kernel_t_.width(); }
  double x_support() const { return kernel_x_.width(); }
  double integral_abs() const;

 private:
  Kernel1D kernel_t_;
  Kernel1D kernel_x_;
  double mark_variance_;
  double int_autocorr_t_;
  double int_autocorr_x_;
  double sigma_two_sided_;
};

CorrelationModel correlation_model(const KernelField& field);

struct CorrelationEstimate {
  double estimate;
  double std_error;
};

/// Monte Carlo estimate of Phi at each lag from independent realizations
/// (seeds derived from field.seed()).
std::vector<CorrelationEstimate> empirical_correlation(const KernelField& field,
                                                       std::span<const SpaceTimePoint> lags,
                                                       std::size_t n_samples);

}  // namespace homog
