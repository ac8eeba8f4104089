#include "homog/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "homog/quadrature.hpp"
#include "homog/rng.hpp"

namespace homog {

MarkLaw mark_law_from_name(const std::string& name) {
  if (name == "rademacher") return MarkLaw::Rademacher;
  if (name == "uniform") return MarkLaw::Uniform;
  if (name == "zero") return MarkLaw::Zero;
  throw std::invalid_argument("unknown mark law '" + name + "'");
}

std::string to_string(MarkLaw law) {
  switch (law) {
    case MarkLaw::Rademacher: return "rademacher";
    case MarkLaw::Uniform: return "uniform";
    case MarkLaw::Zero: return "zero";
  }
  return "?";
}

double mark_variance(MarkLaw law) {
  switch (law) {
    case MarkLaw::Rademacher: return 1.0;
    case MarkLaw::Uniform: return 1.0 / 3.0;
    case MarkLaw::Zero: return 0.0;
  }
  return 0.0;
}

KernelField::KernelField(Kernel1D kernel_t, Kernel1D kernel_x, MarkLaw marks, std::uint64_t seed,
                         double amplitude)
    : kernel_t_(kernel_t),
      kernel_x_(kernel_x),
      marks_(marks),
      seed_(seed),
      mark_stream_(rng::derive(seed, "marks")),
      amplitude_(amplitude) {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("amplitude must be finite");
  const std::uint64_t shift_stream = rng::derive(seed, "lattice-shift");
  shift_t_ = rng::uniform_at(shift_stream, 0);
  shift_x_ = rng::uniform_at(shift_stream, 1);
}

KernelField KernelField::with_seed(std::uint64_t seed) const {
  return {kernel_t_, kernel_x_, marks_, seed, amplitude_};
}

KernelField KernelField::negated() const { return {kernel_t_, kernel_x_, marks_, seed_, -amplitude_}; }

double KernelField::mark(std::int64_t i, std::int64_t j) const {
  switch (marks_) {
    case MarkLaw::Zero:
      return 0.0;
    case MarkLaw::Rademacher: {
      const auto r = rng::philox4x32(
          rng::counter_of(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)),
          rng::key_of(mark_stream_));
      return (r[0] & 1u) ? 1.0 : -1.0;
    }
    case MarkLaw::Uniform:
      return 2.0 * rng::uniform_at(mark_stream_, static_cast<std::uint64_t>(i),
                                   static_cast<std::uint64_t>(j)) -
             1.0;
  }
  return 0.0;
}

std::pair<std::int64_t, std::int64_t> KernelField::time_cells(double t) const {
  const double st = t - shift_t_;
  return {static_cast<std::int64_t>(std::floor(st - kernel_t_.width())) + 1,
          static_cast<std::int64_t>(std::floor(st))};
}

double KernelField::cell_profile(std::int64_t i, double x) const {
  const double sx = x - shift_x_;
  const auto j_lo = static_cast<std::int64_t>(std::floor(sx - kernel_x_.width())) + 1;
  const auto j_hi = static_cast<std::int64_t>(std::floor(sx));
  double sum = 0.0;
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    const double kx = kernel_x_(sx - static_cast<double>(j));
    if (kx != 0.0) sum += mark(i, j) * kx;
  }
  return sum;
}

double KernelField::time_factor(std::int64_t i, double t, int order) const {
  const double s = t - shift_t_ - static_cast<double>(i);
  return order == 0 ? kernel_t_(s) : kernel_t_.derivative(s, order);
}

double KernelField::value(double t, double x) const {
  if (marks_ == MarkLaw::Zero) return 0.0;
  const auto [i_lo, i_hi] = time_cells(t);
  double sum = 0.0;
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    const double kt = time_factor(i, t);
    if (kt != 0.0) sum += kt * cell_profile(i, x);
  }
  return amplitude_ * sum;
}

double KernelField::time_derivative(double t, double x, int order) const {
  if (!is_c2_in_time()) throw std::logic_error("field is not C^2 in time");
  if (marks_ == MarkLaw::Zero) return 0.0;
  const auto [i_lo, i_hi] = time_cells(t);
  double sum = 0.0;
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    const double kt = time_factor(i, t, order);
    if (kt != 0.0) sum += kt * cell_profile(i, x);
  }
  return amplitude_ * sum;
}

double KernelField::sup_bound() const {
  if (marks_ == MarkLaw::Zero) return 0.0;
  return std::abs(amplitude_) * std::ceil(kernel_t_.width()) * std::ceil(kernel_x_.width()) *
         kernel_t_.sup() * kernel_x_.sup();
}

std::pair<double, double> KernelField::dependence_range() const {
  return {kernel_t_.width() + 1.0, kernel_x_.width() + 1.0};
}

SmoothnessClass KernelField::smoothness_class() const {
  if (is_c2_in_time()) return SmoothnessClass::C2InTime;
  if (kernel_x_.holder_exponent() > 0.0 && kernel_t_.smoothness() >= 0) {
    return SmoothnessClass::HolderTheta;
  }
  return SmoothnessClass::C0;
}

double KernelField::scaled_mark_variance() const {
  return amplitude_ * amplitude_ * mark_variance(marks_);
}

std::vector<double> sample_field(const KernelField& field, std::span<const SpaceTimePoint> points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(field.value(p.t, p.x));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double integrate_autocorrelation(const Kernel1D& k) {
  const auto f = [&k](double tau) { return k.autocorrelation(tau); };
  const double w = k.width();
  return quad::integrate_split(f, -w, w, {-0.5 * w, 0.0, 0.5 * w}, quad::kDefaultRelTol, 1e-14);
}

}  // namespace

CorrelationModel::CorrelationModel(const KernelField& field)
    : kernel_t_(field.kernel_t()),
      kernel_x_(field.kernel_x()),
      mark_variance_(field.scaled_mark_variance()),
      int_autocorr_t_(integrate_autocorrelation(kernel_t_)),
      int_autocorr_x_(integrate_autocorrelation(kernel_x_)),
      sigma_two_sided_(mark_variance_ * kernel_x_.autocorrelation(0.0) * int_autocorr_t_) {}

double CorrelationModel::phi(double tau, double chi) const {
  return mark_variance_ * kernel_t_.autocorrelation(tau) * kernel_x_.autocorrelation(chi);
}

double CorrelationModel::psi(double r) const {
  return mark_variance_ * kernel_t_.autocorrelation(r) * int_autocorr_x_;
}

double CorrelationModel::r_of_x(double x) const {
  return mark_variance_ * int_autocorr_t_ * kernel_x_.autocorrelation(x);
}

double CorrelationModel::gaussian_average(double tau, double sd) const {
  if (sd <= 0.0) return phi(tau, 0.0);
  if (std::abs(tau) >= t_support()) return 0.0;
  const double z_max = std::min(x_support() / sd, 12.0);
  auto f = [&](double z) { return phi(tau, sd * z) * std::exp(-0.5 * z * z); };
  std::vector<double> breaks;
  if (0.5 * x_support() / sd < z_max) breaks.push_back(0.5 * x_support() / sd);
  // Phi is even in its second argument.
  return 2.0 * quad::integrate_split(f, 0.0, z_max, breaks, 1e-10, 1e-15) / std::sqrt(2.0 * std::numbers::pi);
}

double CorrelationModel::integral_abs() const {
  // Autocorrelations of nonnegative kernels are nonnegative.
  return mark_variance_ * int_autocorr_t_ * int_autocorr_x_;
}

CorrelationModel correlation_model(const KernelField& field) { return CorrelationModel(field); }

std::vector<CorrelationEstimate> empirical_correlation(const KernelField& field,
                                                       std::span<const SpaceTimePoint> lags,
                                                       std::size_t n_samples) {
  if (n_samples < 100) throw std::invalid_argument("empirical_correlation needs n_samples >= 100");
  std::vector<double> sum(lags.size(), 0.0);
  std::vector<double> sum_sq(lags.size(), 0.0);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const KernelField realization = field.with_seed(rng::derive(field.seed(), "empirical", s));
    const double base = realization.value(0.0, 0.0);
    for (std::size_t k = 0; k < lags.size(); ++k) {
      const double prod = base * realization.value(lags[k].t, lags[k].x);
      sum[k] += prod;
      sum_sq[k] += prod * prod;
    }
  }
  const double n = static_cast<double>(n_samples);
  std::vector<CorrelationEstimate> out;
  out.reserve(lags.size());
  for (std::size_t k = 0; k < lags.size(); ++k) {
    const double mean = sum[k] / n;
    const double var = std::max(0.0, (sum_sq[k] - n * mean * mean) / (n - 1.0));
    out.push_back({mean, std::sqrt(var / n)});
  }
  return out;
}

}  // namespace homog
