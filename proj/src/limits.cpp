#include "homog/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "homog/error.hpp"
#include "homog/parallel.hpp"
#include "homog/quadrature.hpp"
#include "homog/rng.hpp"
#include "homog/stats.hpp"

namespace homog {

namespace {

constexpr double kJitter = 1e-10;
constexpr double kZCap = 12.0;

double gauss_density(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

// E Phi(u, B_u).
double heat_averaged_phi(const CorrelationModel& corr, double u) {
  return corr.gaussian_average(u, std::sqrt(u));
}

}  // namespace

std::string to_string(SigmaVariant variant) {
  switch (variant) {
    case SigmaVariant::PrimeOneSided: return "SigmaPrime_one_sided";
    case SigmaVariant::PrimeTwoSided: return "SigmaPrime_two_sided";
    case SigmaVariant::HalfOneSided: return "SigmaHalf_one_sided";
    case SigmaVariant::HalfTwoSided: return "SigmaHalf_two_sided";
  }
  return "?";
}

bool is_two_sided(SigmaVariant variant) {
  return variant == SigmaVariant::PrimeTwoSided || variant == SigmaVariant::HalfTwoSided;
}

EffectiveConstant sigma(SigmaVariant variant, const CorrelationModel& corr, SigmaMethod method,
                        std::size_t n_mc, std::uint64_t seed) {
  const bool prime = variant == SigmaVariant::PrimeOneSided || variant == SigmaVariant::PrimeTwoSided;
  const double factor = is_two_sided(variant) ? 2.0 : 1.0;
  const double t_sup = corr.t_support();
  EffectiveConstant out;
  out.variant = variant;
  out.method = method;
  if (corr.variance() == 0.0) return out;

  if (method == SigmaMethod::Quadrature) {
    if (prime) {
      auto integrand = [&](double u) { return corr.phi(u, 0.0); };
      out.value = factor * quad::integrate_split(integrand, 0.0, t_sup, {0.5 * t_sup}, 1e-10, 1e-15);
      return out;
    }
    // u = v^2 removes the sqrt(u) behaviour of E Phi(u, B_u) at the origin.
    auto integrand = [&](double v) { return 2.0 * v * heat_averaged_phi(corr, v * v); };
    const double v_sup = std::sqrt(t_sup);
    out.value = factor * quad::integrate_split(integrand, 0.0, v_sup, {v_sup / std::sqrt(2.0)}, 1e-8, 1e-15);
    return out;
  }

  if (n_mc < 2) throw std::invalid_argument("sigma: MC needs at least 2 samples");
  const std::uint64_t u_stream = rng::derive(seed, "sigma-mc-u");
  const std::uint64_t z_stream = rng::derive(seed, "sigma-mc-z");
  std::vector<double> samples(n_mc);
  for (std::size_t i = 0; i < n_mc; ++i) {
    const double u = t_sup * rng::uniform_at(u_stream, i);
    const double y = prime ? 0.0 : std::sqrt(u) * rng::normal_at(z_stream, i);
    samples[i] = factor * t_sup * corr.phi(u, y);
  }
  out.value = stats::mean(samples);
  out.std_error = std::sqrt(stats::variance(samples) / static_cast<double>(n_mc));
  return out;
}

// ---------------------------------------------------------------------------
// Spatial limit field

SpatialLimitField::SpatialLimitField(std::shared_ptr<const std::vector<double>> chol,
                                     SpatialGrid grid, std::uint64_t seed)
    : chol_(std::move(chol)), grid_(grid), seed_(seed) {}

double SpatialLimitField::increment(std::int64_t cell, std::size_t k) const {
  if (!chol_) return 0.0;
  if (k >= grid_.n_times) throw GridMismatch("spatial field: time index beyond the grid");
  const double* row = chol_->data() + k * grid_.n_times;
  const auto c = static_cast<std::uint64_t>(cell);
  double sum = 0.0;
  for (std::size_t m = 0; m <= k; ++m) sum += row[m] * rng::normal_at(seed_, c, m);
  return sum;
}

std::vector<double> SpatialLimitField::cell_increments(std::int64_t cell, std::size_t upto) const {
  std::vector<double> out(upto + 1, 0.0);
  if (!chol_) return out;
  if (upto >= grid_.n_times) throw GridMismatch("spatial field: time index beyond the grid");
  const auto c = static_cast<std::uint64_t>(cell);
  std::vector<double> z(upto + 1);
  for (std::size_t m = 0; m <= upto; ++m) z[m] = rng::normal_at(seed_, c, m);
  for (std::size_t k = 0; k <= upto; ++k) {
    const double* row = chol_->data() + k * grid_.n_times;
    double sum = 0.0;
    for (std::size_t m = 0; m <= k; ++m) sum += row[m] * z[m];
    out[k] = sum;
  }
  return out;
}

double SpatialLimitField::value(std::size_t k, double x) const {
  const auto n = static_cast<std::int64_t>(std::llround(x / grid_.dy));
  double sum = 0.0;
  if (n > 0) {
    for (std::int64_t j = 0; j < n; ++j) sum += increment(j, k);
  } else {
    for (std::int64_t j = n; j < 0; ++j) sum -= increment(j, k);
  }
  return sum;
}

std::shared_ptr<const std::vector<double>> spatial_cholesky(const std::function<double(double)>& psi,
                                                            const SpatialGrid& grid) {
  const std::size_t n = grid.n_times;
  if (n == 0) throw std::invalid_argument("spatial grid needs at least one time");
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      cov(i, k) = psi(grid.dt * (static_cast<double>(i) - static_cast<double>(k))) * grid.dy;
    }
  }
  const double diag = cov.diagonal().maxCoeff();
  if (diag == 0.0) return nullptr;
  if (!(diag > 0.0) || !cov.allFinite()) throw CholeskyFailure("temporal covariance has a non-positive diagonal");
  cov.diagonal().array() += kJitter * diag;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw CholeskyFailure("temporal covariance matrix is not positive semidefinite after jitter");
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  auto out = std::make_shared<std::vector<double>>(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= i; ++k) (*out)[i * n + k] = lower(i, k);
  }
  return out;
}

SpatialLimitField sample_spatial_field(const std::function<double(double)>& psi,
                                       const SpatialGrid& grid, std::uint64_t seed) {
  return SpatialLimitField(spatial_cholesky(psi, grid), grid, seed);
}

SpatialLimitField sample_spatial_field(std::shared_ptr<const std::vector<double>> chol,
                                       const SpatialGrid& grid, std::uint64_t seed) {
  return SpatialLimitField(std::move(chol), grid, seed);
}

SpatialLimitField zero_spatial_field(const SpatialGrid& grid) { return SpatialLimitField(nullptr, grid, 0); }

namespace {

struct WeightedIncrement {
  std::int64_t cell;
  std::size_t step;
  double weight;
};

// sum of weight * dW_cell(t_step), generating each cell's normals once.
double weighted_increment_sum(const SpatialLimitField& field, std::vector<WeightedIncrement> terms) {
  if (field.is_zero() || terms.empty()) return 0.0;
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return a.cell != b.cell ? a.cell < b.cell : a.step < b.step;
  });
  double total = 0.0;
  std::size_t begin = 0;
  while (begin < terms.size()) {
    std::size_t end = begin;
    while (end < terms.size() && terms[end].cell == terms[begin].cell) ++end;
    const auto incs = field.cell_increments(terms[begin].cell, terms[end - 1].step);
    for (std::size_t e = begin; e < end; ++e) total += terms[e].weight * incs[terms[e].step];
    begin = end;
  }
  return total;
}

std::int64_t checked_shift(const SpatialGrid& grid, const LocalTimeGrid& lt, double x,
                           std::size_t steps) {
  if (!close(grid.dt, lt.dt()) || !close(grid.dy, lt.dy())) {
    std::ostringstream msg;
    msg << "field grid (dt=" << grid.dt << ", dy=" << grid.dy << ") does not match local time (dt="
        << lt.dt() << ", dy=" << lt.dy() << ")";
    throw GridMismatch(msg.str());
  }
  const double ratio = x / grid.dy;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
    throw GridMismatch("x must be a multiple of the cell width");
  }
  const std::size_t used = std::min(steps, lt.n_steps());
  if (used > grid.n_times) throw GridMismatch("local time has more steps than the field has times");
  return static_cast<std::int64_t>(rounded);
}

}  // namespace

double lambda_integral(const SpatialLimitField& field, const LocalTimeGrid& lt, double x,
                       std::size_t steps) {
  const std::int64_t shift = checked_shift(field.grid(), lt, x, steps);
  std::vector<WeightedIncrement> terms;
  terms.reserve(lt.entries().size());
  for (const auto& e : lt.entries()) {
    if (e.step < steps) terms.push_back({e.bin + shift, e.step, e.density});
  }
  return weighted_increment_sum(field, std::move(terms));
}

double lambda_conditional_variance(const std::function<double(double)>& psi,
                                   const LocalTimeGrid& lt, std::size_t steps) {
  std::vector<LocalTimeGrid::Entry> entries;
  for (const auto& e : lt.entries()) {
    if (e.step < steps) entries.push_back(e);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.bin != b.bin ? a.bin < b.bin : a.step < b.step;
  });
  std::vector<double> psi_table(lt.n_steps() + 1);
  for (std::size_t d = 0; d < psi_table.size(); ++d) psi_table[d] = psi(lt.dt() * static_cast<double>(d));
  double total = 0.0;
  std::size_t begin = 0;
  while (begin < entries.size()) {
    std::size_t end = begin;
    while (end < entries.size() && entries[end].bin == entries[begin].bin) ++end;
    for (std::size_t a = begin; a < end; ++a) {
      for (std::size_t b = begin; b < end; ++b) {
        const std::size_t lag = entries[a].step > entries[b].step ? entries[a].step - entries[b].step
                                                                   : entries[b].step - entries[a].step;
        total += entries[a].density * entries[b].density * psi_table[lag];
      }
    }
    begin = end;
  }
  return total * lt.dy();
}

double mollifier(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double q = 1.0 - x * x;
  return 35.0 / 32.0 * q * q * q;
}

double mollifier_derivative(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double q = 1.0 - x * x;
  return -105.0 / 16.0 * x * q * q;
}

double mollifier_cdf(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double x2 = x * x;
  return 0.5 + 35.0 / 32.0 * x * (1.0 - x2 + 0.6 * x2 * x2 - x2 * x2 * x2 / 7.0);
}

double mollifier_cdf_integral(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return x;
  const double x2 = x * x;
  return 0.5 * x + 35.0 / 32.0 * x2 * (0.5 - x2 / 4.0 + x2 * x2 / 10.0 - x2 * x2 * x2 / 56.0) +
         35.0 / 256.0;
}

double lambda_mollified(const SpatialLimitField& field, const LocalTimeGrid& lt, double x, double n) {
  const double dy = field.grid().dy;
  if (!(n > 0.0) || 1.0 / n < 2.0 * dy * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "mollifier width 1/n=" << 1.0 / n << " is below twice the cell width " << dy;
    throw MollifierTooNarrow(msg.str());
  }
  const std::int64_t shift = checked_shift(field.grid(), lt, x, kAllSteps);
  // Double cell average of rho_n at offset d cells.
  const auto reach = static_cast<std::int64_t>(std::ceil(1.0 / (n * dy))) + 1;
  std::vector<double> weights(static_cast<std::size_t>(2 * reach + 1));
  for (std::int64_t d = -reach; d <= reach; ++d) {
    const double a = static_cast<double>(d) * dy;
    weights[static_cast<std::size_t>(d + reach)] =
        (mollifier_cdf_integral(n * (a + dy)) - 2.0 * mollifier_cdf_integral(n * a) +
         mollifier_cdf_integral(n * (a - dy))) / (n * dy);
  }
  std::vector<WeightedIncrement> terms;
  terms.reserve(lt.entries().size() * weights.size());
  for (const auto& e : lt.entries()) {
    const std::int64_t cell = e.bin + shift;
    for (std::int64_t d = -reach; d <= reach; ++d) {
      const double w = weights[static_cast<std::size_t>(d + reach)];
      if (w != 0.0) terms.push_back({cell - d, e.step, e.density * w});
    }
  }
  return weighted_increment_sum(field, std::move(terms));
}

double sigma_nm_lhs(double n, double m, double y, double y_prime) {
  auto rho_n_prime = [n](double s) { return n * n * mollifier_derivative(n * s); };
  auto rho_m_prime = [m](double s) { return m * m * mollifier_derivative(m * s); };
  const double z_lo = y - 1.0 / n;
  const double z_hi = y + 1.0 / n;
  const double w_lo = y_prime - 1.0 / m;
  const double w_hi = y_prime + 1.0 / m;
  auto outer = [&](double z) {
    if (z == 0.0) return 0.0;
    auto inner = [&](double w) {
      if (z * w <= 0.0) return 0.0;
      return std::min(std::abs(z), std::abs(w)) * rho_m_prime(y_prime - w);
    };
    const double in = quad::integrate_split(inner, w_lo, w_hi, {0.0, z, -z}, 1e-11, 1e-10);
    return rho_n_prime(y - z) * in;
  };
  return quad::integrate_split(outer, z_lo, z_hi, {0.0, y_prime, -y_prime}, 1e-9, 1e-9);
}

double sigma_nm_rhs(double n, double m, double y, double y_prime) {
  auto f = [&](double z) { return n * mollifier(n * (y - z)) * m * mollifier(m * (y_prime - z)); };
  const double lo = std::max(y - 1.0 / n, y_prime - 1.0 / m);
  const double hi = std::min(y + 1.0 / n, y_prime + 1.0 / m);
  if (!(hi > lo)) return 0.0;
  return quad::integrate(f, lo, hi, 1e-12, 1e-16);
}

// ---------------------------------------------------------------------------
// Temporal limit field

std::size_t TemporalGrid::nearest(double x) const {
  const double pos = std::round((x - x_min) / dx);
  if (!(pos >= 0.0) || pos > static_cast<double>(n_x - 1)) {
    std::ostringstream msg;
    msg << "x=" << x << " lies outside the temporal field grid [" << x_min << ", "
        << x_at(n_x - 1) << "]";
    throw GridMismatch(msg.str());
  }
  return static_cast<std::size_t>(pos);
}

SpatialFactor temporal_cholesky(const std::function<double(double)>& r_fn, const TemporalGrid& grid,
                                double support) {
  const std::size_t n = grid.n_x;
  SpatialFactor factor;
  factor.n = n;
  factor.bandwidth = std::min<std::size_t>(n - 1, static_cast<std::size_t>(std::ceil(support / grid.dx)));
  const std::size_t bw = factor.bandwidth;
  factor.band.assign(n * (bw + 1), 0.0);
  const double r0 = r_fn(0.0);
  if (r0 == 0.0) return factor;
  if (!(r0 > 0.0)) throw CholeskyFailure("R(0) must be positive");

  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cov(i, j) = r_fn(grid.dx * (static_cast<double>(i) - static_cast<double>(j)));
    }
  }
  cov.diagonal().array() += kJitter * r0;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw CholeskyFailure("spatial covariance matrix is not positive semidefinite after jitter");
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = (i > bw ? i - bw : 0); j <= i; ++j) {
      factor.band[i * (bw + 1) + (j + bw - i)] = lower(i, j);
    }
  }
  return factor;
}

TemporalLimitField::TemporalLimitField(TemporalGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {}

TemporalLimitField sample_temporal_field(const SpatialFactor& factor, const TemporalGrid& grid,
                                         std::uint64_t seed) {
  const std::size_t n = grid.n_x;
  if (factor.n != n) throw GridMismatch("factor size does not match the temporal grid");
  const std::size_t bw = factor.bandwidth;
  const double root_dt = std::sqrt(grid.dt);
  std::vector<double> values((grid.n_steps + 1) * n, 0.0);
  std::vector<double> z(n);
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    for (std::size_t i = 0; i < n; ++i) z[i] = rng::normal_at(seed, k, i);
    const double* prev = values.data() + k * n;
    double* next = values.data() + (k + 1) * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = factor.band.data() + i * (bw + 1);
      const std::size_t j0 = i > bw ? i - bw : 0;
      double acc = 0.0;
      for (std::size_t j = j0; j <= i; ++j) acc += row[j + bw - i] * z[j];
      next[i] = prev[i] + root_dt * acc;
    }
  }
  return TemporalLimitField(grid, std::move(values));
}

TemporalLimitField sample_temporal_field(const std::function<double(double)>& r_fn,
                                         const TemporalGrid& grid, double support,
                                         std::uint64_t seed) {
  return sample_temporal_field(temporal_cholesky(r_fn, grid, support), grid, seed);
}

double riemann_integral(const TemporalLimitField& field, const PathGrid& f, double t, int level) {
  const auto& grid = field.grid();
  const double h = std::ldexp(1.0, -level);
  if (h < grid.dt * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "dyadic step 2^-" << level << " is finer than the field step " << grid.dt;
    throw LevelTooFine(msg.str());
  }
  const double ratio = h / grid.dt;
  const double stride = std::round(ratio);
  if (std::abs(ratio - stride) > 1e-9 * ratio) throw GridMismatch("dyadic step is not a multiple of the field step");
  const auto s = static_cast<std::size_t>(stride);
  const auto n_terms = static_cast<std::size_t>(std::floor(t / h + 1e-9));
  if (n_terms * s > grid.n_steps) throw GridMismatch("field time grid is shorter than t");
  double sum = 0.0;
  for (std::size_t k = 1; k <= n_terms; ++k) {
    const std::size_t site = grid.nearest(f.at(static_cast<double>(k) * h));
    sum += field.at(k * s, site) - field.at((k - 1) * s, site);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Limit samples

double heat_semigroup(const InitialCondition& g, double x, double t) {
  const double root = std::sqrt(t);
  auto f = [&](double z) { return g(x + root * z) * gauss_density(z); };
  return quad::integrate_split(f, -kZCap, kZCap, {0.0}, 1e-10, 1e-15);
}

namespace {

double deterministic_limit(const ScalingRegime& regime, double x, double t, const InitialCondition& g,
                           const CorrelationModel& corr, const LimitOptions& options) {
  SigmaVariant variant;
  if (regime.tag == RegimeTag::Deterministic2b) {
    variant = options.two_sided ? SigmaVariant::HalfTwoSided : SigmaVariant::HalfOneSided;
  } else {
    variant = options.two_sided ? SigmaVariant::PrimeTwoSided : SigmaVariant::PrimeOneSided;
  }
  return heat_semigroup(g, x, t) * std::exp(t * sigma(variant, corr).value);
}

std::size_t exact_steps(double t, double dt, const char* what) {
  const double ratio = t / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * ratio) {
    throw GridMismatch(std::string(what) + ": t must be a multiple of the time step");
  }
  return static_cast<std::size_t>(n);
}

TemporalGrid temporal_grid_for(double x, double t, const LimitOptions& options) {
  TemporalGrid grid;
  grid.dx = options.temporal_dx;
  const double half = options.x_halfwidth * std::sqrt(t);
  grid.x_min = x - half;
  grid.n_x = static_cast<std::size_t>(std::ceil(2.0 * half / grid.dx)) + 1;
  grid.dt = std::ldexp(1.0, -options.dyadic_level);
  grid.n_steps = exact_steps(t, grid.dt, "temporal limit");
  return grid;
}

double spatial_sample(const SpatialLimitField& field, double x, double t, const InitialCondition& g,
                      std::size_t n_paths, std::uint64_t seed) {
  const auto& grid = field.grid();
  const std::size_t steps = grid.n_times - 1;
  std::vector<double> terms(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) {
    const PathGrid path = simulate_path(t, steps, rng::derive(seed, "limit-path", p));
    const double lambda = lambda_integral(field, local_time(path, grid.dy), x);
    terms[p] = g(x + path.values.back()) * std::exp(lambda);
  }
  return stats::mean(terms);
}

double temporal_sample(const TemporalLimitField& field, double x, double t, const InitialCondition& g,
                       std::size_t n_paths, std::uint64_t seed, int level) {
  const std::size_t steps = field.grid().n_steps;
  std::vector<double> terms(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) {
    const PathGrid path = shift_path(simulate_path(t, steps, rng::derive(seed, "limit-path", p)), x);
    terms[p] = g(path.values.back()) * std::exp(riemann_integral(field, path, t, level));
  }
  return stats::mean(terms);
}

}  // namespace

std::vector<double> limit_u_samples(const ScalingRegime& regime, double x, double t,
                                    const InitialCondition& g, std::size_t n_paths,
                                    std::size_t n_samples, std::uint64_t seed,
                                    const CorrelationModel& corr, const LimitOptions& options,
                                    unsigned threads) {
  require_supported(regime);
  if (n_paths == 0) throw std::invalid_argument("limit_u_sample needs n_paths >= 1");
  std::vector<double> out(n_samples);
  if (regime.deterministic_limit()) {
    std::fill(out.begin(), out.end(), deterministic_limit(regime, x, t, g, corr, options));
    return out;
  }
  if (regime.tag == RegimeTag::SpatialSPDE) {
    SpatialGrid grid = options.spatial;
    grid.n_times = exact_steps(t, grid.dt, "spatial limit") + 1;
    const auto chol = spatial_cholesky([&](double r) { return corr.psi(r); }, grid);
    parallel_for(n_samples, threads, [&](std::size_t f) {
      const std::uint64_t s = rng::derive(seed, "limit", f);
      out[f] = spatial_sample(sample_spatial_field(chol, grid, s), x, t, g, n_paths, s);
    });
    return out;
  }
  const TemporalGrid grid = temporal_grid_for(x, t, options);
  const SpatialFactor factor = temporal_cholesky([&](double y) { return corr.r_of_x(y); }, grid, corr.x_support());
  parallel_for(n_samples, threads, [&](std::size_t f) {
    const std::uint64_t s = rng::derive(seed, "limit", f);
    out[f] = temporal_sample(sample_temporal_field(factor, grid, s), x, t, g, n_paths, s,
                             options.dyadic_level);
  });
  return out;
}

double limit_u_sample(const ScalingRegime& regime, double x, double t, const InitialCondition& g,
                      std::size_t n_paths, std::uint64_t seed, const CorrelationModel& corr,
                      const LimitOptions& options) {
  require_supported(regime);
  if (n_paths == 0) throw std::invalid_argument("limit_u_sample needs n_paths >= 1");
  if (regime.deterministic_limit()) return deterministic_limit(regime, x, t, g, corr, options);
  if (regime.tag == RegimeTag::SpatialSPDE) {
    SpatialGrid grid = options.spatial;
    grid.n_times = exact_steps(t, grid.dt, "spatial limit") + 1;
    return spatial_sample(sample_spatial_field([&](double r) { return corr.psi(r); }, grid, seed), x, t, g,
                          n_paths, seed);
  }
  const TemporalGrid grid = temporal_grid_for(x, t, options);
  return temporal_sample(sample_temporal_field([&](double y) { return corr.r_of_x(y); }, grid,
                                               corr.x_support(), seed),
                         x, t, g, n_paths, seed, options.dyadic_level);
}

}  // namespace homog
