#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "homog/field.hpp"
#include "homog/fk_solver.hpp"
#include "homog/paths.hpp"
#include "homog/regime.hpp"

namespace homog {

// ---------------------------------------------------------------------------
// Effective constants

enum class SigmaVariant { PrimeOneSided, PrimeTwoSided, HalfOneSided, HalfTwoSided };
enum class SigmaMethod { Quadrature, MonteCarlo };

std::string to_string(SigmaVariant variant);
bool is_two_sided(SigmaVariant variant);

struct EffectiveConstant {
  double value = 0.0;
  double std_error = 0.0;  // zero for quadrature
  SigmaVariant variant = SigmaVariant::PrimeOneSided;
  SigmaMethod method = SigmaMethod::Quadrature;
};

/// Prime variants integrate Phi(u, 0) over u > 0 (one-sided) or over R
/// (two-sided). Half variants replace Phi(u, 0) by E Phi(u, B_u). The MC
/// method samples u uniformly on the support of Phi and B_u exactly.
EffectiveConstant sigma(SigmaVariant variant, const CorrelationModel& corr,
                        SigmaMethod method = SigmaMethod::Quadrature, std::size_t n_mc = 100000,
                        std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Spatial limit field: Gaussian, Brownian in x, stationary in t with
// E[W(t,x) W(t',x')] = Psi(t - t') (|x| ^ |x'|) for x x' > 0 and 0 otherwise.

struct SpatialGrid {
  double dt = 0.01;           // field times t_k = k dt
  std::size_t n_times = 101;  // k = 0..n_times-1
  double dy = 0.05;           // cell j covers [j dy, (j+1) dy)
};

class SpatialLimitField {
 public:
  SpatialLimitField(std::shared_ptr<const std::vector<double>> chol, SpatialGrid grid,
                    std::uint64_t seed);

  const SpatialGrid& grid() const { return grid_; }
  std::uint64_t seed() const { return seed_; }
  bool is_zero() const { return chol_ == nullptr; }

  /// Increment of W(t_k, .) across cell j.
  double increment(std::int64_t cell, std::size_t k) const;
  /// Increments of cell j at t_0..t_{upto}.
  std::vector<double> cell_increments(std::int64_t cell, std::size_t upto) const;
  /// W(t_k, x) with x rounded to the nearest cell boundary; W(t_k, 0) = 0.
  double value(std::size_t k, double x) const;

 private:
  std::shared_ptr<const std::vector<double>> chol_;  // lower factor, row-major n_times^2
  SpatialGrid grid_;
  std::uint64_t seed_;
};

/// Factor of [Psi(t_i - t_k) dy] with jitter 1e-10 * max diagonal.
/// Throws CholeskyFailure if the matrix is not PSD.
std::shared_ptr<const std::vector<double>> spatial_cholesky(const std::function<double(double)>& psi,
                                                            const SpatialGrid& grid);

SpatialLimitField sample_spatial_field(const std::function<double(double)>& psi,
                                       const SpatialGrid& grid, std::uint64_t seed);
/// Reuses a factor from spatial_cholesky (cheap per-seed draws).
SpatialLimitField sample_spatial_field(std::shared_ptr<const std::vector<double>> chol,
                                       const SpatialGrid& grid, std::uint64_t seed);
/// W identically zero.
SpatialLimitField zero_spatial_field(const SpatialGrid& grid);

inline constexpr std::size_t kAllSteps = std::numeric_limits<std::size_t>::max();

/// Lambda_{t,x}(L) = sum_k sum_j [L(t_{k+1}, y_j - x) - L(t_k, y_j - x)] dW_j(t_k)
/// over the first `steps` steps. Throws GridMismatch unless dt and dy agree
/// and x is a multiple of dy.
double lambda_integral(const SpatialLimitField& field, const LocalTimeGrid& lt, double x,
                       std::size_t steps = kAllSteps);

/// Conditional variance of lambda_integral given the local time:
/// sum_j sum_{k,m} dL_k(j) dL_m(j) Psi(t_k - t_m) dy.
double lambda_conditional_variance(const std::function<double(double)>& psi,
                                   const LocalTimeGrid& lt, std::size_t steps = kAllSteps);

/// Same as lambda_integral with dW replaced by the derivative of the
/// mollified field W * rho_n, rho(x) = 35/32 (1 - x^2)^3 on [-1, 1]. Cell
/// averages of rho_n are exact. Throws MollifierTooNarrow if 1/n < 2 dy.
double lambda_mollified(const SpatialLimitField& field, const LocalTimeGrid& lt, double x, double n);

/// Mollifier profile, CDF and second antiderivative (all for width 1).
double mollifier(double x);
double mollifier_derivative(double x);
double mollifier_cdf(double x);
double mollifier_cdf_integral(double x);

/// int int 1{z z' > 0} (|z| ^ |z'|) rho_n'(y - z) rho_m'(y' - z') dz dz' by nested quadrature.
double sigma_nm_lhs(double n, double m, double y, double y_prime);
/// int rho_n(y - z) rho_m(y' - z) dz by quadrature.
double sigma_nm_rhs(double n, double m, double y, double y_prime);

// ---------------------------------------------------------------------------
// Temporal limit field: Brownian in t, spatially correlated,
// E[W(t,x) W(t',x')] = (t ^ t') R(x - x').

struct TemporalGrid {
  double x_min = -6.0;
  double dx = 0.02;
  std::size_t n_x = 601;
  double dt = 1.0 / 128.0;
  std::size_t n_steps = 128;

  double x_at(std::size_t i) const { return x_min + dx * static_cast<double>(i); }
  /// Nearest site; throws GridMismatch outside the grid.
  std::size_t nearest(double x) const;
};

/// Banded lower factor of [R(x_i - x_j)] (jitter 1e-10 * R(0)).
struct SpatialFactor {
  std::size_t n = 0;
  std::size_t bandwidth = 0;         // L(i, j) = 0 for i - j > bandwidth
  std::vector<double> band;          // row i holds L(i, i - bandwidth .. i)
};

SpatialFactor temporal_cholesky(const std::function<double(double)>& r_fn, const TemporalGrid& grid,
                                double support);

class TemporalLimitField {
 public:
  TemporalLimitField(TemporalGrid grid, std::vector<double> values);

  const TemporalGrid& grid() const { return grid_; }
  /// W(t_k, x_i).
  double at(std::size_t k, std::size_t i) const { return values_[k * grid_.n_x + i]; }
  /// W(t_k, nearest site to x).
  double value(std::size_t k, double x) const { return at(k, grid_.nearest(x)); }

 private:
  TemporalGrid grid_;
  std::vector<double> values_;  // (n_steps + 1) x n_x, row 0 is zero
};

/// `support`: R vanishes for |x| >= support (bounds the band of the factor).
TemporalLimitField sample_temporal_field(const std::function<double(double)>& r_fn,
                                         const TemporalGrid& grid, double support,
                                         std::uint64_t seed);
TemporalLimitField sample_temporal_field(const SpatialFactor& factor, const TemporalGrid& grid,
                                         std::uint64_t seed);

/// sum_{k=1}^{[t 2^n]} [W(k 2^-n, f(k 2^-n)) - W((k-1) 2^-n, f(k 2^-n))] with
/// f read by linear interpolation and W at the nearest site. Throws
/// LevelTooFine when 2^-n is finer than the field step, GridMismatch when
/// 2^-n is not a multiple of it.
double riemann_integral(const TemporalLimitField& field, const PathGrid& f, double t, int level);

// ---------------------------------------------------------------------------
// Samples of the limit u(t, x)

/// E g(x + sqrt(t) Z) by Gauss-Kronrod quadrature.
double heat_semigroup(const InitialCondition& g, double x, double t);

struct LimitOptions {
  bool two_sided = false;          // Sigma variant in deterministic regimes
  SpatialGrid spatial{};           // SpatialSPDE
  double temporal_dx = 0.02;       // TemporalSPDE
  int dyadic_level = 7;
  double x_halfwidth = 6.0;        // temporal grid covers x +- halfwidth sqrt(t)
};

/// Deterministic regimes: E g(x + B_t) exp(t Sigma), Sigma from the half
/// (alpha = 2 beta) or prime (2 beta < alpha) family. SPDE regimes: one
/// P-sample, i.e. the path average of g(x + B_t) exp(exponent) on the limit
/// field of seed `seed`. The temporal exponent is riemann_integral.
double limit_u_sample(const ScalingRegime& regime, double x, double t, const InitialCondition& g,
                      std::size_t n_paths, std::uint64_t seed, const CorrelationModel& corr,
                      const LimitOptions& options = {});

/// Several P-samples sharing one Cholesky factor; sample f uses seed derive(seed, "limit", f).
std::vector<double> limit_u_samples(const ScalingRegime& regime, double x, double t,
                                    const InitialCondition& g, std::size_t n_paths,
                                    std::size_t n_samples, std::uint64_t seed,
                                    const CorrelationModel& corr, const LimitOptions& options = {},
                                    unsigned threads = 1);

}  // namespace homog
