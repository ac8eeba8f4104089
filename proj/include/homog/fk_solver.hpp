#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homog/error.hpp"
#include "homog/field.hpp"
#include "homog/paths.hpp"
#include "homog/regime.hpp"

namespace homog {

/// Anything that can be evaluated pointwise and bounded.
template <class F>
concept PotentialField = requires(const F& f, double t, double x) {
  { f.value(t, x) } -> std::convertible_to<double>;
  { f.sup_bound() } -> std::convertible_to<double>;
};

struct ExponentSample {
  double y_value = 0.0;
  std::uint64_t path_seed = 0;
  std::uint64_t field_seed = 0;
  double dt = 0.0;
  double dy = 0.0;  // spatial quadrature step (Ito-trick route only)
};

struct Resolution {
  double dt;
  double dy;
};

/// dt = min(eps^alpha, eps^(2 beta), 1) / points, dy = min(eps^beta, 1) / points.
Resolution default_resolution(const ScalingRegime& regime, double eps, double points = 20.0);

/// Smallest n with t / n <= dt.
std::size_t steps_for(double t, double dt);

/// Throws UnderresolvedGrid unless dt <= min(eps^alpha, eps^(2 beta)) / 10.
void check_resolution(const ScalingRegime& regime, double eps, double dt);

/// Number of path steps covering [0, t]; throws GridMismatch if t is not on the grid.
std::size_t steps_until(const PathGrid& path, double t);

namespace detail {
template <class F>
std::uint64_t seed_of(const F& f) {
  if constexpr (requires { f.seed(); }) {
    return static_cast<std::uint64_t>(f.seed());
  } else {
    return 0;
  }
}
[[noreturn]] void bound_violated(double y, double bound);
}  // namespace detail

/// Y = eps^-gamma int_0^t c(s / eps^alpha, (x + B_s) / eps^beta) ds by the
/// midpoint rule on the path grid (B at the midpoint is the chord average).
template <PotentialField F>
ExponentSample exponent_direct(const ScalingRegime& regime, double x, double t, const F& field,
                               const PathGrid& path, double eps) {
  require_supported(regime);
  check_resolution(regime, eps, path.dt);
  const std::size_t n = steps_until(path, t);
  const double time_scale = std::pow(eps, regime.alpha);
  const double space_scale = std::pow(eps, regime.beta);
  const double prefactor = std::pow(eps, -regime.gamma);
  const double dt = path.dt;

  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s_mid = (static_cast<double>(k) + 0.5) * dt;
    const double b_mid = 0.5 * (path.values[k] + path.values[k + 1]);
    sum += static_cast<double>(field.value(s_mid / time_scale, (x + b_mid) / space_scale));
  }
  const double y = prefactor * dt * sum;
  const double bound = prefactor * t * static_cast<double>(field.sup_bound());
  if (std::abs(y) > bound * (1.0 + 1e-12) + 1e-300) detail::bound_violated(y, bound);
  return {y, path.seed, detail::seed_of(field), dt, 0.0};
}

/// Alternate route for alpha = 0. With W(s, y) = eps^-gamma int_0^y c(s, z / eps^beta) dz
/// and its antiderivative WW(s, y) = int_0^y W(s, z) dz,
///
///   Y = 2 [WW(t, X_t) - WW(0, x) - int dWW/ds(s, X_s) ds - int W(s, X_s) dX_s].
///
/// The spatial integrals use the trapezoid rule with step dy (default
/// eps^beta / 20); the ds-integral is a midpoint sum and the dX-integral a
/// left-point (Ito) sum. Needs a C^2 time kernel.
ExponentSample exponent_ito_trick(const ScalingRegime& regime, double x, double t,
                                  const KernelField& field, const PathGrid& path, double eps,
                                  double dy = 0.0);

/// Initial condition g of the Cauchy problem.
struct InitialCondition {
  std::string name;
  std::function<double(double)> fn;
  std::optional<double> constant;  // set when g does not depend on x

  double operator()(double x) const { return fn(x); }
};

/// "one" (g = 1), "zero" (g = 0) or "gaussian" (g = exp(-x^2/2)).
InitialCondition initial_condition(const std::string& name);

struct EstimateOptions {
  std::uint64_t seed = 0;
  double dt = 0.0;        // 0 selects default_resolution
  double points = 20.0;   // steps per fastest oscillation when dt == 0
  unsigned threads = 1;
  double log_cap = 600.0; // exponents above this are counted as overflow
  /// Realizations 2k and 2k+1 share seed k with opposite marks. Each sample is
  /// still drawn from the law of u^eps, but pairs are dependent.
  bool antithetic = false;
};

struct UEstimate {
  /// One entry per medium realization: path average of g(x + B_t) exp(Y).
  std::vector<double> u_samples;
  /// Per realization: path average of exp(4 Y).
  std::vector<double> exp4_means;
  /// Constant g = c only: per realization c (1 + m2/2) + path average of
  /// c (exp(Y) - 1 - Y - Y^2/2), where m2 = E Y^2 is known exactly. Same
  /// expectation as u_samples, much smaller spread.
  std::vector<double> cv_samples;
  double second_moment = 0.0;
  /// Number of (field, path) exponents that exceeded the log cap.
  std::size_t n_over_cap = 0;
  double dt = 0.0;
  std::size_t n_steps = 0;
};

/// Nested Monte Carlo for u^eps(t, x). Realization f uses the field seed
/// derive(seed, "field", f) (f / 2 when antithetic); its p-th path uses
/// derive(seed, "path", f, p).
/// Output is independent of the thread count.
UEstimate estimate_u(const ScalingRegime& regime, double x, double t, double eps,
                     std::size_t n_paths, std::size_t n_fields, const KernelField& field_spec,
                     const InitialCondition& g, const EstimateOptions& options = {});

/// Exact E[Y^2] over field and path for the midpoint rule with n_steps
/// steps on [0, t]: chord midpoints m steps apart differ by N(0, (m - 1/2) dt).
double exponent_second_moment(const ScalingRegime& regime, const CorrelationModel& corr, double t,
                              double eps, std::size_t n_steps);

/// Average of exp(Y(w) + Y(w')) over independent path pairs on one realization.
double pair_exp_moment(const ScalingRegime& regime, double x, double t, double eps,
                       const KernelField& field, std::size_t n_path_pairs, std::uint64_t seed,
                       double dt = 0.0);

}  // namespace homog
