#include "homog/fk_solver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "homog/parallel.hpp"
#include "homog/rng.hpp"
#include "spatial_primitives.hpp"

namespace homog {

Resolution default_resolution(const ScalingRegime& regime, double eps, double points) {
  if (!(points >= 10.0)) throw std::invalid_argument("need at least 10 steps per oscillation");
  const double fastest = std::min({std::pow(eps, regime.alpha), std::pow(eps, 2.0 * regime.beta), 1.0});
  return {fastest / points, std::min(std::pow(eps, regime.beta), 1.0) / points};
}

std::size_t steps_for(double t, double dt) {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(t / dt - 1e-9)));
}

void check_resolution(const ScalingRegime& regime, double eps, double dt) {
  const double limit = std::min(std::pow(eps, regime.alpha), std::pow(eps, 2.0 * regime.beta)) / 10.0;
  if (dt > limit * (1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "time step " << dt << " does not resolve eps=" << eps << " (need dt <= " << limit << ")";
    throw UnderresolvedGrid(msg.str());
  }
}

std::size_t steps_until(const PathGrid& path, double t) {
  const double ratio = t / path.dt;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-7 * std::max(1.0, ratio) || n > static_cast<double>(path.n_steps()) || n < 0) {
    std::ostringstream msg;
    msg << "t=" << t << " is not a grid time of the path (dt=" << path.dt
        << ", steps=" << path.n_steps() << ")";
    throw GridMismatch(msg.str());
  }
  return static_cast<std::size_t>(n);
}

void detail::bound_violated(double y, double bound) {
  std::ostringstream msg;
  msg << "exponent " << y << " exceeds the crude bound " << bound;
  throw std::logic_error(msg.str());
}


ExponentSample exponent_ito_trick(const ScalingRegime& regime, double x, double t,
                                  const KernelField& field, const PathGrid& path, double eps,
                                  double dy) {
  if (regime.tag != RegimeTag::SpatialSPDE) {
    throw WrongRegime("the Ito-trick representation needs alpha = 0 (got tag " + to_string(regime.tag) + ")");
  }
  if (!field.is_c2_in_time()) throw std::invalid_argument("the Ito-trick representation needs a C^2 time kernel");
  check_resolution(regime, eps, path.dt);
  const std::size_t n = steps_until(path, t);
  const double scale = std::pow(eps, regime.beta);
  if (dy <= 0.0) dy = default_resolution(regime, eps).dy;
  if (field.marks() == MarkLaw::Zero || field.amplitude() == 0.0) {
    return {0.0, path.seed, field.seed(), path.dt, dy};
  }
  const double prefactor = std::pow(eps, -regime.gamma) * field.amplitude();

  double y_min = x;
  double y_max = x;
  for (std::size_t k = 0; k <= n; ++k) {
    y_min = std::min(y_min, x + path.values[k]);
    y_max = std::max(y_max, x + path.values[k]);
  }
  const auto cell_lo = field.time_cells(0.0).first;
  const auto cell_hi = field.time_cells(t).second;
  const detail::SpatialPrimitives prim(field, scale, dy, y_min, y_max, cell_lo, cell_hi);

  // sum_i k_t^(order)(s - i - U) * G_level(i, y)
  auto combine = [&](double s, double y, int order, int level) {
    const auto [lo, hi] = field.time_cells(s);
    double acc = 0.0;
    for (std::int64_t i = std::max(lo, cell_lo); i <= std::min(hi, cell_hi); ++i) {
      const double kt = field.time_factor(i, s, order);
      if (kt == 0.0) continue;
      const auto [g1, g2] = prim.at(i, y);
      acc += kt * (level == 1 ? g1 : g2);
    }
    return prefactor * acc;
  };

  const double dt = path.dt;
  double ds_term = 0.0;
  double ito_term = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) * dt;
    const double xk = x + path.values[k];
    const double xk1 = x + path.values[k + 1];
    ds_term += combine(s + 0.5 * dt, 0.5 * (xk + xk1), 1, 2);
    ito_term += combine(s, xk, 0, 1) * (xk1 - xk);
  }
  ds_term *= dt;
  const double end_term = combine(static_cast<double>(n) * dt, x + path.values[n], 0, 2);
  const double start_term = combine(0.0, x, 0, 2);
  const double y = 2.0 * (end_term - start_term - ds_term - ito_term);
  return {y, path.seed, field.seed(), dt, dy};
}

InitialCondition initial_condition(const std::string& name) {
  if (name == "one") return {name, [](double) { return 1.0; }, 1.0};
  if (name == "zero") return {name, [](double) { return 0.0; }, 0.0};
  if (name == "gaussian") return {name, [](double x) { return std::exp(-0.5 * x * x); }, std::nullopt};
  throw std::invalid_argument("unknown initial condition '" + name + "' (one, zero, gaussian)");
}

double exponent_second_moment(const ScalingRegime& regime, const CorrelationModel& corr, double t,
                              double eps, std::size_t n_steps) {
  const double dt = t / static_cast<double>(n_steps);
  const double time_scale = std::pow(eps, regime.alpha);
  const double space_scale = std::pow(eps, regime.beta);
  const double n = static_cast<double>(n_steps);
  double sum = n * corr.phi(0.0, 0.0);
  for (std::size_t m = 1; m < n_steps; ++m) {
    const double tau = static_cast<double>(m) * dt / time_scale;
    if (tau >= corr.t_support()) break;
    const double sd = std::sqrt((static_cast<double>(m) - 0.5) * dt) / space_scale;
    sum += 2.0 * (n - static_cast<double>(m)) * corr.gaussian_average(tau, sd);
  }
  return std::pow(eps, -2.0 * regime.gamma) * dt * dt * sum;
}

UEstimate estimate_u(const ScalingRegime& regime, double x, double t, double eps,
                     std::size_t n_paths, std::size_t n_fields, const KernelField& field_spec,
                     const InitialCondition& g, const EstimateOptions& options) {
  require_supported(regime);
  if (n_paths == 0 || n_fields == 0) throw std::invalid_argument("estimate_u needs n_paths, n_fields >= 1");
  const double dt_target = options.dt > 0.0 ? options.dt : default_resolution(regime, eps, options.points).dt;
  const std::size_t n_steps = steps_for(t, dt_target);
  check_resolution(regime, eps, t / static_cast<double>(n_steps));

  UEstimate out;
  out.u_samples.resize(n_fields);
  out.exp4_means.resize(n_fields);
  out.dt = t / static_cast<double>(n_steps);
  out.n_steps = n_steps;
  std::vector<std::size_t> over(n_fields, 0);
  const bool use_cv = g.constant.has_value();
  if (use_cv) {
    out.second_moment = exponent_second_moment(regime, CorrelationModel(field_spec), t, eps, n_steps);
    out.cv_samples.resize(n_fields);
  }

  parallel_for(n_fields, options.threads, [&](std::size_t f) {
    const KernelField base = field_spec.with_seed(rng::derive(options.seed, "field", options.antithetic ? f / 2 : f));
    const KernelField field = options.antithetic && f % 2 == 1 ? base.negated() : base;
    std::vector<double> ys(n_paths);
    std::vector<double> gs(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) {
      const PathGrid path = simulate_path(t, n_steps, rng::derive(options.seed, "path", f, p));
      ys[p] = exponent_direct(regime, x, t, field, path, eps).y_value;
      gs[p] = g(x + path.values.back());
    }
    const double y_max = *std::max_element(ys.begin(), ys.end());
    double sum_u = 0.0;
    double sum_4 = 0.0;
    std::size_t n_over = 0;
    for (std::size_t p = 0; p < n_paths; ++p) {
      if (ys[p] > options.log_cap) ++n_over;
      sum_u += gs[p] * std::exp(ys[p] - y_max);
      sum_4 += std::exp(4.0 * (ys[p] - y_max));
    }
    const double np = static_cast<double>(n_paths);
    out.u_samples[f] = std::exp(y_max) * (sum_u / np);
    out.exp4_means[f] = std::exp(4.0 * y_max) * (sum_4 / np);
    if (use_cv) {
      double residual = 0.0;
      for (const double y : ys) residual += std::expm1(y) - y - 0.5 * y * y;
      out.cv_samples[f] = *g.constant * (1.0 + 0.5 * out.second_moment + residual / np);
    }
    over[f] = n_over;
  });
  for (std::size_t c : over) out.n_over_cap += c;
  return out;
}

double pair_exp_moment(const ScalingRegime& regime, double x, double t, double eps,
                       const KernelField& field, std::size_t n_path_pairs, std::uint64_t seed,
                       double dt) {
  if (!regime.deterministic_limit()) {
    throw WrongRegime("pair_exp_moment is defined for deterministic-limit regimes only");
  }
  if (n_path_pairs == 0) throw std::invalid_argument("pair_exp_moment needs n_path_pairs >= 1");
  const double dt_target = dt > 0.0 ? dt : default_resolution(regime, eps).dt;
  const std::size_t n_steps = steps_for(t, dt_target);
  std::vector<double> terms(n_path_pairs);
  for (std::size_t q = 0; q < n_path_pairs; ++q) {
    const PathGrid a = simulate_path(t, n_steps, rng::derive(seed, "pair-a", q));
    const PathGrid b = simulate_path(t, n_steps, rng::derive(seed, "pair-b", q));
    terms[q] = std::exp(exponent_direct(regime, x, t, field, a, eps).y_value +
                        exponent_direct(regime, x, t, field, b, eps).y_value);
  }
  double sum = 0.0;
  for (double v : terms) sum += v;
  return sum / static_cast<double>(n_path_pairs);
}

}  // namespace homog
