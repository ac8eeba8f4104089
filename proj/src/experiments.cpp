#include "homog/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "homog/error.hpp"
#include "homog/parallel.hpp"
#include "homog/rng.hpp"
#include "homog/stats.hpp"
#include "spatial_primitives.hpp"

namespace homog {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

KernelField FieldSpec::make(std::uint64_t seed) const {
  return KernelField(Kernel1D::from_name(kernel_t, width_t, theta),
                     Kernel1D::from_name(kernel_x, width_x, theta), mark_law_from_name(marks), seed,
                     amplitude);
}

void SweepConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (eps_list.empty()) fail("eps_list must not be empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0) || eps_list[i] > 1.0) fail("eps values must lie in (0, 1]");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) fail("eps_list must be strictly decreasing");
  }
  if (!(t > 0.0)) fail("t must be positive");
  if (n_paths < 1 || n_fields < 1) fail("n_paths and n_fields must be >= 1");
  if (dt < 0.0) fail("dt must be nonnegative");
  if (!(points >= 10.0)) fail("points must be >= 10");
  if (!(alpha >= 0.0) || !(beta >= 0.0)) fail("alpha and beta must be nonnegative");
  try {
    (void)initial_condition(g);
    (void)field.make(0);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.rows) {
    out << format_number(r.eps) << ',' << format_number(r.mean_u) << ',' << format_number(r.var_u)
        << ',' << format_number(r.ci_halfwidth) << ',' << format_number(r.ks_distance) << ','
        << format_number(r.ks_pvalue) << ',' << format_number(r.exp_moment_diag) << ','
        << format_number(r.runtime_s) << '\n';
  }
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size());
  std::vector<double> ly(y.size());
  std::transform(x.begin(), x.end(), lx.begin(), [](double v) { return std::log(v); });
  std::transform(y.begin(), y.end(), ly.begin(), [](double v) { return std::log(v); });
  return stats::linear_fit(lx, ly).slope;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  SweepResult result;
  result.config = config;
  result.regime = classify(config.alpha, config.beta);
  require_supported(result.regime);
  const auto& regime = result.regime;

  const KernelField field = config.field.make(0);
  const CorrelationModel corr(field);
  const InitialCondition g = initial_condition(config.g);

  if (regime.deterministic_limit()) {
    const bool critical = regime.tag == RegimeTag::Deterministic2b;
    result.sigma_one_sided =
        sigma(critical ? SigmaVariant::HalfOneSided : SigmaVariant::PrimeOneSided, corr).value;
    result.sigma_two_sided =
        sigma(critical ? SigmaVariant::HalfTwoSided : SigmaVariant::PrimeTwoSided, corr).value;
    const double heat = heat_semigroup(g, config.x, config.t);
    result.target_one_sided = heat * std::exp(config.t * result.sigma_one_sided);
    result.target_two_sided = heat * std::exp(config.t * result.sigma_two_sided);
  } else {
    const std::size_t n_limit = config.n_limit ? config.n_limit : config.n_fields;
    const std::size_t limit_paths = config.limit_paths ? config.limit_paths : config.n_paths;
    result.limit_samples = limit_u_samples(regime, config.x, config.t, g, limit_paths, n_limit,
                                           rng::derive(config.seed, "limit"), corr, config.limit,
                                           config.threads);
  }

  EstimateOptions options;
  options.seed = config.seed;
  options.dt = config.dt;
  options.points = config.points;
  options.threads = config.threads;
  options.log_cap = config.log_cap;
  options.antithetic = config.antithetic && regime.deterministic_limit() && config.n_fields % 2 == 0;

  for (const double eps : config.eps_list) {
    const auto start = std::chrono::steady_clock::now();
    UEstimate est = estimate_u(regime, config.x, config.t, eps, config.n_paths, config.n_fields,
                               field, g, options);
    SweepRow row;
    row.eps = eps;
    row.mean_u_plain = stats::mean(est.u_samples);
    row.var_u = stats::variance(est.u_samples);
    const std::vector<double>& centre = est.cv_samples.empty() ? est.u_samples : est.cv_samples;
    row.mean_u = stats::mean(centre);
    std::vector<double> units;  // independent units for the confidence interval
    if (options.antithetic) {
      units.resize(config.n_fields / 2);
      for (std::size_t k = 0; k < units.size(); ++k) units[k] = 0.5 * (centre[2 * k] + centre[2 * k + 1]);
    } else {
      units = centre;
    }
    row.ci_halfwidth = units.size() > 1
                           ? 1.96 * std::sqrt(stats::variance(units) / static_cast<double>(units.size()))
                           : kNaN;
    row.exp_moment_diag = stats::mean(est.exp4_means);
    row.n_over_cap = est.n_over_cap;
    if (regime.deterministic_limit()) {
      row.ks_distance = kNaN;
      row.ks_pvalue = kNaN;
      const double d1 = row.mean_u - result.target_one_sided;
      const double d2 = row.mean_u - result.target_two_sided;
      row.mse_one_sided = row.var_u + d1 * d1;
      row.mse_two_sided = row.var_u + d2 * d2;
    } else {
      const auto ks = stats::ks_two_sample(est.u_samples, result.limit_samples);
      row.ks_distance = ks.distance;
      row.ks_pvalue = ks.p_value;
      row.mse_one_sided = kNaN;
      row.mse_two_sided = kNaN;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    row.runtime_s = config.timing ? elapsed.count() : kNaN;
    result.rows.push_back(row);
    result.u_samples.push_back(std::move(est.u_samples));
  }
  return result;
}

GaussianCheckReport gaussian_limit_check(const GaussianCheckConfig& config) {
  const ScalingRegime regime = classify(config.alpha, config.beta);
  if (regime.tag != RegimeTag::DeterministicStrict) {
    throw WrongRegime("gaussian_limit_check needs 0 < 2 beta < alpha (got " + to_string(regime.tag) + ")");
  }
  const KernelField spec = config.field.make(0);
  const CorrelationModel corr(spec);
  const double dt = default_resolution(regime, config.eps).dt;
  const PathGrid path = simulate_path(config.t, steps_for(config.t, dt), config.path_seed);

  GaussianCheckReport report;
  report.samples.resize(config.n_fields);
  parallel_for(config.n_fields, config.threads, [&](std::size_t f) {
    const KernelField field = spec.with_seed(rng::derive(config.seed, "gaussian-field", f));
    report.samples[f] = exponent_direct(regime, config.x, config.t, field, path, config.eps).y_value;
  });
  report.sample_variance = stats::variance(report.samples);
  report.sigma_one_sided = sigma(SigmaVariant::PrimeOneSided, corr).value;
  report.sigma_two_sided = sigma(SigmaVariant::PrimeTwoSided, corr).value;

  const auto [lo, hi] = std::minmax_element(report.samples.begin(), report.samples.end());
  report.degenerate = *lo == *hi || report.sigma_two_sided == 0.0;
  if (report.degenerate) {
    report.ks_one_sided = {kNaN, kNaN};
    report.ks_two_sided = {kNaN, kNaN};
    report.best_relative_gap = kNaN;
    return report;
  }
  auto ks_for = [&](double s) {
    const double sd = std::sqrt(config.t * s);
    return stats::ks_one_sample(report.samples, [sd](double y) { return stats::normal_cdf(y / sd); });
  };
  report.ks_one_sided = ks_for(report.sigma_one_sided);
  report.ks_two_sided = ks_for(report.sigma_two_sided);
  report.two_sided_best = report.ks_two_sided.distance < report.ks_one_sided.distance;
  const double best = report.two_sided_best ? report.sigma_two_sided : report.sigma_one_sided;
  report.best_relative_gap = std::abs(report.sample_variance / (config.t * best) - 1.0);
  return report;
}

namespace {

struct TightnessSample {
  double zeta = 0.0;
  double xi = 0.0;
  double eta = 0.0;
};

TightnessSample tightness_sample(const KernelField& field, double eps, const TightnessConfig& cfg) {
  TightnessSample out;
  if (field.marks() == MarkLaw::Zero || field.amplitude() == 0.0) return out;
  const double dy = eps / 20.0;
  const auto cell_lo = field.time_cells(0.0).first;
  const auto cell_hi = field.time_cells(cfg.t).second;
  const detail::SpatialPrimitives prim(field, eps, dy, -cfg.window, cfg.window, cell_lo, cell_hi);
  const double prefactor = field.amplitude() / std::sqrt(eps);
  const bool smooth = field.is_c2_in_time();

  std::vector<double> weight(prim.n_nodes());
  std::vector<bool> inside(prim.n_nodes());
  for (std::size_t m = 0; m < prim.n_nodes(); ++m) {
    const double y = static_cast<double>(prim.node_lo() + static_cast<std::int64_t>(m)) * dy;
    inside[m] = std::abs(y) <= cfg.window * (1.0 + 1e-12);
    weight[m] = std::pow(1.0 + std::abs(y), cfg.gamma_tilde - 1.0);
  }
  const std::size_t n_times = std::max<std::size_t>(cfg.n_times, 2);
  for (std::size_t k = 0; k < n_times; ++k) {
    const double s = cfg.t * static_cast<double>(k) / static_cast<double>(n_times - 1);
    const auto [lo, hi] = field.time_cells(s);
    for (std::size_t m = 0; m < prim.n_nodes(); ++m) {
      if (!inside[m]) continue;
      double w = 0.0;
      double dw = 0.0;
      for (std::int64_t i = std::max(lo, cell_lo); i <= std::min(hi, cell_hi); ++i) {
        const double g1 = prim.g1_node(i, m);
        w += field.time_factor(i, s, 0) * g1;
        if (smooth) dw += field.time_factor(i, s, 1) * g1;
      }
      const double wz = prefactor * std::abs(w) * weight[m];
      if (k == 0) out.zeta = std::max(out.zeta, wz);
      out.xi = std::max(out.xi, wz);
      out.eta = std::max(out.eta, prefactor * std::abs(dw) * weight[m]);
    }
  }
  if (!smooth) out.eta = kNaN;
  return out;
}

}  // namespace

std::vector<DualExponentLevel> dual_exponent_check(const DualExponentConfig& config) {
  const ScalingRegime regime = classify(0.0, config.beta);
  require_supported(regime);
  const double dy0 = std::min(std::pow(config.eps, config.beta), 1.0) / config.dy_points;
  std::vector<DualExponentLevel> levels;
  for (std::size_t r = 0; r < config.dt_list.size(); ++r) {
    DualExponentLevel level;
    level.dt = config.dt_list[r];
    level.dy = dy0 / std::pow(2.0, static_cast<double>(r));
    level.direct.assign(config.n_pairs, 0.0);
    level.ito.assign(config.n_pairs, 0.0);
    const std::size_t n_steps = steps_for(config.t, level.dt);
    parallel_for(config.n_pairs, config.threads, [&](std::size_t q) {
      const KernelField field = config.field.make(rng::derive(config.seed, "dual-field", q));
      const PathGrid path = simulate_path(config.t, n_steps, rng::derive(config.seed, "dual-path", q));
      level.direct[q] = exponent_direct(regime, config.x, config.t, field, path, config.eps).y_value;
      level.ito[q] =
          exponent_ito_trick(regime, config.x, config.t, field, path, config.eps, level.dy).y_value;
    });
    std::vector<double> sq_direct(config.n_pairs), sq_gap(config.n_pairs);
    for (std::size_t q = 0; q < config.n_pairs; ++q) {
      sq_direct[q] = level.direct[q] * level.direct[q];
      const double d = level.direct[q] - level.ito[q];
      sq_gap[q] = d * d;
    }
    level.rms_direct = std::sqrt(stats::mean(sq_direct));
    level.rms_gap = std::sqrt(stats::mean(sq_gap));
    level.relative_gap = level.rms_gap / level.rms_direct;
    levels.push_back(std::move(level));
  }
  return levels;
}

std::vector<TightnessStats> tightness_diag(const TightnessConfig& config) {
  if (config.n_seeds < 1) throw std::invalid_argument("tightness_diag needs n_seeds >= 1");
  if (!(config.gamma_tilde > 0.0 && config.gamma_tilde < 0.5)) {
    throw std::invalid_argument("gamma_tilde must lie in (0, 1/2)");
  }
  const KernelField spec = config.field.make(0);
  std::vector<TightnessStats> out;
  for (const double eps : config.eps_list) {
    std::vector<TightnessSample> samples(config.n_seeds);
    parallel_for(config.n_seeds, config.threads, [&](std::size_t n) {
      samples[n] = tightness_sample(spec.with_seed(rng::derive(config.seed, "tightness", n)), eps, config);
    });
    auto p99 = [&](double TightnessSample::*member) {
      std::vector<double> v(samples.size());
      std::transform(samples.begin(), samples.end(), v.begin(), [&](const auto& s) { return s.*member; });
      return std::isnan(v.front()) ? kNaN : stats::quantile(std::move(v), 0.99);
    };
    TightnessStats st;
    st.eps = eps;
    st.window = config.window;
    st.gamma_tilde = config.gamma_tilde;
    st.zeta_p99 = p99(&TightnessSample::zeta);
    st.xi_p99 = p99(&TightnessSample::xi);
    st.eta_p99 = p99(&TightnessSample::eta);
    out.push_back(st);
  }
  return out;
}

}  // namespace homog
