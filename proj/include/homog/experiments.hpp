#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "homog/field.hpp"
#include "homog/fk_solver.hpp"
#include "homog/limits.hpp"
#include "homog/regime.hpp"
#include "homog/stats.hpp"

namespace homog {

/// Law of the medium, realized for a given seed.
struct FieldSpec {
  std::string kernel_t = "square";
  double width_t = 1.0;
  std::string kernel_x = "square";
  double width_x = 1.0;
  double theta = 0.5;  // holder kernels only
  std::string marks = "rademacher";
  double amplitude = 1.0;

  KernelField make(std::uint64_t seed) const;
};

struct SweepConfig {
  std::string name = "sweep";
  double alpha = 2.0;
  double beta = 1.0;
  std::vector<double> eps_list{0.4, 0.2, 0.1};
  double t = 0.5;
  double x = 0.0;
  std::string g = "one";
  std::size_t n_paths = 2000;
  std::size_t n_fields = 200;
  std::uint64_t seed = 1;
  FieldSpec field{};
  double dt = 0.0;           // absolute time step override, 0 = default per eps
  double points = 20.0;      // steps per fastest oscillation when dt == 0
  double log_cap = 600.0;
  /// Antithetic field pairs in deterministic regimes (SPDE regimes always use
  /// independent realizations, which the two-sample KS test needs).
  bool antithetic = true;
  // SPDE regimes: limit samples (0 means "same as the pre-limit budget").
  std::size_t n_limit = 0;
  std::size_t limit_paths = 0;
  LimitOptions limit{};
  bool timing = false;       // fill runtime_s (otherwise NaN, keeps CSVs reproducible)
  unsigned threads = 1;

  /// Throws ConfigError on violated invariants.
  void validate() const;
};

struct SweepRow {
  double eps = 0.0;
  double mean_u = 0.0;  // control-variate estimate when g is constant
  double var_u = 0.0;   // spread of the u^eps samples themselves
  double ci_halfwidth = 0.0;
  double ks_distance = 0.0;  // NaN for deterministic regimes
  double ks_pvalue = 0.0;    // NaN for deterministic regimes
  double exp_moment_diag = 0.0;
  double runtime_s = 0.0;    // NaN unless timing is enabled
  std::size_t n_over_cap = 0;
  double mean_u_plain = 0.0;  // plain sample mean of the u^eps samples
  // Deterministic regimes: var_u + (mean_u - target)^2 for each Sigma variant.
  double mse_one_sided = 0.0;
  double mse_two_sided = 0.0;
};

struct SweepResult {
  SweepConfig config;
  ScalingRegime regime;
  std::vector<SweepRow> rows;
  std::vector<std::vector<double>> u_samples;  // per eps
  std::vector<double> limit_samples;           // SPDE regimes
  // Deterministic regimes: the two Sigma variants and the implied limits.
  double sigma_one_sided = 0.0;
  double sigma_two_sided = 0.0;
  double target_one_sided = 0.0;
  double target_two_sided = 0.0;
};

/// Runs the eps ladder. Throws WrongRegime (OpenCase, Degenerate) before any work.
SweepResult run_sweep(const SweepConfig& config);

/// Locale-independent shortest round-trip formatting ("nan", "inf", "-inf").
std::string format_number(double value);

/// Header plus one LF-terminated line per row, columns
/// eps,mean_u,var_u,ci_halfwidth,ks_distance,ks_pvalue,exp_moment_diag,runtime_s.
void write_csv(const SweepResult& result, std::ostream& out);
inline constexpr const char* kCsvHeader =
    "eps,mean_u,var_u,ci_halfwidth,ks_distance,ks_pvalue,exp_moment_diag,runtime_s";

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------

struct GaussianCheckConfig {
  double alpha = 1.0;
  double beta = 0.25;
  double eps = 0.05;
  double t = 1.0;
  double x = 0.0;
  std::size_t n_fields = 2000;
  std::uint64_t seed = 7;
  std::uint64_t path_seed = 11;
  FieldSpec field{"square", 1.0, "square", 4.0, 0.5, "uniform", 1.0};
  unsigned threads = 1;
};

struct GaussianCheckReport {
  std::vector<double> samples;
  double sample_variance = 0.0;
  double sigma_one_sided = 0.0;   // Sigma' variants
  double sigma_two_sided = 0.0;
  stats::KsResult ks_one_sided;
  stats::KsResult ks_two_sided;
  bool two_sided_best = false;
  double best_relative_gap = 0.0; // |sample variance / (t sigma_best) - 1|
  bool degenerate = false;        // all samples identical (e.g. zero field)
};

/// Samples Y across field seeds on one fixed path and compares with N(0, t sigma^2).
GaussianCheckReport gaussian_limit_check(const GaussianCheckConfig& config);

// ---------------------------------------------------------------------------

struct DualExponentConfig {
  double beta = 1.0;  // alpha is 0
  double eps = 0.1;
  double t = 1.0;
  double x = 0.0;
  FieldSpec field{"cosine", 1.0, "tent", 1.0, 0.5, "rademacher", 1.0};
  std::size_t n_pairs = 20;
  std::uint64_t seed = 99;
  std::vector<double> dt_list{2e-4, 1e-4, 5e-5, 2.5e-5};
  double dy_points = 20.0;  // dy = eps^beta / dy_points, halved at each level
  unsigned threads = 1;
};

struct DualExponentLevel {
  double dt = 0.0;
  double dy = 0.0;
  std::vector<double> direct;
  std::vector<double> ito;
  double rms_direct = 0.0;
  double rms_gap = 0.0;
  double relative_gap = 0.0;  // rms_gap / rms_direct
};

/// Both exponent routes on the same (path, field) pairs at each grid level.
std::vector<DualExponentLevel> dual_exponent_check(const DualExponentConfig& config);

// ---------------------------------------------------------------------------

struct TightnessStats {
  double eps = 0.0;
  double window = 0.0;
  double gamma_tilde = 0.25;
  double zeta_p99 = 0.0;  // sup_x |W(0,x)| / (1+|x|)^(1-gamma)
  double xi_p99 = 0.0;    // same, also sup over s in [0, t]
  double eta_p99 = 0.0;   // same for dW/ds
};

struct TightnessConfig {
  FieldSpec field{"cosine", 1.0, "tent", 1.0, 0.5, "rademacher", 1.0};
  std::vector<double> eps_list{0.4, 0.2, 0.1, 0.05};
  double t = 1.0;
  double window = 4.0;
  double gamma_tilde = 0.25;
  std::size_t n_seeds = 200;
  std::size_t n_times = 21;
  std::uint64_t seed = 3;
  unsigned threads = 1;
};

/// W(s, x) = eps^-1/2 int_0^x c(s, y / eps) dy on x in [-window, window].
std::vector<TightnessStats> tightness_diag(const TightnessConfig& config);

}  // namespace homog
