#pragma once

#include <functional>
#include <span>
#include <vector>

namespace homog::stats {

/// Recursive pairwise summation; the association order depends only on the
/// length, so results are reproducible bit for bit.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);
/// Unbiased sample variance (0 for fewer than two values).
double variance(std::span<const double> values);
/// Linear-interpolated empirical quantile, q in [0, 1].
double quantile(std::vector<double> values, double q);

double normal_cdf(double z);

struct KsResult {
  double distance = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// Two-sample statistic sup|F_a - F_b| with the asymptotic p-value using the
/// effective size n_e = n m / (n + m) and the usual small-sample correction.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample statistic against a continuous CDF.
KsResult ks_one_sample(std::span<const double> a, const std::function<double(double)>& cdf);

/// c(level) sqrt((n + m) / (n m)) with c(0.01) = 1.63.
double ks_critical_value(std::size_t n, std::size_t m, double c_alpha = 1.63);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace homog::stats
