#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "homog/rng.hpp"
#include "homog/stats.hpp"

using namespace homog;

TEST_CASE("pairwise sum and moments") {
  std::vector<double> xs(1001);
  long double ref = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = std::sin(double(i)) * 1e3 + 0.1;
    ref += xs[i];
  }
  CHECK(stats::pairwise_sum(xs) == doctest::Approx(double(ref)).epsilon(1e-13));
  CHECK(stats::pairwise_sum(std::vector<double>{}) == 0.0);
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(stats::mean(v) == 2.5);
  CHECK(stats::variance(v) == doctest::Approx(5.0 / 3.0));
  CHECK(stats::variance(std::vector<double>{3.0}) == 0.0);
}

TEST_CASE("quantile and normal cdf") {
  CHECK(stats::quantile({3, 1, 2, 4, 5}, 0.5) == 3.0);
  CHECK(stats::quantile({0, 10}, 0.25) == 2.5);
  CHECK(stats::normal_cdf(0) == 0.5);
  CHECK(stats::normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(stats::normal_cdf(-1) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
}

TEST_CASE("kolmogorov distribution") {
  CHECK(stats::kolmogorov_q(1.36) == doctest::Approx(0.0494).epsilon(1e-2));
  CHECK(stats::kolmogorov_q(1.63) == doctest::Approx(0.0098).epsilon(2e-2));
  CHECK(stats::kolmogorov_q(0.0) == 1.0);
  CHECK(stats::ks_critical_value(500, 500) == doctest::Approx(1.63 * std::sqrt(2.0 / 500)));
}

TEST_CASE("two-sample KS") {
  std::vector<double> a(400), b(400), c(400);
  for (std::size_t i = 0; i < 400; ++i) {
    a[i] = rng::normal_at(1, i);
    b[i] = rng::normal_at(2, i);
    c[i] = rng::normal_at(3, i) + 1.0;
  }
  CHECK(stats::ks_two_sample(a, a).distance == 0.0);
  CHECK(stats::ks_two_sample(a, b).p_value > 0.001);
  CHECK(stats::ks_two_sample(a, c).p_value < 1e-10);
  // ties: identical constant samples
  const std::vector<double> ones(10, 1.0), twos(10, 2.0);
  CHECK(stats::ks_two_sample(ones, ones).distance == 0.0);
  CHECK(stats::ks_two_sample(ones, twos).distance == 1.0);
}

TEST_CASE("one-sample KS against the normal law") {
  std::vector<double> z(2000);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = rng::normal_at(4, i);
  CHECK(stats::ks_one_sample(z, stats::normal_cdf).p_value > 0.001);
  CHECK(stats::ks_one_sample(z, [](double x) { return stats::normal_cdf(x / 1.5); }).p_value < 1e-6);
}

TEST_CASE("linear fit recovers a line") {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const auto fit = stats::linear_fit(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r_squared == doctest::Approx(1.0));
}
