#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "homog/error.hpp"
#include "homog/experiments.hpp"
#include "homog/fk_solver.hpp"
#include "homog/limits.hpp"
#include "homog/rng.hpp"
#include "homog/stats.hpp"

using namespace homog;

namespace {

struct ConstantField {
  double c;
  double value(double, double) const { return c; }
  double sup_bound() const { return std::abs(c); }
};

// Deliberately violates its own bound.
struct LyingField {
  double value(double, double) const { return 2.0; }
  double sup_bound() const { return 1.0; }
};

KernelField square_field(std::uint64_t seed, double amplitude = 1.0) {
  FieldSpec spec;
  spec.amplitude = amplitude;
  return spec.make(seed);
}

}  // namespace

TEST_CASE("resolution helpers") {
  const auto det = classify(2, 1);
  const Resolution r = default_resolution(det, 0.1, 20);
  CHECK(r.dt == doctest::Approx(0.01 / 20));
  CHECK(r.dy == doctest::Approx(0.1 / 20));
  // the spatial scale limits the time step when 2 beta > alpha
  CHECK(default_resolution(classify(0, 1), 0.1).dt == doctest::Approx(0.01 / 20));
  CHECK(default_resolution(classify(1, 0), 0.1).dt == doctest::Approx(0.1 / 20));
  CHECK_THROWS_AS(default_resolution(det, 0.1, 5), std::invalid_argument);
  CHECK(steps_for(1.0, 0.3) == 4);
  CHECK(steps_for(1.0, 0.25) == 4);
  CHECK_THROWS_AS(check_resolution(det, 0.1, 0.002), UnderresolvedGrid);
  CHECK_NOTHROW(check_resolution(det, 0.1, 0.001));
  const PathGrid p = simulate_path(1.0, 10, 1);
  CHECK(steps_until(p, 0.5) == 5);
  CHECK_THROWS_AS(steps_until(p, 0.55), GridMismatch);
}

TEST_CASE("constant field gives eps^-gamma c t") {
  const PathGrid p = simulate_path(0.5, 1000, 2);
  for (auto [a, b] : {std::pair{2.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}, {3.0, 1.0}}) {
    const auto reg = classify(a, b);
    const double eps = 0.3;
    const double y = exponent_direct(reg, 0.0, 0.5, ConstantField{0.7}, p, eps).y_value;
    CHECK(y == doctest::Approx(std::pow(eps, -reg.gamma) * 0.7 * 0.5).epsilon(1e-12));
  }
}

TEST_CASE("zero field and regime checks") {
  const PathGrid p = simulate_path(1.0, 2000, 3);
  const auto reg = classify(2, 1);
  const auto s = exponent_direct(reg, 0.0, 1.0, square_field(1, 0.0), p, 0.2);
  CHECK(s.y_value == 0.0);
  CHECK(s.path_seed == 3);
  CHECK_THROWS_AS(exponent_direct(classify(1, 0.7), 0.0, 1.0, square_field(1), p, 0.2), WrongRegime);
  CHECK_THROWS_AS(exponent_direct(reg, 0.0, 1.0, square_field(1), p, 0.05), UnderresolvedGrid);
  CHECK_THROWS_AS(exponent_direct(classify(1, 0), 0.0, 1.0, LyingField{}, p, 0.5), std::logic_error);
}

TEST_CASE("direct exponent converges under refinement") {
  // oracle: the same path refined 32x (bridge refinement keeps the coarse points)
  const auto reg = classify(2, 1);
  const KernelField f(Kernel1D::cosine(1.0), Kernel1D::tent(1.0), MarkLaw::Rademacher, 4);
  const double eps = 0.2;
  std::vector<double> err(2, 0.0);
  double den = 0.0;
  for (std::uint64_t q = 0; q < 10; ++q) {
    const auto seed = rng::derive(5, "conv", q);
    const double yf = exponent_direct(reg, 0.0, 0.5, f, simulate_path(0.5, 16000, seed), eps).y_value;
    den += yf * yf;
    for (std::size_t r = 0; r < 2; ++r) {
      const double y = exponent_direct(reg, 0.0, 0.5, f, simulate_path(0.5, r ? 2000 : 500, seed), eps).y_value;
      err[r] += (y - yf) * (y - yf);
    }
  }
  CHECK(err[1] < err[0]);
  CHECK(std::sqrt(err[1] / den) < 0.05);
}

TEST_CASE("ito trick preconditions") {
  const PathGrid p = simulate_path(1.0, 2000, 3);
  const KernelField smooth(Kernel1D::cosine(1.0), Kernel1D::tent(1.0), MarkLaw::Rademacher, 2);
  CHECK_THROWS_AS(exponent_ito_trick(classify(2, 1), 0.0, 1.0, smooth, p, 0.2), WrongRegime);
  CHECK_THROWS_AS(exponent_ito_trick(classify(0, 1), 0.0, 1.0, square_field(1), p, 0.2),
                  std::invalid_argument);
  const double y = exponent_ito_trick(classify(0, 1), 0.0, 1.0, smooth.negated().negated(), p, 0.2).y_value;
  CHECK(std::isfinite(y));
  const double yz = exponent_ito_trick(classify(0, 1), 0.0, 1.0,
                                       KernelField(Kernel1D::cosine(1.0), Kernel1D::tent(1.0), MarkLaw::Zero, 2),
                                       p, 0.2)
                        .y_value;
  CHECK(yz == 0.0);
}

TEST_CASE("ito trick agrees with the direct route") {
  DualExponentConfig c;
  c.n_pairs = 6;
  c.dt_list = {1e-4, 5e-5};
  const auto levels = dual_exponent_check(c);
  CHECK(levels[1].rms_gap < levels[0].rms_gap);
  CHECK(levels[1].relative_gap < 0.1);
}

TEST_CASE("initial conditions") {
  CHECK(initial_condition("one")(3.0) == 1.0);
  CHECK(initial_condition("one").constant == 1.0);
  CHECK(initial_condition("zero")(3.0) == 0.0);
  CHECK(initial_condition("gaussian")(1.0) == doctest::Approx(std::exp(-0.5)));
  CHECK_FALSE(initial_condition("gaussian").constant.has_value());
  CHECK_THROWS(initial_condition("cubic"));
}

TEST_CASE("zero field reduces to the heat semigroup") {
  const auto g = initial_condition("gaussian");
  EstimateOptions opts;
  opts.seed = 9;
  const auto est = estimate_u(classify(2, 1), 0.0, 1.0, 0.3, 2000, 10, square_field(1, 0.0), g, opts);
  const double exact = 1.0 / std::sqrt(2.0);
  // every realization sees the same paths, so pool the path averages
  const double m = stats::mean(est.u_samples);
  // sd of g(B_1) is below 0.25
  CHECK(std::abs(m - exact) < 4 * 0.25 / std::sqrt(2000.0 * 10));
  CHECK(heat_semigroup(g, 0.0, 1.0) == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("zero field estimate does not depend on eps") {
  const auto g = initial_condition("gaussian");
  EstimateOptions opts;
  opts.seed = 9;
  const auto a = estimate_u(classify(2, 1), 0.2, 0.5, 0.4, 300, 3, square_field(1, 0.0), g, opts);
  const auto b = estimate_u(classify(2, 1), 0.2, 0.5, 0.1, 300, 3, square_field(1, 0.0), g, opts);
  CHECK(a.u_samples == b.u_samples);
}

TEST_CASE("estimate_u basic properties") {
  const auto reg = classify(2, 1);
  EstimateOptions opts;
  opts.seed = 4;
  const auto zero = estimate_u(reg, 0.0, 0.5, 0.3, 50, 4, square_field(1), initial_condition("zero"), opts);
  for (double u : zero.u_samples) CHECK(u == 0.0);
  const auto one = estimate_u(reg, 0.0, 0.5, 0.3, 50, 6, square_field(1), initial_condition("one"), opts);
  REQUIRE(one.u_samples.size() == 6);
  for (double u : one.u_samples) CHECK(u > 0.0);
  CHECK(one.cv_samples.size() == 6);
  CHECK(one.exp4_means.size() == 6);
  opts.threads = 3;
  const auto threaded = estimate_u(reg, 0.0, 0.5, 0.3, 50, 6, square_field(1), initial_condition("one"), opts);
  CHECK(threaded.u_samples == one.u_samples);
  CHECK(threaded.cv_samples == one.cv_samples);
  CHECK(threaded.exp4_means == one.exp4_means);
}

TEST_CASE("antithetic pairs share a seed with opposite marks") {
  const auto reg = classify(2, 1);
  const KernelField spec = square_field(1);
  EstimateOptions opts;
  opts.seed = 4;
  opts.antithetic = true;
  const double eps = 0.3, t = 0.5;
  const std::size_t n_paths = 20;
  const auto est = estimate_u(reg, 0.0, t, eps, n_paths, 2, spec, initial_condition("one"), opts);
  const std::size_t n = steps_for(t, default_resolution(reg, eps).dt);
  const KernelField f = spec.with_seed(rng::derive(4, "field", 0)).negated();
  double sum = 0.0;
  for (std::size_t p = 0; p < n_paths; ++p) {
    const PathGrid path = simulate_path(t, n, rng::derive(4, "path", 1, p));
    sum += std::exp(exponent_direct(reg, 0.0, t, f, path, eps).y_value);
  }
  CHECK(est.u_samples[1] == doctest::Approx(sum / n_paths).epsilon(1e-12));
}

TEST_CASE("exact second moment matches Monte Carlo") {
  const auto reg = classify(2, 1);
  const KernelField spec = square_field(1);
  const CorrelationModel corr(spec);
  const double eps = 0.3, t = 0.5;
  const double dt = default_resolution(reg, eps).dt;
  const std::size_t n = steps_for(t, dt);
  const double exact = exponent_second_moment(reg, corr, t, eps, n);
  std::vector<double> y2(4000);
  for (std::size_t i = 0; i < y2.size(); ++i) {
    const KernelField f = spec.with_seed(rng::derive(3, "m2-field", i));
    const PathGrid p = simulate_path(t, n, rng::derive(3, "m2-path", i));
    const double y = exponent_direct(reg, 0.0, t, f, p, eps).y_value;
    y2[i] = y * y;
  }
  const double se = std::sqrt(stats::variance(y2) / double(y2.size()));
  CHECK(std::abs(stats::mean(y2) - exact) < 4 * se);
}

TEST_CASE("pair exponential moment") {
  const KernelField f = square_field(2);
  CHECK_THROWS_AS(pair_exp_moment(classify(0, 1), 0.0, 0.5, 0.3, f, 10, 1), WrongRegime);
  const double m = pair_exp_moment(classify(2, 1), 0.0, 0.5, 0.3, f, 200, 1);
  CHECK(m > 0.0);
  CHECK(std::isfinite(m));
}
