#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "homog/error.hpp"
#include "homog/experiments.hpp"

using namespace homog;

namespace {

SweepConfig tiny(double alpha, double beta) {
  SweepConfig c;
  c.name = "tiny";
  c.alpha = alpha;
  c.beta = beta;
  c.eps_list = {0.4, 0.3};
  c.t = 0.25;
  c.n_paths = 20;
  c.n_fields = 6;
  c.seed = 2;
  if (beta == 0.0) {
    c.field = {"cosine", 2.0, "tent", 1.0, 0.5, "uniform", 1.0};
    c.limit.dyadic_level = 4;
    c.limit.temporal_dx = 0.05;
  }
  return c;
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  write_csv(r, out);
  return out.str();
}

}  // namespace

TEST_CASE("number formatting is locale independent and round-trips") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("sweep CSV layout") {
  const auto r = run_sweep(tiny(2, 1));
  const std::string csv = csv_of(r);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  std::istringstream in(csv);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ',') == 7);
  }
  CHECK(lines == 3);
  REQUIRE(r.rows.size() == 2);
  CHECK(std::isnan(r.rows[0].ks_distance));
  CHECK(std::isnan(r.rows[0].runtime_s));
  CHECK(r.target_one_sided == doctest::Approx(std::exp(0.25 * r.sigma_one_sided)));
  CHECK(r.sigma_two_sided == doctest::Approx(2 * r.sigma_one_sided));
  CHECK(r.rows[0].mse_one_sided >= r.rows[0].var_u);
}

TEST_CASE("sweeps do not depend on the thread count") {
  for (auto [a, b] : {std::pair{2.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}, {3.0, 1.0}}) {
    CAPTURE(a);
    CAPTURE(b);
    SweepConfig c = tiny(a, b);
    const std::string one = csv_of(run_sweep(c));
    c.threads = 4;
    CHECK(csv_of(run_sweep(c)) == one);
    c.threads = 1;
    CHECK(csv_of(run_sweep(c)) == one);
  }
}

TEST_CASE("SPDE sweeps report KS columns") {
  const auto r = run_sweep(tiny(1, 0));
  REQUIRE(r.rows.size() == 2);
  CHECK(r.limit_samples.size() == 6);
  CHECK(r.rows[0].ks_distance >= 0.0);
  CHECK(r.rows[0].ks_distance <= 1.0);
  CHECK(r.rows[0].ks_pvalue >= 0.0);
}

TEST_CASE("timing fills the runtime column") {
  SweepConfig c = tiny(2, 1);
  c.timing = true;
  const auto r = run_sweep(c);
  CHECK(r.rows[0].runtime_s >= 0.0);
}

TEST_CASE("sweep configuration errors") {
  CHECK_THROWS_AS(run_sweep(tiny(1, 0.7)), WrongRegime);
  CHECK_THROWS_AS(run_sweep(tiny(0, 0)), WrongRegime);
  SweepConfig c = tiny(2, 1);
  c.eps_list = {};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = tiny(2, 1);
  c.eps_list = {1.5, 0.4};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.eps_list = {0.2, 0.4};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = tiny(2, 1);
  c.n_paths = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = tiny(2, 1);
  c.t = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("log-log slope") {
  CHECK(log_log_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0));
  CHECK(log_log_slope({0.4, 0.2, 0.1}, {5, 5, 5}) == doctest::Approx(0.0));
}

TEST_CASE("gaussian check on a zero field is degenerate") {
  GaussianCheckConfig c;
  c.n_fields = 50;
  c.field.amplitude = 0.0;
  const auto rep = gaussian_limit_check(c);
  CHECK(rep.degenerate);
  CHECK(rep.sample_variance == 0.0);
}

TEST_CASE("gaussian check small run") {
  GaussianCheckConfig c;
  c.n_fields = 200;
  const auto rep = gaussian_limit_check(c);
  CHECK(rep.samples.size() == 200);
  CHECK(rep.sigma_two_sided == doctest::Approx(2 * rep.sigma_one_sided));
  CHECK_FALSE(rep.degenerate);
}

TEST_CASE("tightness diagnostics") {
  TightnessConfig c;
  c.eps_list = {0.4, 0.2};
  c.n_seeds = 20;
  c.n_times = 5;
  const auto rows = tightness_diag(c);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.zeta_p99 > 0.0);
    CHECK(r.xi_p99 >= r.zeta_p99);
    CHECK(std::isfinite(r.eta_p99));
  }
  c.field = FieldSpec{};
  const auto sq = tightness_diag(c);
  CHECK(std::isnan(sq[0].eta_p99));
}

TEST_CASE("dual exponent check reports every level") {
  DualExponentConfig c;
  c.n_pairs = 3;
  c.dt_list = {2e-4, 1e-4};
  const auto levels = dual_exponent_check(c);
  REQUIRE(levels.size() == 2);
  CHECK(levels[1].dy == doctest::Approx(levels[0].dy / 2));
  CHECK(levels[0].direct.size() == 3);
  CHECK(levels[0].rms_direct > 0.0);
}
