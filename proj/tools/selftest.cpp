#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <ostream>

#include "homog/experiments.hpp"
#include "homog/fk_solver.hpp"
#include "homog/limits.hpp"
#include "homog/paths.hpp"
#include "homog/regime.hpp"
#include "homog/rng.hpp"

namespace homog::tools {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

SelftestResult philox_kat() {
  const rng::Counter got = rng::philox4x32({0, 0, 0, 0}, {0, 0});
  const rng::Counter want = {0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u};
  return {"philox known answer", got == want, ""};
}

SelftestResult classify_examples() {
  const bool ok = classify(0, 1).gamma == 0.5 && classify(0, 1).tag == RegimeTag::SpatialSPDE &&
                  classify(2, 1).gamma == 1.0 && classify(2, 1).tag == RegimeTag::Deterministic2b &&
                  classify(1, 0).gamma == 0.5 && classify(1, 0).tag == RegimeTag::TemporalSPDE &&
                  classify(1, 0.7).tag == RegimeTag::OpenCase;
  return {"classify examples", ok, ""};
}

SelftestResult zero_field_heat() {
  FieldSpec spec;
  spec.amplitude = 0.0;
  EstimateOptions opts;
  opts.seed = 5;
  const UEstimate est = estimate_u(classify(2, 1), 0.0, 1.0, 0.2, 4000, 2, spec.make(1),
                                   initial_condition("gaussian"), opts);
  double mean = 0.0;
  for (double u : est.u_samples) mean += u / static_cast<double>(est.u_samples.size());
  const double exact = 1.0 / std::sqrt(2.0);
  const bool ok = std::abs(mean - exact) < 0.02;
  return {"zero field gives heat semigroup", ok, fmt("mean %.4f exact %.4f", mean, exact)};
}

SelftestResult zero_field_exponent() {
  FieldSpec spec;
  spec.amplitude = 0.0;
  const KernelField field = spec.make(3);
  const PathGrid path = simulate_path(1.0, 2000, 4);
  const double y = exponent_direct(classify(2, 1), 0.0, 1.0, field, path, 0.1).y_value;
  return {"zero field gives zero exponent", y == 0.0, fmt("y %.3g", y)};
}

SelftestResult local_time_mass() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PathGrid path = simulate_path(0.7, 700, rng::derive(17, "selftest-lt", s));
    worst = std::max(worst, std::abs(local_time(path, 0.05).total_mass(700) - 0.7));
  }
  return {"local time mass", worst < 1e-12, fmt("max error %.2g", worst)};
}

SelftestResult sigma_prime_square() {
  const CorrelationModel corr = correlation_model(FieldSpec{}.make(1));
  const double one = sigma(SigmaVariant::PrimeOneSided, corr).value;
  const double two = sigma(SigmaVariant::PrimeTwoSided, corr).value;
  const bool ok = std::abs(one - 0.5) < 1e-6 && std::abs(two - 1.0) < 1e-6;
  return {"sigma prime, square kernel", ok, fmt("one %.8f two %.8f", one, two)};
}

SelftestResult sigma_half_mc() {
  const CorrelationModel corr = correlation_model(FieldSpec{}.make(1));
  const EffectiveConstant q = sigma(SigmaVariant::HalfOneSided, corr);
  const EffectiveConstant mc =
      sigma(SigmaVariant::HalfOneSided, corr, SigmaMethod::MonteCarlo, 100000, 8);
  const double z = std::abs(q.value - mc.value) / mc.std_error;
  return {"sigma half, quadrature vs MC", z < 4.0, fmt("z %.2f (se %.2g)", z, mc.std_error)};
}

SelftestResult dual_exponent() {
  const auto levels = dual_exponent_check(DualExponentConfig{});
  bool ok = levels.back().relative_gap < 0.05;
  for (std::size_t r = 1; r < levels.size(); ++r)
    ok = ok && levels[r].rms_gap < levels[r - 1].rms_gap;
  return {"dual exponent agreement", ok,
          fmt("gap %.4f -> %.4f", levels.front().relative_gap, levels.back().relative_gap)};
}

}  // namespace

std::vector<SelftestResult> run_selftest() {
  const std::vector<std::function<SelftestResult()>> checks = {
      philox_kat,     classify_examples,  zero_field_exponent, zero_field_heat,
      local_time_mass, sigma_prime_square, sigma_half_mc,       dual_exponent,
  };
  std::vector<SelftestResult> out;
  for (const auto& check : checks) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({"(exception)", false, e.what()});
    }
  }
  return out;
}

bool print_selftest(const std::vector<SelftestResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(36) << r.name << r.detail
        << '\n';
    all = all && r.pass;
  }
  return all;
}

}  // namespace homog::tools
