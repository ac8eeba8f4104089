#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "homog/field.hpp"
#include "homog/kernel.hpp"
#include "homog/rng.hpp"
#include "oracle.hpp"

using namespace homog;

namespace {

std::vector<Kernel1D> all_kernels() {
  return {Kernel1D::square(1.0), Kernel1D::tent(1.0), Kernel1D::cosine(2.0),
          Kernel1D::holder(1.5, 0.5), Kernel1D::square(4.0)};
}

}  // namespace

TEST_CASE("kernel integrals and autocorrelations against fine-grid oracle") {
  for (const auto& k : all_kernels()) {
    CAPTURE(k.name());
    const double w = k.width();
    // stop short of the jump at the right edge of the support
    const double edge = 1.0 - 1e-13;
    CHECK(k.integral() == doctest::Approx(simpson(k, 0.0, w * edge)).epsilon(1e-6));
    for (double frac : {0.0, 0.1, 0.35, 0.7, 0.95}) {
      const double tau = frac * w;
      const double oracle =
          simpson([&](double s) { return k(s) * k(s + tau); }, 0.0, (w - tau) * edge, 200000);
      CHECK(k.autocorrelation(tau) == doctest::Approx(oracle).epsilon(1e-5));
      CHECK(k.autocorrelation(-tau) == k.autocorrelation(tau));
    }
    CHECK(k.autocorrelation(w) == 0.0);
    CHECK(k.autocorrelation(1.5 * w) == 0.0);
    CHECK(k(-0.01) == 0.0);
    CHECK(k(w) == 0.0);
  }
}

TEST_CASE("kernel values") {
  CHECK(Kernel1D::square(1)(0.3) == 1.0);
  CHECK(Kernel1D::tent(1)(0.5) == 1.0);
  CHECK(Kernel1D::tent(1)(0.25) == doctest::Approx(0.5));
  CHECK(Kernel1D::cosine(1)(0.5) == doctest::Approx(1.0));
  CHECK(Kernel1D::holder(1, 0.5)(0.25) == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS(Kernel1D::from_name("gauss", 1.0));
  CHECK(Kernel1D::square(1).smoothness() == -1);
  CHECK(Kernel1D::cosine(1).smoothness() >= 2);
}

TEST_CASE("cosine kernel derivatives match finite differences") {
  const auto k = Kernel1D::cosine(2.0);
  const double h = 1e-5;
  for (double s : {0.1, 0.6, 1.3, 1.9}) {
    CHECK(k.derivative(s, 1) == doctest::Approx((k(s + h) - k(s - h)) / (2 * h)).epsilon(1e-6));
    CHECK(k.derivative(s, 2) ==
          doctest::Approx((k(s + h) - 2 * k(s) + k(s - h)) / (h * h)).epsilon(1e-4));
  }
}

TEST_CASE("field realization properties") {
  const KernelField f(Kernel1D::cosine(2.0), Kernel1D::tent(1.0), MarkLaw::Rademacher, 42, 1.5);
  const KernelField neg = f.negated();
  const KernelField other = f.with_seed(43);
  double max_abs = 0.0;
  bool differs = false;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const double t = 20 * rng::uniform_at(1, i, 0) - 10;
    const double x = 20 * rng::uniform_at(1, i, 1) - 10;
    const double v = f.value(t, x);
    max_abs = std::max(max_abs, std::abs(v));
    CHECK(neg.value(t, x) == -v);
    CHECK(f(t, x) == v);
    differs = differs || other.value(t, x) != v;
  }
  CHECK(max_abs <= f.sup_bound());
  CHECK(max_abs > 0.0);
  CHECK(differs);
  CHECK(f.is_c2_in_time());
  CHECK(f.smoothness_class() == SmoothnessClass::C2InTime);
}

TEST_CASE("field time derivative") {
  const KernelField f(Kernel1D::cosine(1.0), Kernel1D::square(1.0), MarkLaw::Uniform, 5);
  const double h = 1e-5;
  for (double t : {0.13, 0.77, 2.4}) {
    const double x = 0.3;
    CHECK(f.time_derivative(t, x, 1) ==
          doctest::Approx((f.value(t + h, x) - f.value(t - h, x)) / (2 * h)).epsilon(1e-5));
  }
  const KernelField sq(Kernel1D::square(1.0), Kernel1D::square(1.0), MarkLaw::Uniform, 5);
  CHECK_THROWS(sq.time_derivative(0.1, 0.1, 1));
}

TEST_CASE("mark laws") {
  CHECK(mark_variance(MarkLaw::Rademacher) == 1.0);
  CHECK(mark_variance(MarkLaw::Uniform) == doctest::Approx(1.0 / 3.0));
  CHECK(mark_variance(MarkLaw::Zero) == 0.0);
  const KernelField z(Kernel1D::square(), Kernel1D::square(), MarkLaw::Zero, 1);
  CHECK(z.value(0.3, 0.4) == 0.0);
  CHECK(z.sup_bound() == 0.0);
  CHECK_THROWS(mark_law_from_name("gaussian"));
}

TEST_CASE("closed-form correlation matches oracle") {
  const KernelField f(Kernel1D::tent(2.0), Kernel1D::cosine(1.0), MarkLaw::Uniform, 1, 2.0);
  const CorrelationModel corr(f);
  const double var = 4.0 / 3.0;
  const auto at = [&](double tau, double chi) {
    return var * f.kernel_t().autocorrelation(tau) * f.kernel_x().autocorrelation(chi);
  };
  CHECK(corr.variance() == doctest::Approx(at(0, 0)));
  CHECK(corr.phi(0.5, 0.2) == doctest::Approx(at(0.5, 0.2)));
  CHECK(corr.phi(2.0, 0.0) == 0.0);
  CHECK(corr.phi(0.0, 1.0) == 0.0);
  // Psi(r) = int Phi(r, y) dy, R(x) = int Phi(r, x) dr
  CHECK(corr.psi(0.4) == doctest::Approx(simpson([&](double y) { return at(0.4, y); }, -1, 1)).epsilon(1e-6));
  CHECK(corr.r_of_x(0.3) == doctest::Approx(simpson([&](double r) { return at(r, 0.3); }, -2, 2)).epsilon(1e-6));
  CHECK(corr.sigma_two_sided() ==
        doctest::Approx(simpson([&](double r) { return at(r, 0.0); }, -2, 2)).epsilon(1e-6));
  CHECK(corr.sigma_one_sided() == doctest::Approx(0.5 * corr.sigma_two_sided()));
}

TEST_CASE("gaussian average matches oracle") {
  const KernelField f(Kernel1D::square(1.0), Kernel1D::square(1.0), MarkLaw::Rademacher, 1);
  const CorrelationModel corr(f);
  for (double sd : {0.05, 0.3, 1.0, 3.0}) {
    const double oracle = simpson(
        [&](double z) { return corr.phi(0.2, sd * z) * std::exp(-z * z / 2) / std::sqrt(2 * std::numbers::pi); },
        -10, 10, 400000);
    CHECK(corr.gaussian_average(0.2, sd) == doctest::Approx(oracle).epsilon(1e-5));
  }
}

TEST_CASE("empirical correlation agrees with closed form") {
  const KernelField f(Kernel1D::square(1.0), Kernel1D::square(1.0), MarkLaw::Rademacher, 9);
  const CorrelationModel corr(f);
  const std::vector<SpaceTimePoint> lags{{0.0, 0.0}, {0.3, 0.0}, {0.0, 0.5}, {0.4, 0.4}, {1.5, 0.0}, {0.0, 2.5}};
  const auto est = empirical_correlation(f, lags, 20000);
  for (std::size_t k = 0; k < lags.size(); ++k) {
    CAPTURE(k);
    const double exact = corr.phi(lags[k].t, lags[k].x);
    CHECK(std::abs(est[k].estimate - exact) <= 4 * est[k].std_error + 1e-12);
  }
}
