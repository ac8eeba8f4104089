#include "homog/kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "homog/quadrature.hpp"

namespace homog {
namespace {

// sin^4(theta) = 3/8 - cos(2 theta)/2 + cos(4 theta)/8.
constexpr std::array<double, 3> kCosineSeries{3.0 / 8.0, -0.5, 1.0 / 8.0};

double integral_cos(double kappa, double phase, double length) {
  if (kappa == 0.0) return length * std::cos(phase);
  return (std::sin(kappa * length + phase) - std::sin(phase)) / kappa;
}

// Centered cubic B-spline on [-2, 2].
double cubic_bspline(double u) {
  const double a = std::abs(u);
  if (a < 1.0) return 2.0 / 3.0 - a * a + 0.5 * a * a * a;
  if (a < 2.0) {
    const double b = 2.0 - a;
    return b * b * b / 6.0;
  }
  return 0.0;
}

}  // namespace

Kernel1D::Kernel1D(KernelShape shape, double width, double theta)
    : shape_(shape), width_(width), theta_(theta) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("kernel width must be positive and finite");
  }
  if (shape == KernelShape::Holder && !(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("holder exponent must lie in (0, 1]");
  }
}

Kernel1D Kernel1D::square(double width) { return {KernelShape::Square, width, 0.0}; }
Kernel1D Kernel1D::tent(double width) { return {KernelShape::Tent, width, 1.0}; }
Kernel1D Kernel1D::cosine(double width) { return {KernelShape::Cosine, width, 1.0}; }
Kernel1D Kernel1D::holder(double width, double theta) {
  return {KernelShape::Holder, width, theta};
}

Kernel1D Kernel1D::from_name(const std::string& name, double width, double theta) {
  if (name == "square") return square(width);
  if (name == "tent") return tent(width);
  if (name == "cosine") return cosine(width);
  if (name == "holder") return holder(width, theta);
  throw std::invalid_argument("unknown kernel '" + name + "'");
}

std::string Kernel1D::name() const {
  switch (shape_) {
    case KernelShape::Square: return "square";
    case KernelShape::Tent: return "tent";
    case KernelShape::Cosine: return "cosine";
    case KernelShape::Holder: return "holder";
  }
  return "?";
}

double Kernel1D::operator()(double s) const {
  if (!(s >= 0.0 && s < width_)) return 0.0;
  switch (shape_) {
    case KernelShape::Square:
      return 1.0;
    case KernelShape::Tent:
      return 1.0 - std::abs(2.0 * s / width_ - 1.0);
    case KernelShape::Cosine: {
      const double v = std::sin(std::numbers::pi * s / width_);
      const double v2 = v * v;
      return v2 * v2;
    }
    case KernelShape::Holder:
      return std::pow(1.0 - std::abs(2.0 * s / width_ - 1.0), theta_);
  }
  return 0.0;
}

double Kernel1D::derivative(double s, int order) const {
  if (shape_ != KernelShape::Cosine) {
    throw std::logic_error("time derivatives need the cosine kernel");
  }
  if (!(s >= 0.0 && s < width_)) return 0.0;
  const double w = std::numbers::pi / width_;
  const double sn = std::sin(w * s);
  const double cs = std::cos(w * s);
  switch (order) {
    case 0: return sn * sn * sn * sn;
    case 1: return 4.0 * w * sn * sn * sn * cs;
    case 2: return w * w * (12.0 * sn * sn * cs * cs - 4.0 * sn * sn * sn * sn);
    default: throw std::invalid_argument("derivative order must be 0, 1 or 2");
  }
}

double Kernel1D::integral() const {
  switch (shape_) {
    case KernelShape::Square: return width_;
    case KernelShape::Tent: return 0.5 * width_;
    case KernelShape::Cosine: return 3.0 * width_ / 8.0;
    case KernelShape::Holder: return width_ / (theta_ + 1.0);
  }
  return 0.0;
}

double Kernel1D::autocorrelation(double tau) const {
  const double a = std::abs(tau);
  if (a >= width_) return 0.0;
  switch (shape_) {
    case KernelShape::Square:
      return width_ - a;
    case KernelShape::Tent:
      return 0.5 * width_ * cubic_bspline(2.0 * a / width_);
    case KernelShape::Cosine: {
      const double omega = 2.0 * std::numbers::pi / width_;
      const double length = width_ - a;
      double total = 0.0;
      for (std::size_t m = 0; m < kCosineSeries.size(); ++m) {
        for (std::size_t n = 0; n < kCosineSeries.size(); ++n) {
          const double c = 0.5 * kCosineSeries[m] * kCosineSeries[n];
          const double dm = static_cast<double>(m);
          const double dn = static_cast<double>(n);
          total += c * (integral_cos((dm - dn) * omega, -dn * omega * a, length) +
                        integral_cos((dm + dn) * omega, dn * omega * a, length));
        }
      }
      return total;
    }
    case KernelShape::Holder: {
      const auto f = [this, a](double s) { return (*this)(s) * (*this)(s + a); };
      return quad::integrate_singular(f, 0.0, width_ - a, {0.5 * width_ - a, 0.5 * width_}, 1e-10);
    }
  }
  return 0.0;
}

int Kernel1D::smoothness() const {
  switch (shape_) {
    case KernelShape::Square: return -1;
    case KernelShape::Tent: return 0;
    case KernelShape::Cosine: return 3;
    case KernelShape::Holder: return 0;
  }
  return -1;
}

double Kernel1D::holder_exponent() const {
  switch (shape_) {
    case KernelShape::Square: return 0.0;
    case KernelShape::Tent: return 1.0;
    case KernelShape::Cosine: return 1.0;
    case KernelShape::Holder: return theta_;
  }
  return 0.0;
}

}  // namespace homog
