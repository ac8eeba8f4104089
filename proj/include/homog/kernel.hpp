#pragma once

#include <string>

namespace homog {

enum class KernelShape { Square, Tent, Cosine, Holder };

/// One-dimensional bump supported on [0, width), the building block of the
/// separable shot-noise kernel K(s, y) = k_t(s) k_x(y).
///
///   square  1 on [0, w)                        (discontinuous)
///   tent    1 - |2s/w - 1|                     (Lipschitz)
///   cosine  sin^4(pi s / w)                    (C^3, used for time regularity)
///   holder  (1 - |2s/w - 1|)^theta             (Hoelder-theta at the edges)
class Kernel1D {
 public:
  static Kernel1D square(double width = 1.0);
  static Kernel1D tent(double width = 1.0);
  static Kernel1D cosine(double width = 1.0);
  static Kernel1D holder(double width, double theta);
  /// Parses "square", "tent", "cosine" or "holder"; theta only used by holder.
  static Kernel1D from_name(const std::string& name, double width, double theta = 0.5);

  double operator()(double s) const;
  /// First or second derivative; only defined for the cosine bump.
  double derivative(double s, int order) const;

  KernelShape shape() const { return shape_; }
  std::string name() const;
  double width() const { return width_; }
  double theta() const { return theta_; }
  double sup() const { return 1.0; }
  /// Closed-form integral of k over its support.
  double integral() const;
  /// A(tau) = int k(s) k(s + tau) ds; even in tau, supported on |tau| < width.
  double autocorrelation(double tau) const;
  /// Number of continuous derivatives (-1 when k itself jumps).
  int smoothness() const;
  /// Hoelder exponent of k (0 for the discontinuous square kernel).
  double holder_exponent() const;

 private:
  Kernel1D(KernelShape shape, double width, double theta);

  KernelShape shape_;
  double width_;
  double theta_;
};

}  // namespace homog
