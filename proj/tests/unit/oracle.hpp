#pragma once

#include <cmath>
#include <cstddef>

// Composite Simpson rule, kept independent of the library's quadrature.
template <class F>
double simpson(F&& f, double a, double b, std::size_t n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return s * h / 3.0;
}
