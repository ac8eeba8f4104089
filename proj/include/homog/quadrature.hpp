#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

namespace homog::quad {

inline constexpr double kDefaultRelTol = 1e-8;

/// Adaptive Gauss-Kronrod (G7/K15) on [a, b]. Throws QuadratureFailure when the
/// error estimate stays above rel_tol * |I| + abs_floor.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = kDefaultRelTol, double abs_floor = 1e-300);

/// Same, split at the given interior break points (kinks of the integrand).
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::vector<double> breaks, double rel_tol = kDefaultRelTol,
                       double abs_floor = 1e-300);

/// Tanh-sinh on each piece between breaks; tolerates integrable endpoint
/// singularities such as s^theta.
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          std::vector<double> breaks, double rel_tol = kDefaultRelTol);

}  // namespace homog::quad
