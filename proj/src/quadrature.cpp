#include "homog/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "homog/error.hpp"

namespace homog::quad {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_floor) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 15, rel_tol * 0.1, &err, &l1);
  if (!std::isfinite(value) || err > rel_tol * std::max(std::abs(value), 1e-3 * l1) + abs_floor) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "], value " << value
        << ", error estimate " << err;
    throw QuadratureFailure(msg.str());
  }
  return value;
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::vector<double> breaks, double rel_tol, double abs_floor) {
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double lo = a;
  for (const double p : breaks) {
    if (p <= lo || p >= b) continue;
    total += integrate(f, lo, p, rel_tol, abs_floor);
    lo = p;
  }
  return total + integrate(f, lo, b, rel_tol, abs_floor);
}

double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          std::vector<double> breaks, double rel_tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> nodes{a};
  for (const double p : breaks) {
    if (p > nodes.back() && p < b) nodes.push_back(p);
  }
  nodes.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double err = 0.0;
    double l1 = 0.0;
    const double value = rule.integrate(f, nodes[i], nodes[i + 1], rel_tol, &err, &l1);
    if (!std::isfinite(value) || err > rel_tol * std::max(1.0, l1)) {
      throw QuadratureFailure("tanh-sinh did not converge on [" + std::to_string(nodes[i]) + ", " +
                              std::to_string(nodes[i + 1]) + "]");
    }
    total += value;
  }
  return total;
}

}  // namespace homog::quad
