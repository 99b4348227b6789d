#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace kms {

struct QuadratureReport {
  double value = 0;
  double error = 0;
  std::optional<double> closed_form;
  long long samples = 0;
  std::vector<double> cutoffs;

  double relative_error() const {
    if (!closed_form) return std::numeric_limits<double>::quiet_NaN();
    return std::fabs(value - *closed_form) / std::fabs(*closed_form);
  }
};

// Adaptive 31-point Gauss-Kronrod; infinite limits are mapped to finite ones internally.
inline QuadratureReport integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                                  unsigned max_depth = 30) {
  QuadratureReport r;
  long long count = 0;
  auto g = [&](double x) {
    ++count;
    return f(x);
  };
  double err = 0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, max_depth, tol, &err);
  r.error = err * std::fabs(r.value);
  r.samples = count;
  return r;
}

}  // namespace kms
