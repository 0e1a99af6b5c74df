#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levychaos/errors.hpp"

namespace levychaos::detail {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

/// Adaptive Gauss-Kronrod (15-point Kronrod extension of 7-point Gauss-Legendre)
/// on [a, b]. Stops when the error estimate drops below rel_tol * L1 norm.
template <typename F>
QuadratureResult adaptive_quadrature(F&& f, double a, double b, double rel_tol,
                                     unsigned max_depth = 18) {
  if (a == b) return {};
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, max_depth, rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw NumericError("quadrature produced a non-finite value");
  return {value, error, l1};
}

}  // namespace levychaos::detail
