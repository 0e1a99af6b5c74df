#pragma once

#include <cstddef>

#include "levychaos/functions.hpp"
#include "levychaos/polynomial.hpp"

namespace levychaos {

/// Numeric integral over the ordered simplex M_t^k = {0 <= t_1 < ... < t_k < t}.
struct SimplexIntegral {
  double value = 0.0;
  double error = 0.0;
  std::size_t dimension = 0;
};

/// Exact integral over M_t^k as a polynomial in t, by iterated antiderivatives
///   G_1(s) = \int_0^s g_1,  G_r(s) = \int_0^s g_r G_{r-1},  result G_k(t).
/// Throws UnsupportedError on a non-polynomial factor and CapacityError when
/// the result degree exceeds max_degree.
Polynomial integrate_exact(const IdentifiedIntegrand& integrand, int max_degree = 60);

/// Nested adaptive Gauss-Kronrod over M_t^k, splitting each level at the
/// breakpoints of piecewise-constant factors. The target accuracy is
/// tol * (1 + |value|); NumericError if the estimate misses it by more than 10x.
SimplexIntegral integrate_numeric(const IdentifiedIntegrand& integrand, double t,
                                  double tol = 1e-9, std::size_t max_dimension = 6);

/// Exact path when every factor is polynomial, numeric path otherwise.
double integrate_at(const IdentifiedIntegrand& integrand, double t, double tol = 1e-9,
                    std::size_t max_dimension = 6);

}  // namespace levychaos
