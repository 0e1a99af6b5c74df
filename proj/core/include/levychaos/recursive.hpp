#pragma once

#include <vector>

#include "levychaos/measures.hpp"
#include "levychaos/polynomial.hpp"
#include "levychaos/problem.hpp"

namespace levychaos {

/// E[prod_j J_{m_j}(F^j)_t] by the expectation recursion on the depth vector
/// d = (d_1, ..., d_N), where factor j currently reads as the inner integral
/// of its first d_j generator/time-function pairs:
///
///   M(d)(t) = sum_{S active, |S| >= 2} \int_0^t M(d - e_S)(s) prod_{j in S} F^j_{d_j}(s) w(S) ds,
///   w(S)    = nu(prod_{j in S} alpha^j_{d_j}) + 1_{|S| = 2} sigma^2 prod_{j in S} alpha^j_{d_j}(0),
///
/// with M(0) = 1 and M(d) = 0 whenever exactly one depth is positive.
/// Linear combinations of tensor integrands are expanded term by term.
/// Needs polynomial integrands.
Polynomial recursive_product_moment(const ProblemSpec& spec, int capacity = 10);

/// Central moments E[(X_t - E X_t)^k], k = 0..N, as polynomials in t:
///   E[(X^{(1)}_t)^k] = sum_{i=2}^k C(k,i) (nu(p_i) + sigma^2 1_{i=2}) \int_0^t E[(X^{(1)}_s)^{k-i}] ds.
/// Entry k of the result is order k.
std::vector<Polynomial> levy_central_moments(const LevyTriplet& triplet, int max_order);

/// Raw moments E[X_t^k], k = 0..N, recombined binomially from the central
/// moments with E[X_t] = (gamma + nu(1_{|x|>1} x)) t.
std::vector<Polynomial> levy_raw_moments(const LevyTriplet& triplet, int max_order);

/// E[(X^{(n)}_t)^N] for the n-th Teugels martingale: the central recursion on
/// the image triplet (0, sigma^2 1_{n=1}, nu o p_n^{-1}), whose monomial
/// integrals are nu(p_{n i}).
Polynomial teugels_power_moment(const LevyTriplet& triplet, int n, int order);

/// nu(1_{|x|>1} x), the mean contribution of the large jumps.
double large_jump_mean(const LevyMeasure& nu);

}  // namespace levychaos
