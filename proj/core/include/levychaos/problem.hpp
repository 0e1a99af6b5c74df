#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "levychaos/functions.hpp"
#include "levychaos/generator.hpp"
#include "levychaos/measures.hpp"
#include "levychaos/partitions.hpp"

namespace levychaos {

/// One elementary iterated integral J_m^{alpha_1..alpha_m}(F): its generators
/// (innermost first) and its time integrand of order m.
struct Factor {
  std::vector<GeneratorFunction> generators;
  TimeIntegrand integrand;
};

/// The product prod_j J_{m_j}(F^j) driven by a Lévy process on [0, horizon].
///
/// Generators are addressed by global index: factor j owns indices
/// m_1 + ... + m_{j-1} .. m_1 + ... + m_j - 1 (zero-based).
class ProblemSpec {
 public:
  ProblemSpec(LevyTriplet triplet, std::vector<Factor> factors, double horizon);

  [[nodiscard]] const LevyTriplet& triplet() const noexcept { return triplet_; }
  [[nodiscard]] const std::vector<Factor>& factors() const noexcept { return factors_; }
  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] const std::vector<int>& orders() const noexcept { return orders_; }
  [[nodiscard]] int ground_size() const noexcept { return ground_size_; }
  [[nodiscard]] const std::vector<TimeIntegrand>& integrands() const noexcept { return integrands_; }
  [[nodiscard]] const GeneratorFunction& generator(int global_index) const;
  /// alpha_(S) = prod_{i in S} alpha_i.
  [[nodiscard]] GeneratorFunction block_generator(IndexMask indices) const;
  [[nodiscard]] bool all_polynomial() const;

 private:
  LevyTriplet triplet_;
  std::vector<Factor> factors_;
  double horizon_;
  std::vector<int> orders_;
  std::vector<TimeIntegrand> integrands_;
  std::vector<std::pair<std::size_t, std::size_t>> by_index_;  // (factor, position)
  int ground_size_ = 0;
};

}  // namespace levychaos
