#include "levychaos/problem.hpp"

#include <cmath>
#include <string>

#include "levychaos/errors.hpp"

namespace levychaos {

ProblemSpec::ProblemSpec(LevyTriplet triplet, std::vector<Factor> factors, double horizon)
    : triplet_(std::move(triplet)), factors_(std::move(factors)), horizon_(horizon) {
  if (factors_.empty()) throw ConfigError("a problem needs at least one factor");
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) throw ConfigError("horizon must be > 0");
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    const auto& f = factors_[j];
    const int m = static_cast<int>(f.generators.size());
    if (m < 1) throw ConfigError("factor " + std::to_string(j + 1) + " has no generators");
    if (f.integrand.order() != m) {
      throw ConfigError("factor " + std::to_string(j + 1) + " has " + std::to_string(m) +
                        " generators but an integrand of order " +
                        std::to_string(f.integrand.order()));
    }
    orders_.push_back(m);
    integrands_.push_back(f.integrand);
    ground_size_ += m;
  }
  if (ground_size_ > 32) throw CapacityError("more than 32 generators in total");
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    for (std::size_t p = 0; p < factors_[j].generators.size(); ++p) by_index_.emplace_back(j, p);
  }
}

const GeneratorFunction& ProblemSpec::generator(int global_index) const {
  if (global_index < 0 || global_index >= ground_size_) {
    throw ConfigError("generator index out of range");
  }
  const auto [j, p] = by_index_[static_cast<std::size_t>(global_index)];
  return factors_[j].generators[p];
}

GeneratorFunction ProblemSpec::block_generator(IndexMask indices) const {
  std::vector<GeneratorFunction> parts;
  for (int i = 0; i < ground_size_; ++i) {
    if (indices & (IndexMask{1} << i)) parts.push_back(generator(i));
  }
  return product(parts);
}

bool ProblemSpec::all_polynomial() const {
  for (const auto& f : integrands_) {
    if (!f.all_polynomial()) return false;
  }
  return true;
}

}  // namespace levychaos
