#include "levychaos/recursive.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "levychaos/errors.hpp"

namespace levychaos {

namespace {

class ProductMomentRecursion {
 public:
  ProductMomentRecursion(const ProblemSpec& spec, std::vector<std::vector<Polynomial>> time_factors)
      : spec_(spec), time_factors_(std::move(time_factors)) {
    const auto& orders = spec.orders();
    offsets_.assign(orders.size() + 1, 0);
    strides_.assign(orders.size(), 1);
    std::size_t states = 1;
    for (std::size_t j = 0; j < orders.size(); ++j) {
      offsets_[j + 1] = offsets_[j] + orders[j];
      strides_[j] = states;
      states *= static_cast<std::size_t>(orders[j] + 1);
    }
    memo_.resize(states);
  }

  Polynomial solve() {
    std::vector<int> depth(spec_.orders());
    return value(depth);
  }

 private:
  std::size_t key(const std::vector<int>& d) const {
    std::size_t k = 0;
    for (std::size_t j = 0; j < d.size(); ++j) k += static_cast<std::size_t>(d[j]) * strides_[j];
    return k;
  }

  // Bracket weight of the top generators of the factors in `subset`.
  double weight(std::uint32_t subset, const std::vector<int>& d) {
    IndexMask block = 0;
    double zero = 1.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (subset & (1u << j)) {
        const int idx = offsets_[j] + d[j] - 1;
        block |= IndexMask{1} << idx;
        zero *= spec_.generator(idx).zero_value();
      }
    }
    auto it = jump_weight_.find(block);
    if (it == jump_weight_.end()) {
      it = jump_weight_.emplace(block, nu_integrate(spec_.triplet().nu, spec_.block_generator(block)))
               .first;
    }
    double w = it->second;
    if (std::popcount(subset) == 2) w += spec_.triplet().sigma2 * zero;
    return w;
  }

  const Polynomial& value(std::vector<int>& d) {
    auto& slot = memo_[key(d)];
    if (slot) return *slot;

    std::uint32_t active = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (d[j] > 0) active |= 1u << j;
    }
    Polynomial result;
    if (active == 0) {
      result = Polynomial::constant(1.0);
    } else if (std::popcount(active) >= 2) {
      // Subsets of the active factors with at least two members.
      for (std::uint32_t s = active; s != 0; s = (s - 1) & active) {
        if (std::popcount(s) < 2) continue;
        const double w = weight(s, d);
        if (w == 0.0) continue;
        Polynomial integrand = Polynomial::constant(w);
        for (std::size_t j = 0; j < d.size(); ++j) {
          if (s & (1u << j)) integrand *= time_factors_[j][static_cast<std::size_t>(d[j] - 1)];
        }
        for (std::size_t j = 0; j < d.size(); ++j) {
          if (s & (1u << j)) --d[j];
        }
        integrand *= value(d);
        for (std::size_t j = 0; j < d.size(); ++j) {
          if (s & (1u << j)) ++d[j];
        }
        result += integrand.antiderivative();
      }
    }
    // A single active factor is a martingale started at 0: expectation 0.
    slot = std::move(result);
    return *slot;
  }

  const ProblemSpec& spec_;
  std::vector<std::vector<Polynomial>> time_factors_;
  std::vector<int> offsets_;
  std::vector<std::size_t> strides_;
  std::vector<std::optional<Polynomial>> memo_;
  std::map<IndexMask, double> jump_weight_;
};

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// E[Y_t^k] for a centred Lévy martingale Y with bracket weights c(i).
std::vector<Polynomial> central_moment_table(const std::function<double(int)>& bracket_weight,
                                             int max_order) {
  if (max_order < 0) throw ConfigError("moment order must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(max_order) + 1, 0.0);
  for (int i = 2; i <= max_order; ++i) c[static_cast<std::size_t>(i)] = bracket_weight(i);
  std::vector<Polynomial> table(static_cast<std::size_t>(max_order) + 1);
  table[0] = Polynomial::constant(1.0);
  for (int k = 1; k <= max_order; ++k) {
    Polynomial acc;
    for (int i = 2; i <= k; ++i) {
      const double w = static_cast<double>(binomial(k, i)) * c[static_cast<std::size_t>(i)];
      if (w == 0.0) continue;
      acc += table[static_cast<std::size_t>(k - i)].antiderivative() * w;
    }
    table[static_cast<std::size_t>(k)] = std::move(acc);
  }
  return table;
}

}  // namespace

Polynomial recursive_product_moment(const ProblemSpec& spec, int capacity) {
  if (spec.ground_size() > capacity) {
    throw CapacityError("ground set size " + std::to_string(spec.ground_size()) +
                        " exceeds capacity " + std::to_string(capacity));
  }
  if (spec.factors().size() > 20) throw CapacityError("too many factors for the recursion");
  if (!spec.all_polynomial()) {
    throw UnsupportedError("the recursive engine needs polynomial integrands");
  }
  const auto& integrands = spec.integrands();
  for (const auto& f : integrands) {
    if (f.terms().empty()) return {};
  }

  Polynomial total;
  std::vector<std::size_t> choice(integrands.size(), 0);
  while (true) {
    double coefficient = 1.0;
    std::vector<std::vector<Polynomial>> factors(integrands.size());
    for (std::size_t j = 0; j < integrands.size(); ++j) {
      const auto& term = integrands[j].terms()[choice[j]];
      coefficient *= term.coefficient;
      for (const auto& f : term.factors) factors[j].push_back(*f.as_polynomial());
    }
    if (coefficient != 0.0) {
      ProductMomentRecursion recursion(spec, std::move(factors));
      total += recursion.solve() * coefficient;
    }
    std::size_t j = 0;
    for (; j < integrands.size(); ++j) {
      if (++choice[j] < integrands[j].terms().size()) break;
      choice[j] = 0;
    }
    if (j == integrands.size()) break;
  }
  return total;
}

std::vector<Polynomial> levy_central_moments(const LevyTriplet& triplet, int max_order) {
  return central_moment_table(
      [&](int i) { return nu_monomial(triplet.nu, i) + (i == 2 ? triplet.sigma2 : 0.0); },
      max_order);
}

double large_jump_mean(const LevyMeasure& nu) {
  if (const auto* table = nu.as_moment_table()) {
    if (!table->large_jump_mean) {
      throw MissingMomentError("moment table lacks nu(1_{|x|>1} x) needed for the mean");
    }
    return *table->large_jump_mean;
  }
  return nu_integrate(nu, [](double x) { return std::abs(x) > 1.0 ? x : 0.0; });
}

std::vector<Polynomial> levy_raw_moments(const LevyTriplet& triplet, int max_order) {
  const auto central = levy_central_moments(triplet, max_order);
  const double mean_rate = triplet.gamma + large_jump_mean(triplet.nu);
  std::vector<Polynomial> raw(central.size());
  for (int k = 0; k <= max_order; ++k) {
    Polynomial acc;
    for (int i = 0; i <= k; ++i) {
      // (mean_rate t)^{k-i}
      const auto mean_power = Polynomial::monomial(std::pow(mean_rate, k - i),
                                                   static_cast<std::size_t>(k - i));
      acc += central[static_cast<std::size_t>(i)] * mean_power *
             static_cast<double>(binomial(k, i));
    }
    raw[static_cast<std::size_t>(k)] = std::move(acc);
  }
  return raw;
}

Polynomial teugels_power_moment(const LevyTriplet& triplet, int n, int order) {
  if (n < 1) throw ConfigError("Teugels index must be >= 1");
  const auto table = central_moment_table(
      [&](int i) {
        return nu_monomial(triplet.nu, n * i) + (n == 1 && i == 2 ? triplet.sigma2 : 0.0);
      },
      order);
  return table[static_cast<std::size_t>(order)];
}

}  // namespace levychaos
