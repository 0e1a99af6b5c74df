#include "levychaos/chaos.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "levychaos/errors.hpp"
#include "levychaos/functions.hpp"
#include "levychaos/parallel.hpp"
#include "levychaos/simplex.hpp"
#include "numerics.hpp"

namespace levychaos {

// ---------------------------------------------------------------------------
// BlockWeights

double BlockWeights::jump(IndexMask block) {
  {
    const std::lock_guard lock(mutex_);
    if (const auto it = jump_.find(block); it != jump_.end()) return it->second;
  }
  const double v = nu_integrate(spec_->triplet().nu, spec_->block_generator(block));
  const std::lock_guard lock(mutex_);
  jump_.emplace(block, v);
  return v;
}

double BlockWeights::zero_value(IndexMask block) const {
  double v = 1.0;
  for (int i = 0; i < spec_->ground_size(); ++i) {
    if (block & (IndexMask{1} << i)) v *= spec_->generator(i).zero_value();
  }
  return v;
}

bool BlockWeights::jump_martingale_vanishes(IndexMask block) {
  {
    const std::lock_guard lock(mutex_);
    if (const auto it = vanishes_.find(block); it != vanishes_.end()) return it->second;
  }
  const auto alpha = spec_->block_generator(block);
  const auto& nu = spec_->triplet().nu;
  bool zero = false;
  if (const auto* atomic = nu.as_atomic()) {
    zero = std::all_of(atomic->atoms.begin(), atomic->atoms.end(),
                       [&](const Atom& a) { return alpha.jump(a.location) == 0.0; });
  } else {
    try {
      zero = nu_integrate(nu, product(alpha, alpha)) == 0.0;
    } catch (const Error&) {
      zero = false;
    }
  }
  const std::lock_guard lock(mutex_);
  vanishes_.emplace(block, zero);
  return zero;
}

bool ChaosTerm::deterministic() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [](const ChaosBlock& b) { return b.kind == IntegratorKind::deterministic; });
}

// ---------------------------------------------------------------------------
// Product expansion

ChaosExpansion expand_product(const ProblemSpec& spec, const ExpandOptions& options) {
  BlockWeights weights(spec);
  const double sigma2 = spec.triplet().sigma2;
  ChaosExpansion out;
  out.integrands = spec.integrands();

  for_each_rule(
      spec.orders(),
      [&](const IdentificationRule& rule) {
        std::vector<std::vector<ChaosBlock>> choices(rule.size());
        for (std::size_t r = 0; r < rule.size(); ++r) {
          const IndexMask s = rule.block_mask(r);
          const int size = std::popcount(s);
          auto& opts = choices[r];
          if (size == 1) {
            const double loading = weights.zero_value(s);
            if (sigma2 != 0.0 && loading != 0.0) {
              opts.push_back({BlockLabel::gaussian, IntegratorKind::martingale, s, loading});
            }
          }
          if (size == 2) {
            const double g = weights.gaussian(s);
            if (g != 0.0) opts.push_back({BlockLabel::gaussian, IntegratorKind::deterministic, s, g});
          }
          if (size >= 2) {
            const double j = weights.jump(s);
            if (j != 0.0) opts.push_back({BlockLabel::jump, IntegratorKind::deterministic, s, j});
          }
          if (!weights.jump_martingale_vanishes(s)) {
            opts.push_back({BlockLabel::jump, IntegratorKind::martingale, s, 1.0});
          }
          if (opts.empty()) return;
        }
        // Odometer over the per-block options, last block fastest.
        std::vector<std::size_t> pick(rule.size(), 0);
        while (true) {
          ChaosTerm term{rule, {}, 1.0};
          term.blocks.reserve(rule.size());
          for (std::size_t r = 0; r < rule.size(); ++r) {
            const auto& b = choices[r][pick[r]];
            term.blocks.push_back(b);
            if (b.kind == IntegratorKind::deterministic) term.coefficient *= b.weight;
          }
          out.terms.push_back(std::move(term));
          std::size_t r = rule.size();
          while (r > 0) {
            --r;
            if (++pick[r] < choices[r].size()) break;
            pick[r] = 0;
            if (r == 0) return;
          }
        }
      },
      EnumerationOptions{options.capacity, 1});
  return out;
}

Polynomial expectation_polynomial(const ChaosExpansion& expansion) {
  Polynomial total;
  for (const auto& term : expansion.terms) {
    if (!term.deterministic()) continue;
    total += integrate_exact(identify(expansion.integrands, term.rule)) * term.coefficient;
  }
  return total;
}

double expectation_at(const ChaosExpansion& expansion, double t, double tol) {
  double total = 0.0;
  for (const auto& term : expansion.terms) {
    if (!term.deterministic()) continue;
    total += term.coefficient * integrate_at(identify(expansion.integrands, term.rule), t, tol);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Moment formula

namespace {

// Compensated running sum of doubles or of polynomial coefficients.
template <typename Value>
class OrderedSum;

template <>
class OrderedSum<double> {
 public:
  OrderedSum& operator+=(double x) {
    sum_ += x;
    return *this;
  }
  [[nodiscard]] double value() const { return sum_.value(); }

 private:
  detail::CompensatedSum sum_;
};

template <>
class OrderedSum<Polynomial> {
 public:
  OrderedSum& operator+=(const Polynomial& p) {
    const auto c = p.coefficients();
    if (c.size() > sums_.size()) sums_.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) sums_[k] += c[k];
    return *this;
  }
  [[nodiscard]] Polynomial value() const {
    std::vector<double> c;
    c.reserve(sums_.size());
    for (const auto& s : sums_) c.push_back(s.value());
    return Polynomial(std::move(c));
  }

 private:
  std::vector<detail::CompensatedSum> sums_;
};

template <typename Value, typename Integrate>
Value factorised_moment(const ProblemSpec& spec, const MomentOptions& options,
                        Integrate integrate) {
  const auto rules = enumerate_rules(spec.orders(), EnumerationOptions{options.capacity, 2});
  BlockWeights weights(spec);
  std::vector<Value> parts(rules.size());
  parallel_for(rules.size(), resolve_thread_count(options.threads), [&](std::size_t i) {
    const auto& rule = rules[i];
    detail::CompensatedSum coefficient;
    for (const auto& labeling : moment_labelings(rule)) {
      double w = 1.0;
      for (std::size_t r = 0; r < rule.size() && w != 0.0; ++r) {
        const IndexMask s = rule.block_mask(r);
        w *= labeling.labels[r] == BlockLabel::gaussian ? weights.gaussian(s) : weights.jump(s);
      }
      coefficient += w;
    }
    if (coefficient.value() == 0.0) return;
    parts[i] = integrate(identify(spec.integrands(), rule)) * coefficient.value();
  });
  OrderedSum<Value> total;
  for (const auto& p : parts) total += p;
  return total.value();
}

template <typename Value, typename Integrate>
Value literal_moment(const ProblemSpec& spec, const MomentOptions& options, Integrate integrate) {
  const auto rules = enumerate_rules(spec.orders(), EnumerationOptions{options.capacity, 1});
  BlockWeights weights(spec);
  std::map<std::vector<std::vector<int>>, Value> integral_cache;
  OrderedSum<Value> total;
  const IndexMask all_sets = IndexMask{1} << spec.ground_size();
  for (IndexMask b = 0; b < all_sets; ++b) {
    for (const auto& rule : filter_moment(rules, b)) {
      double w = 1.0;
      for (std::size_t r = 0; r < rule.size(); ++r) {
        const IndexMask s = rule.block_mask(r);
        w *= (s & b) == s ? weights.gaussian(s) : weights.jump(s);
      }
      if (w == 0.0) continue;
      auto it = integral_cache.find(rule.blocks());
      if (it == integral_cache.end()) {
        it = integral_cache.emplace(rule.blocks(), integrate(identify(spec.integrands(), rule))).first;
      }
      total += it->second * w;
    }
  }
  return total.value();
}

}  // namespace

Polynomial moment_polynomial(const ProblemSpec& spec, const MomentOptions& options) {
  if (!spec.all_polynomial()) {
    throw UnsupportedError("a symbolic moment needs polynomial integrands; evaluate at fixed t");
  }
  auto exact = [](const IdentifiedIntegrand& f) { return integrate_exact(f); };
  return options.literal_b_sum ? literal_moment<Polynomial>(spec, options, exact)
                               : factorised_moment<Polynomial>(spec, options, exact);
}

double moment_at(const ProblemSpec& spec, double t, const MomentOptions& options) {
  if (spec.all_polynomial()) return moment_polynomial(spec, options)(t);
  auto numeric = [&](const IdentifiedIntegrand& f) { return integrate_at(f, t, options.tol); };
  return options.literal_b_sum ? literal_moment<double>(spec, options, numeric)
                               : factorised_moment<double>(spec, options, numeric);
}

// ---------------------------------------------------------------------------
// Integrability

IntegrabilityReport check_integrability(const ProblemSpec& spec) {
  IntegrabilityReport report;
  const int n = static_cast<int>(spec.factors().size());
  for (std::size_t j = 0; j < spec.integrands().size(); ++j) {
    double bound = 0.0;
    bool callable = false;
    for (const auto& term : spec.integrands()[j].terms()) {
      for (const auto& f : term.factors) {
        if (const auto* c = std::get_if<CallableTimeFunction>(&f.representation())) {
          callable = true;
          bound = std::max(bound, c->bound);
        }
      }
    }
    if (callable) {
      report.notes.push_back("F^" + std::to_string(j + 1) + " is bounded by the declared " +
                             std::to_string(bound) + " on [0, T], so it lies in L^" +
                             std::to_string(2 * n));
    } else {
      report.notes.push_back("F^" + std::to_string(j + 1) +
                             " is polynomial/piecewise constant, bounded on [0, T]");
    }
  }

  const int p_max = std::max(4, 2 * n);
  for (int i = 0; i < spec.ground_size(); ++i) {
    const auto& alpha = spec.generator(i);
    for (int p = 2; p <= p_max; ++p) {
      const auto f = check_moment_finiteness(spec.triplet().nu, alpha, p);
      if (f == Finiteness::finite) continue;
      report.warnings.push_back("generator " + std::to_string(i + 1) + " ('" + alpha.name() +
                                "'): L^" + std::to_string(p) + "(nu) membership " +
                                to_string(f));
      if (f == Finiteness::infinite) {
        report.generators = Finiteness::infinite;
      } else if (report.generators == Finiteness::finite) {
        report.generators = Finiteness::unknown;
      }
    }
  }
  return report;
}

}  // namespace levychaos
