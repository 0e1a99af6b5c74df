#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "levychaos/measures.hpp"
#include "levychaos/partitions.hpp"
#include "levychaos/polynomial.hpp"
#include "levychaos/problem.hpp"

namespace levychaos {

/// Memoised block weights of a problem: nu(alpha_(S)) and sigma^2 alpha_(S)(0).
/// Thread-safe; entries are computed on first use so missing moment-table
/// entries only matter for blocks that are actually needed.
class BlockWeights {
 public:
  explicit BlockWeights(const ProblemSpec& spec) : spec_(&spec) {}

  /// nu(alpha_(S)).
  double jump(IndexMask block);
  /// prod_{i in S} alpha_i(0).
  double zero_value(IndexMask block) const;
  /// sigma^2 alpha_(S)(0).
  double gaussian(IndexMask block) const { return spec_->triplet().sigma2 * zero_value(block); }
  /// True when X^{alpha_(S) restricted to jumps} is known to vanish.
  bool jump_martingale_vanishes(IndexMask block);

 private:
  const ProblemSpec* spec_;
  std::mutex mutex_;
  std::map<IndexMask, double> jump_;
  std::map<IndexMask, bool> vanishes_;
};

// ---------------------------------------------------------------------------
// Product expansion

/// i = 0 (integration against dt with a deterministic weight) or
/// i = 1 (integration against a martingale).
enum class IntegratorKind { deterministic, martingale };

struct ChaosBlock {
  BlockLabel label = BlockLabel::jump;
  IntegratorKind kind = IntegratorKind::martingale;
  IndexMask indices = 0;
  /// deterministic: nu(alpha_(S)) (jump) or sigma^2 alpha_(S)(0) (Gaussian pair);
  /// Gaussian martingale: alpha_(S)(0), the loading on dW^sigma;
  /// jump martingale: 1, the integrator being X^{1_{R\{0}} alpha_(S)}.
  double weight = 1.0;
};

/// One summand of the product formula: an iterated integral over M_t^{|s|} of
/// the identified integrand against dY_1 ... dY_k.
struct ChaosTerm {
  IdentificationRule rule;
  std::vector<ChaosBlock> blocks;
  /// Product of the weights of the deterministic blocks.
  double coefficient = 1.0;

  [[nodiscard]] bool deterministic() const;
};

struct ChaosExpansion {
  std::vector<ChaosTerm> terms;
  std::vector<TimeIntegrand> integrands;
};

struct ExpandOptions {
  int capacity = 8;
};

/// Symbolic product expansion: all (B, rule, i) combinations with a nonzero
/// integrator. Per rule, blocks range over: singleton -> Gaussian martingale or
/// jump martingale; pair -> Gaussian dt, jump dt or jump martingale; larger ->
/// jump dt or jump martingale. Terms whose integrator is known to vanish are
/// dropped. Order: rule enumeration order, then these options with the first
/// block most significant.
ChaosExpansion expand_product(const ProblemSpec& spec, const ExpandOptions& options = {});

/// Expectation of the expansion: the sum of its fully deterministic terms.
Polynomial expectation_polynomial(const ChaosExpansion& expansion);
double expectation_at(const ChaosExpansion& expansion, double t, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Moment formula

struct MomentOptions {
  int capacity = 10;
  /// Evaluate the literal double sum over B and Pi_{=2,>=2}(B, B^c) instead of
  /// the per-rule labelling factorisation. Kept as a test oracle.
  bool literal_b_sum = false;
  double tol = 1e-9;
  /// 0 = resolve_thread_count().
  unsigned threads = 0;
};

/// E[prod_j J_{m_j}(F^j)_t] as a polynomial in t. Needs polynomial integrands.
Polynomial moment_polynomial(const ProblemSpec& spec, const MomentOptions& options = {});

/// E[prod_j J_{m_j}(F^j)_t] at a fixed t; numeric simplex integration for
/// non-polynomial integrands.
double moment_at(const ProblemSpec& spec, double t, const MomentOptions& options = {});

// ---------------------------------------------------------------------------
// Integrability

struct IntegrabilityReport {
  /// Every F^j is bounded on [0, T], hence in L^{2N}.
  bool integrands_bounded = true;
  /// Aggregate of the L^p(mu) checks on every generator, p = 2..max(4, 2N).
  Finiteness generators = Finiteness::finite;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  [[nodiscard]] bool satisfied() const {
    return integrands_bounded && generators == Finiteness::finite;
  }
};

IntegrabilityReport check_integrability(const ProblemSpec& spec);

}  // namespace levychaos
