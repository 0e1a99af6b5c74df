#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "levychaos/chaos.hpp"
#include "levychaos/errors.hpp"
#include "levychaos/recursive.hpp"
#include "levychaos/simplex.hpp"
#include "spec_builders.hpp"

namespace levychaos {
namespace {

using testing::atomic_triplet;
using testing::brownian_triplet;
using testing::constant_spec;

double double_factorial(int n) {
  double v = 1.0;
  for (int k = n; k > 1; k -= 2) v *= k;
  return v;
}

TEST(Chaos, ExampleInstanceIsNineTSquared) {
  const auto spec = constant_spec({1, 1, 2}, atomic_triplet(1.0, {{1.0, 2.0}}));
  const Polynomial p = moment_polynomial(spec);
  EXPECT_LT(max_coefficient_distance(p, Polynomial::monomial(9.0, 2)), 1e-12);
}

TEST(Chaos, ExampleInstanceMatchesLiteralBSum) {
  const auto spec = constant_spec({1, 1, 2}, atomic_triplet(1.0, {{1.0, 2.0}}));
  MomentOptions literal;
  literal.literal_b_sum = true;
  EXPECT_EQ(moment_polynomial(spec, literal), moment_polynomial(spec));
}

TEST(Chaos, ExampleCoefficientsAssembledPerPairing) {
  // alpha_i = distinct monomials so that each block weight is identifiable.
  const LevyTriplet tri = atomic_triplet(0.7, {{1.3, 0.4}, {-0.6, 1.1}});
  std::vector<GeneratorFunction> a;
  for (int i = 0; i < 4; ++i) a.push_back(GeneratorFunction::monomial(0.5 + 0.25 * i, 1.0 + 0.1 * i, i + 1));
  std::vector<Factor> factors{
      {{a[0]}, TimeIntegrand::constant(1)},
      {{a[1]}, TimeIntegrand::constant(1)},
      {{a[2], a[3]}, TimeIntegrand::constant(2)},
  };
  const ProblemSpec spec(tri, factors, 1.0);
  auto mu = [&](int i, int j) { return mu_integrate(tri, product(a[i], a[j])); };
  // ({1,3},{2,4}) and ({2,3},{1,4}): each block a pair; both labelings per pair.
  const double c1 = mu(0, 2) * mu(1, 3);
  const double c2 = mu(1, 2) * mu(0, 3);
  const Polynomial expected = Polynomial::monomial(0.5 * (c1 + c2), 2);
  EXPECT_LT(relative_coefficient_distance(moment_polynomial(spec), expected), 1e-13);
}

TEST(Chaos, StructuralZeroForDominantFactor) {
  const auto spec = constant_spec({1, 1, 3}, atomic_triplet(1.0, {{1.0, 2.0}}));
  EXPECT_TRUE(moment_polynomial(spec).is_zero());
}

TEST(Chaos, SingleFactorHasZeroMean) {
  for (int m = 1; m <= 4; ++m) {
    const auto spec = constant_spec({m}, atomic_triplet(1.0, {{1.0, 2.0}}));
    EXPECT_TRUE(moment_polynomial(spec).is_zero()) << m;
  }
}

TEST(Chaos, TwoFactorsGiveBracket) {
  const LevyTriplet tri = atomic_triplet(0.5, {{2.0, 0.3}, {-1.0, 0.8}});
  const auto a = GeneratorFunction::monomial(1.5, 1.0, 2);
  const auto b = GeneratorFunction::monomial(-2.0, 0.5, 1);
  const ProblemSpec spec(tri, {{{a}, TimeIntegrand::constant(1)}, {{b}, TimeIntegrand::constant(1)}}, 1.0);
  const double bracket = mu_integrate(tri, product(a, b));
  EXPECT_LT(relative_coefficient_distance(moment_polynomial(spec), Polynomial::monomial(bracket, 1)), 1e-14);
}

TEST(Chaos, IsserlisForGaussianOnly) {
  const double sigma2 = 1.7;
  for (int n = 1; n <= 8; ++n) {
    const auto spec = constant_spec(std::vector<int>(static_cast<std::size_t>(n), 1), brownian_triplet(sigma2));
    const Polynomial p = moment_polynomial(spec);
    if (n % 2 == 1) {
      EXPECT_TRUE(p.is_zero()) << n;
    } else {
      const Polynomial expected =
          Polynomial::monomial(double_factorial(n - 1) * std::pow(sigma2, n / 2), static_cast<std::size_t>(n / 2));
      EXPECT_LT(relative_coefficient_distance(p, expected), 1e-12) << n;
    }
  }
}

TEST(Chaos, IsometryMatchesSimplexIntegral) {
  const LevyTriplet tri = atomic_triplet(0.8, {{1.0, 0.5}, {-0.4, 1.2}});
  for (int m = 1; m <= 3; ++m) {
    std::vector<GeneratorFunction> a;
    std::vector<GeneratorFunction> b;
    std::vector<UnivariateTimeFunction> f;
    std::vector<UnivariateTimeFunction> g;
    for (int i = 0; i < m; ++i) {
      a.push_back(GeneratorFunction::monomial(1.0 + i, 0.5, i + 1));
      b.push_back(GeneratorFunction::monomial(0.5 - i, 1.5, 1));
      f.emplace_back(Polynomial{1.0, 0.5 * i});
      g.emplace_back(Polynomial{0.3, 0.0, 1.0});
    }
    const ProblemSpec spec(tri, {{a, TimeIntegrand::tensor(f)}, {b, TimeIntegrand::tensor(g)}}, 1.0);
    double weight = 1.0;
    std::vector<std::vector<UnivariateTimeFunction>> vars;
    for (int i = 0; i < m; ++i) {
      weight *= mu_integrate(tri, product(a[i], b[i]));
      vars.push_back({f[i], g[i]});
    }
    const IdentifiedIntegrand direct(static_cast<std::size_t>(m), {{weight, vars}});
    EXPECT_LT(relative_coefficient_distance(moment_polynomial(spec), integrate_exact(direct)), 1e-10) << m;
  }
}

TEST(Chaos, ExpandSingleFactorIsLevyItoSplit) {
  const auto spec = constant_spec({1}, atomic_triplet(1.0, {{1.0, 2.0}}), 1.0, 2.0);
  const auto e = expand_product(spec);
  ASSERT_EQ(e.terms.size(), 2u);
  EXPECT_EQ(e.terms[0].blocks[0].label, BlockLabel::gaussian);
  EXPECT_EQ(e.terms[0].blocks[0].kind, IntegratorKind::martingale);
  EXPECT_EQ(e.terms[1].blocks[0].label, BlockLabel::jump);
  EXPECT_EQ(e.terms[1].blocks[0].kind, IntegratorKind::martingale);
  EXPECT_TRUE(expectation_polynomial(e).is_zero());
}

TEST(Chaos, ExpandTwoFactorsContainsIteratedPart) {
  const auto spec = constant_spec({1, 1}, atomic_triplet(1.0, {{1.0, 2.0}}));
  const auto e = expand_product(spec);
  bool found = false;
  for (const auto& term : e.terms) {
    if (term.rule.size() == 2 && term.rule.blocks()[0] == std::vector<int>{0} &&
        term.blocks[0].kind == IntegratorKind::martingale && term.blocks[1].kind == IntegratorKind::martingale) {
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_LT(relative_coefficient_distance(expectation_polynomial(e), Polynomial::monomial(3.0, 1)), 1e-14);
}

TEST(Chaos, ExpandRespectsIntegratorRules) {
  const auto spec = constant_spec({2, 1, 1}, atomic_triplet(0.5, {{1.0, 1.0}, {-2.0, 0.5}}));
  for (const auto& term : expand_product(spec).terms) {
    for (const auto& block : term.blocks) {
      const int size = std::popcount(block.indices);
      if (block.kind == IntegratorKind::deterministic) {
        EXPECT_GE(size, 2);
        if (block.label == BlockLabel::gaussian) EXPECT_EQ(size, 2);
      } else if (block.label == BlockLabel::gaussian) {
        EXPECT_EQ(size, 1);
      }
    }
  }
}

TEST(Chaos, ZeroPruningDropsVanishingBlocks) {
  // alpha(0) = 0 everywhere: no Gaussian blocks survive.
  const auto a = GeneratorFunction::monomial(0.0, 1.0, 1);
  const ProblemSpec spec(atomic_triplet(1.0, {{1.0, 1.0}}),
                         {{{a}, TimeIntegrand::constant(1)}, {{a}, TimeIntegrand::constant(1)}}, 1.0);
  for (const auto& term : expand_product(spec).terms) {
    for (const auto& block : term.blocks) EXPECT_EQ(block.label, BlockLabel::jump);
  }
}

TEST(Chaos, RandomSpecsAgreeAcrossEngines) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto spec = testing::random_spec(rng);
    const Polynomial formula = moment_polynomial(spec);
    const Polynomial recursion = recursive_product_moment(spec);
    const Polynomial expansion = expectation_polynomial(expand_product(spec));
    EXPECT_LT(relative_coefficient_distance(formula, recursion), 1e-10) << trial;
    EXPECT_LT(relative_coefficient_distance(formula, expansion), 1e-10) << trial;
  }
}

TEST(Chaos, LiteralBSumMatchesFactorisation) {
  std::mt19937_64 rng(11);
  MomentOptions literal;
  literal.literal_b_sum = true;
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = testing::random_spec(rng);
    EXPECT_LT(relative_coefficient_distance(moment_polynomial(spec), moment_polynomial(spec, literal)), 1e-12);
  }
}

TEST(Chaos, MomentIsPermutationInvariant) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = testing::random_spec(rng);
    auto factors = spec.factors();
    std::reverse(factors.begin(), factors.end());
    const ProblemSpec reversed(spec.triplet(), factors, spec.horizon());
    EXPECT_LT(relative_coefficient_distance(moment_polynomial(spec), moment_polynomial(reversed)), 1e-12);
  }
}

TEST(Chaos, MomentIsLinearInIntegrand) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = testing::random_spec(rng);
    auto factors = spec.factors();
    factors[0].integrand *= 2.5;
    const ProblemSpec scaled(spec.triplet(), factors, spec.horizon());
    EXPECT_LT(relative_coefficient_distance(moment_polynomial(scaled), 2.5 * moment_polynomial(spec)), 1e-12);
  }
}

TEST(Chaos, MomentIsIndependentOfThreadCount) {
  std::mt19937_64 rng(19);
  const auto spec = testing::random_spec(rng, {4, 6, 3, 2, 2});
  MomentOptions one;
  one.threads = 1;
  MomentOptions four;
  four.threads = 4;
  EXPECT_EQ(moment_polynomial(spec, one), moment_polynomial(spec, four));
}

TEST(Chaos, MomentAtAgreesWithPolynomialAndNumericPath) {
  const auto spec = constant_spec({1, 1, 2}, atomic_triplet(1.0, {{1.0, 2.0}}), 1.0, 2.0);
  EXPECT_NEAR(moment_at(spec, 1.5), 9.0 * 2.25, 1e-12);

  CallableTimeFunction one{[](double) { return 1.0; }, 1.0};
  std::vector<Factor> factors = spec.factors();
  factors[0].integrand = TimeIntegrand::tensor({UnivariateTimeFunction(one)});
  const ProblemSpec numeric(spec.triplet(), factors, 2.0);
  EXPECT_NEAR(moment_at(numeric, 1.5), 9.0 * 2.25, 1e-8);
  EXPECT_THROW((void)moment_polynomial(numeric), UnsupportedError);
}

TEST(Chaos, CapacityIsEnforced) {
  const auto spec = constant_spec({3, 3, 3}, atomic_triplet(1.0, {{1.0, 2.0}}));
  ExpandOptions small;
  EXPECT_THROW((void)expand_product(spec, small), CapacityError);
  MomentOptions tiny;
  tiny.capacity = 6;
  EXPECT_THROW((void)moment_polynomial(spec, tiny), CapacityError);
}

TEST(Chaos, IntegrabilityReport) {
  const auto spec = constant_spec({1, 1}, atomic_triplet(1.0, {{1.0, 2.0}}));
  EXPECT_TRUE(check_integrability(spec).satisfied());

  MomentTableMeasure table;
  table.values = {{2, 1.0}, {4, 1.0}};
  const LevyTriplet tri(0.0, 0.0, LevyMeasure(table));
  const ProblemSpec tabled(tri, {{{teugels(2)}, TimeIntegrand::constant(1)}, {{teugels(2)}, TimeIntegrand::constant(1)}}, 1.0);
  const auto report = check_integrability(tabled);
  EXPECT_EQ(report.generators, Finiteness::unknown);
  EXPECT_FALSE(report.warnings.empty());

  CallableTimeFunction bounded{[](double t) { return std::sin(t); }, 1.0};
  std::vector<Factor> factors = spec.factors();
  factors[0].integrand = TimeIntegrand::tensor({UnivariateTimeFunction(bounded)});
  const auto callable = check_integrability(ProblemSpec(spec.triplet(), factors, 1.0));
  EXPECT_TRUE(callable.satisfied());
  EXPECT_FALSE(callable.notes.empty());
}

}  // namespace
}  // namespace levychaos
