#include <gtest/gtest.h>

#include <cmath>

#include "levychaos/chaos.hpp"
#include "levychaos/errors.hpp"
#include "levychaos/montecarlo.hpp"
#include "spec_builders.hpp"

namespace levychaos {
namespace {

using testing::atomic_triplet;
using testing::brownian_triplet;
using testing::constant_spec;

SimulationConfig small_config(std::size_t paths, std::size_t steps = 64) {
  SimulationConfig c;
  c.n_paths = paths;
  c.n_grid_steps = steps;
  c.seed = 12345;
  c.threads = 2;
  return c;
}

TEST(CounterRng, StreamsAreReproducibleAndDistinct) {
  CounterRng a(1, 7);
  CounterRng b(1, 7);
  CounterRng c(1, 8);
  CounterRng d(2, 7);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(x, d());
  }
}

TEST(PathSampler, GridContainsUniformPointsAndJumps) {
  const PathSampler sampler(atomic_triplet(1.0, {{1.0, 5.0}, {-2.0, 3.0}}), 2.0, 16);
  const auto path = sampler.sample(9, 0);
  std::size_t base = 0;
  std::size_t jumps = 0;
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    if (i > 0) EXPECT_LE(path.points[i - 1].time, path.points[i].time);
    if (path.points[i].base_index >= 0) ++base;
    if (path.points[i].atom >= 0) ++jumps;
  }
  EXPECT_EQ(base, 17u);
  EXPECT_GT(jumps, 0u);
  EXPECT_EQ(path.points.front().time, 0.0);
  EXPECT_EQ(path.points.front().brownian, 0.0);

  const auto mirror = sampler.sample(9, 0, true);
  ASSERT_EQ(mirror.points.size(), path.points.size());
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    EXPECT_EQ(mirror.points[i].brownian, -path.points[i].brownian);
    EXPECT_EQ(mirror.points[i].atom, path.points[i].atom);
  }
}

TEST(MonteCarlo, IsometryWithinFourStandardErrors) {
  const auto tri = atomic_triplet(0.5, {{1.0, 1.0}, {-0.5, 2.0}});
  const auto a = GeneratorFunction::monomial(1.0, 1.0, 1);
  const auto b = GeneratorFunction::monomial(2.0, 1.0, 2);
  const ProblemSpec spec(tri, {{{a}, TimeIntegrand::constant(1)}, {{b}, TimeIntegrand::constant(1)}}, 1.0);
  const double target = mu_integrate(tri, product(a, b));
  const auto est = simulate_moment(spec, 1.0, small_config(20000));
  EXPECT_LT(std::abs(est.z_score(target)), 4.0) << est.estimate << " vs " << target;
}

TEST(MonteCarlo, BrownianFourthMoment) {
  const double sigma2 = 0.8;
  const auto spec = constant_spec({1, 1, 1, 1}, brownian_triplet(sigma2));
  const auto est = simulate_moment(spec, 1.0, small_config(20000, 16));
  EXPECT_LT(std::abs(est.z_score(3.0 * sigma2 * sigma2)), 4.0) << est.estimate;
}

TEST(MonteCarlo, ExampleInstance) {
  const auto spec = constant_spec({1, 1, 2}, atomic_triplet(1.0, {{1.0, 2.0}}));
  const auto est = simulate_moment(spec, 1.0, small_config(20000));
  EXPECT_LT(std::abs(est.z_score(9.0)), 4.0) << est.estimate << " +- " << est.std_error;
}

TEST(MonteCarlo, IteratedIntegralWithTimeIntegrand) {
  const auto tri = atomic_triplet(0.7, {{1.0, 1.5}});
  const std::vector<GeneratorFunction> g(2, GeneratorFunction::constant(1.0));
  const TimeIntegrand f = TimeIntegrand::tensor({Polynomial{1.0, 1.0}, Polynomial{0.0, 2.0}});
  const ProblemSpec spec(tri, {{g, f}, {g, f}}, 1.0);
  const double target = moment_at(spec, 1.0);
  const auto est = simulate_moment(spec, 1.0, small_config(20000, 128));
  EXPECT_LT(std::abs(est.z_score(target)), 4.0) << est.estimate << " vs " << target;
}

TEST(MonteCarlo, ReproducibleAcrossThreadCounts) {
  const auto spec = constant_spec({1, 1, 2}, atomic_triplet(1.0, {{1.0, 2.0}}));
  auto c = small_config(500);
  c.threads = 1;
  const auto one = simulate_moment(spec, 1.0, c);
  c.threads = 3;
  const auto three = simulate_moment(spec, 1.0, c);
  EXPECT_EQ(one.estimate, three.estimate);
  EXPECT_EQ(one.std_error, three.std_error);
}

TEST(MonteCarlo, AntitheticPairsCountOnce) {
  const auto spec = constant_spec({1, 1}, brownian_triplet(1.0));
  auto c = small_config(2000);
  c.antithetic = true;
  const auto est = simulate_moment(spec, 1.0, c);
  EXPECT_EQ(est.n_paths, 2000u);
  EXPECT_LT(std::abs(est.z_score(1.0)), 4.0);
}

TEST(MonteCarlo, QuadraticVariation) {
  const auto tri = atomic_triplet(0.5, {{1.0, 2.0}});
  const auto alpha = GeneratorFunction::constant(1.0);
  const auto est = estimate_quadratic_variation(tri, alpha, 1.0, small_config(20000));
  EXPECT_LT(std::abs(est.z_score(0.5 + 2.0)), 4.0) << est.estimate;
}

TEST(MonteCarlo, PathwiseSingleFactorIsExact) {
  const auto spec = constant_spec({1}, atomic_triplet(1.0, {{1.0, 2.0}}));
  const auto r = pathwise_product_check(spec, 1.0, small_config(20));
  EXPECT_LT(r.max_abs_fine, 1e-12);
  EXPECT_LT(r.max_abs_coarse, 1e-12);
}

TEST(MonteCarlo, PathwiseDiscrepancyShrinks) {
  const auto spec = constant_spec({1, 1}, atomic_triplet(0.0, {{1.0, 2.0}, {-0.5, 1.0}}));
  const auto r = pathwise_product_check(spec, 1.0, small_config(50));
  EXPECT_GT(r.reduction(), 3.0) << r.max_abs_coarse << " " << r.max_abs_fine;
}

TEST(MonteCarlo, SeedBatteryCoverage) {
  std::vector<ProblemSpec> specs{
      constant_spec({1, 1, 2}, atomic_triplet(1.0, {{1.0, 2.0}})),
      constant_spec({1, 1}, atomic_triplet(0.5, {{1.0, 1.0}, {-0.5, 2.0}})),
      constant_spec({1, 1, 1, 1}, brownian_triplet(1.0)),
  };
  for (const auto& spec : specs) {
    const double target = moment_at(spec, 1.0);
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto c = small_config(2000, 16);
      c.seed = seed;
      if (std::abs(simulate_moment(spec, 1.0, c).z_score(target)) <= 4.0) ++covered;
    }
    EXPECT_GE(covered, 99) << "target " << target;
  }
}

TEST(MonteCarlo, Errors) {
  DensityMeasure d;
  d.density = [](double) { return 1.0; };
  d.intervals = {{0.5, 1.0}};
  const auto spec = constant_spec({1, 1}, LevyTriplet(0.0, 1.0, LevyMeasure(d)));
  EXPECT_THROW((void)simulate_moment(spec, 1.0, small_config(10)), UnsupportedError);
  const auto ok = constant_spec({1, 1}, brownian_triplet(1.0));
  EXPECT_THROW((void)simulate_moment(ok, 1.0, small_config(0)), ConfigError);
  EXPECT_THROW((void)simulate_moment(ok, 1.0, small_config(10, 0)), ConfigError);
  EXPECT_THROW((void)simulate_moment(ok, 2.0, small_config(10)), ConfigError);
}

}  // namespace
}  // namespace levychaos
