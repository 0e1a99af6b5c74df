#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "levychaos/generator.hpp"
#include "levychaos/measures.hpp"
#include "levychaos/problem.hpp"

namespace levychaos {

/// Counter-based generator: output n of stream s is splitmix64(key(seed, s) + n * golden).
/// Any path's stream can be produced independently of every other path.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct SimulationConfig {
  std::size_t n_paths = 100000;
  /// Uniform base grid on [0, t]; jump times are added to it.
  std::size_t n_grid_steps = 512;
  std::uint64_t seed = 20240611;
  /// Pair every path with its Brownian reflection; one sample per pair.
  bool antithetic = false;
  /// 0 = resolve_thread_count().
  unsigned threads = 0;
};

struct MCEstimate {
  double estimate = 0.0;
  /// Sample standard deviation / sqrt(n_samples).
  double std_error = 0.0;
  std::size_t n_paths = 0;
  double elapsed_seconds = 0.0;

  /// (estimate - target) / std_error.
  [[nodiscard]] double z_score(double target) const;
};

/// One simulated path of the driving Lévy process on [0, t]: the jump-adapted
/// grid (uniform points plus jump times), the Brownian part W^sigma at every
/// grid point, and which atom jumped where.
struct SimulatedPath {
  struct Point {
    double time = 0.0;
    /// Value of W^sigma at this time.
    double brownian = 0.0;
    /// Atom index of the jump at this time, -1 if none.
    int atom = -1;
    /// Index on the uniform base grid, -1 for jump times.
    long base_index = -1;
  };
  std::vector<Point> points;
};

/// Draws paths of a compound Poisson plus Brownian process (atomic nu only).
class PathSampler {
 public:
  PathSampler(const LevyTriplet& triplet, double t, std::size_t n_grid_steps);

  /// The path with index `path` of the stream family `seed`. With
  /// reflect = true the Brownian part is negated (antithetic partner).
  [[nodiscard]] SimulatedPath sample(std::uint64_t seed, std::uint64_t path, bool reflect = false) const;

  [[nodiscard]] double horizon() const noexcept { return t_; }
  [[nodiscard]] std::size_t steps() const noexcept { return steps_; }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> masses_;
  double total_mass_;
  double sigma_;
  double t_;
  std::size_t steps_;
};

/// Monte Carlo estimate of E[prod_j J_{m_j}(F^j)_t]. Iterated integrals are
/// advanced cell by cell on the jump-adapted grid with left-point time
/// functions and the Milstein correction for the Brownian part, and updated
/// exactly (from left limits) at jump times.
MCEstimate simulate_moment(const ProblemSpec& spec, double t, const SimulationConfig& config = {});

struct PathwiseCheckReport {
  std::size_t n_paths = 0;
  std::size_t n_terms = 0;
  std::size_t coarse_steps = 0;
  std::size_t fine_steps = 0;
  double max_abs_coarse = 0.0;
  double max_abs_fine = 0.0;
  double mean_abs_coarse = 0.0;
  double mean_abs_fine = 0.0;

  /// max_abs_coarse / max_abs_fine.
  [[nodiscard]] double reduction() const;
};

/// Evaluates both sides of the product formula on the same paths: the product
/// of the iterated integrals, and the sum of every term of expand_product as a
/// pathwise mixed iterated integral. Done on the base grid of
/// config.n_grid_steps and on a grid refined by `refinement` sharing the same
/// Brownian path and jumps. config.n_paths paths are used.
PathwiseCheckReport pathwise_product_check(const ProblemSpec& spec, double t,
                                           const SimulationConfig& config,
                                           std::size_t refinement = 4);

/// Monte Carlo estimate of [X^alpha, X^alpha]_T / T, whose mean is mu(alpha^2).
MCEstimate estimate_quadratic_variation(const LevyTriplet& triplet, const GeneratorFunction& alpha,
                                        double horizon, const SimulationConfig& config = {});

}  // namespace levychaos
