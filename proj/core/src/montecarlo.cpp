#include "levychaos/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "levychaos/chaos.hpp"
#include "levychaos/errors.hpp"
#include "levychaos/parallel.hpp"
#include "numerics.hpp"

namespace levychaos {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

const AtomicMeasure& require_atomic(const LevyMeasure& nu) {
  const auto* atomic = nu.as_atomic();
  if (atomic == nullptr) {
    throw UnsupportedError("Monte Carlo simulation needs an atomic Levy measure");
  }
  return *atomic;
}

void validate(const SimulationConfig& config, double t, double horizon) {
  if (config.n_paths == 0) throw ConfigError("simulation needs at least one path");
  if (config.n_grid_steps == 0) throw ConfigError("simulation needs at least one grid step");
  if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("simulation time must be positive");
  if (t > horizon) throw ConfigError("simulation time exceeds the horizon");
}

// One level of an iterated integral Z_r = int g_r(u) Z_{r-1}(u-) dY_r(u) with
// dY = a dW^sigma + b du + (jump at atom).
struct Level {
  std::vector<UnivariateTimeFunction> time_factors;
  double brownian = 0.0;
  double drift = 0.0;
  std::vector<double> jumps;  // by atom; empty when Y has no jumps

  [[nodiscard]] double g(double u) const {
    double v = 1.0;
    for (const auto& f : time_factors) v *= f(u);
    return v;
  }
};

struct Chain {
  double coefficient = 1.0;
  std::vector<Level> levels;
};

// Z_k(t) along the path, using every point whose base index is a multiple of
// `stride` plus every jump time.
double run_chain(const Chain& chain, const SimulatedPath& path, long stride, double sigma2,
                 std::vector<double>& z, std::vector<double>& g) {
  const std::size_t k = chain.levels.size();
  z.assign(k + 1, 0.0);
  g.assign(k + 1, 0.0);
  z[0] = 1.0;
  const auto& pts = path.points;
  std::size_t left = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const bool selected = p.atom >= 0 || (p.base_index >= 0 && p.base_index % stride == 0);
    if (!selected) continue;
    const double u = pts[left].time;
    const double dt = p.time - u;
    const double dw = p.brownian - pts[left].brownian;
    const double i11 = 0.5 * (dw * dw - sigma2 * dt);
    for (std::size_t r = 1; r <= k; ++r) g[r] = chain.levels[r - 1].g(u);
    for (std::size_t r = k; r >= 1; --r) {
      const Level& lv = chain.levels[r - 1];
      double inc = z[r - 1] * g[r] * (lv.brownian * dw + lv.drift * dt);
      if (r >= 2 && lv.brownian != 0.0) {
        const double a_prev = chain.levels[r - 2].brownian;
        if (a_prev != 0.0) inc += z[r - 2] * g[r - 1] * a_prev * g[r] * lv.brownian * i11;
      }
      z[r] += inc;
    }
    if (p.atom >= 0) {
      for (std::size_t r = k; r >= 1; --r) {
        const Level& lv = chain.levels[r - 1];
        if (lv.jumps.empty()) continue;
        z[r] += z[r - 1] * lv.g(p.time) * lv.jumps[static_cast<std::size_t>(p.atom)];
      }
    }
    left = i;
  }
  return z[k];
}

std::vector<double> jump_table(const AtomicMeasure& atomic, const GeneratorFunction& alpha) {
  std::vector<double> out;
  out.reserve(atomic.atoms.size());
  for (const auto& a : atomic.atoms) out.push_back(alpha.jump(a.location));
  return out;
}

double compensator(const AtomicMeasure& atomic, const std::vector<double>& jumps) {
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < jumps.size(); ++i) s += atomic.atoms[i].mass * jumps[i];
  return s.value();
}

// The martingale X^alpha as a level integrator.
Level martingale_level(const AtomicMeasure& atomic, const GeneratorFunction& alpha) {
  Level lv;
  lv.brownian = alpha.zero_value();
  lv.jumps = jump_table(atomic, alpha);
  lv.drift = -compensator(atomic, lv.jumps);
  if (std::all_of(lv.jumps.begin(), lv.jumps.end(), [](double v) { return v == 0.0; })) {
    lv.jumps.clear();
  }
  return lv;
}

// One chain per tensor term of each factor's integrand: J_{m_j}(F^j) = sum_c coefficient * Z.
std::vector<std::vector<Chain>> factor_chains(const ProblemSpec& spec, const AtomicMeasure& atomic) {
  std::vector<std::vector<Chain>> out;
  for (const auto& factor : spec.factors()) {
    std::vector<Level> base;
    for (const auto& alpha : factor.generators) base.push_back(martingale_level(atomic, alpha));
    std::vector<Chain> chains;
    for (const auto& term : factor.integrand.terms()) {
      Chain c{term.coefficient, base};
      for (std::size_t i = 0; i < c.levels.size(); ++i) c.levels[i].time_factors = {term.factors[i]};
      chains.push_back(std::move(c));
    }
    out.push_back(std::move(chains));
  }
  return out;
}

// Every term of the product expansion as a chain of mixed integrators.
std::vector<Chain> expansion_chains(const ProblemSpec& spec, const AtomicMeasure& atomic) {
  const ChaosExpansion expansion = expand_product(spec);
  std::vector<Chain> out;
  for (const auto& term : expansion.terms) {
    const IdentifiedIntegrand integrand = identify(expansion.integrands, term.rule);
    std::vector<Level> base;
    for (const auto& block : term.blocks) {
      Level lv;
      if (block.kind == IntegratorKind::deterministic) {
        lv.drift = 1.0;
      } else if (block.label == BlockLabel::gaussian) {
        lv.brownian = block.weight;
      } else {
        lv = martingale_level(atomic, restrict_jump(spec.block_generator(block.indices)));
        lv.brownian = 0.0;
        lv.drift *= block.weight;
        for (double& v : lv.jumps) v *= block.weight;
      }
      base.push_back(std::move(lv));
    }
    for (const auto& it : integrand.terms()) {
      Chain c{term.coefficient * it.coefficient, base};
      for (std::size_t r = 0; r < c.levels.size(); ++r) c.levels[r].time_factors = it.variables[r];
      out.push_back(std::move(c));
    }
  }
  return out;
}

double product_of_factors(const std::vector<std::vector<Chain>>& chains, const SimulatedPath& path,
                          long stride, double sigma2, std::vector<double>& z, std::vector<double>& g) {
  double prod = 1.0;
  for (const auto& factor : chains) {
    detail::CompensatedSum s;
    for (const auto& c : factor) s += c.coefficient * run_chain(c, path, stride, sigma2, z, g);
    prod *= s.value();
  }
  return prod;
}

double sum_of_chains(const std::vector<Chain>& chains, const SimulatedPath& path, long stride,
                     double sigma2, std::vector<double>& z, std::vector<double>& g) {
  detail::CompensatedSum s;
  for (const auto& c : chains) s += c.coefficient * run_chain(c, path, stride, sigma2, z, g);
  return s.value();
}

MCEstimate summarize(const std::vector<double>& samples, std::size_t n_paths,
                     std::chrono::steady_clock::time_point start) {
  detail::CompensatedSum sum;
  for (double v : samples) sum += v;
  const double n = static_cast<double>(samples.size());
  const double mean = sum.value() / n;
  detail::CompensatedSum sq;
  for (double v : samples) sq += (v - mean) * (v - mean);
  const double var = samples.size() > 1 ? sq.value() / (n - 1.0) : 0.0;
  MCEstimate out;
  out.estimate = mean;
  out.std_error = std::sqrt(var / n);
  out.n_paths = n_paths;
  out.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(splitmix(seed ^ splitmix(stream + kGolden))) {}

CounterRng::result_type CounterRng::operator()() noexcept {
  ++counter_;
  return splitmix(key_ + counter_ * kGolden);
}

double MCEstimate::z_score(double target) const {
  if (std_error == 0.0) return estimate == target ? 0.0 : std::copysign(INFINITY, estimate - target);
  return (estimate - target) / std_error;
}

double PathwiseCheckReport::reduction() const {
  if (max_abs_fine == 0.0) return max_abs_coarse == 0.0 ? 1.0 : INFINITY;
  return max_abs_coarse / max_abs_fine;
}

PathSampler::PathSampler(const LevyTriplet& triplet, double t, std::size_t n_grid_steps)
    : atoms_(require_atomic(triplet.nu).atoms),
      total_mass_(0.0),
      sigma_(std::sqrt(triplet.sigma2)),
      t_(t),
      steps_(n_grid_steps) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("path horizon must be positive");
  if (n_grid_steps == 0) throw ConfigError("path grid needs at least one step");
  for (const auto& a : atoms_) masses_.push_back(a.mass);
  total_mass_ = require_atomic(triplet.nu).total_mass();
}

SimulatedPath PathSampler::sample(std::uint64_t seed, std::uint64_t path, bool reflect) const {
  CounterRng rng(seed, path);
  SimulatedPath out;
  std::vector<SimulatedPath::Point> jumps;
  if (total_mass_ > 0.0) {
    std::poisson_distribution<long> count(total_mass_ * t_);
    const long n = count(rng);
    std::uniform_real_distribution<double> when(0.0, t_);
    std::discrete_distribution<int> which(masses_.begin(), masses_.end());
    jumps.resize(static_cast<std::size_t>(n));
    for (auto& j : jumps) {
      j.time = when(rng);
      j.atom = which(rng);
    }
    std::sort(jumps.begin(), jumps.end(), [](const auto& a, const auto& b) { return a.time < b.time; });
  }
  out.points.reserve(steps_ + 1 + jumps.size());
  const double h = t_ / static_cast<double>(steps_);
  std::size_t next_jump = 0;
  for (std::size_t i = 0; i <= steps_; ++i) {
    const double grid_time = i == steps_ ? t_ : static_cast<double>(i) * h;
    while (next_jump < jumps.size() && jumps[next_jump].time < grid_time) {
      out.points.push_back(jumps[next_jump++]);
    }
    SimulatedPath::Point p;
    p.time = grid_time;
    p.base_index = static_cast<long>(i);
    out.points.push_back(p);
  }
  // A jump drawn at exactly t lands after the last grid point.
  while (next_jump < jumps.size()) out.points.push_back(jumps[next_jump++]);

  std::normal_distribution<double> normal;
  const double sign = reflect ? -1.0 : 1.0;
  double w = 0.0;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    const double dt = out.points[i].time - out.points[i - 1].time;
    const double z = normal(rng);
    if (sigma_ > 0.0) w += sign * sigma_ * std::sqrt(dt) * z;
    out.points[i].brownian = w;
  }
  return out;
}

MCEstimate simulate_moment(const ProblemSpec& spec, double t, const SimulationConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  validate(config, t, spec.horizon());
  const AtomicMeasure& atomic = require_atomic(spec.triplet().nu);
  const PathSampler sampler(spec.triplet(), t, config.n_grid_steps);
  const auto chains = factor_chains(spec, atomic);
  const double sigma2 = spec.triplet().sigma2;

  std::vector<double> samples(config.n_paths);
  parallel_for(config.n_paths, resolve_thread_count(config.threads), [&](std::size_t i) {
    thread_local std::vector<double> z;
    thread_local std::vector<double> g;
    const SimulatedPath path = sampler.sample(config.seed, i);
    double v = product_of_factors(chains, path, 1, sigma2, z, g);
    if (config.antithetic) {
      const SimulatedPath mirror = sampler.sample(config.seed, i, true);
      v = 0.5 * (v + product_of_factors(chains, mirror, 1, sigma2, z, g));
    }
    samples[i] = v;
  });
  return summarize(samples, config.n_paths, start);
}

PathwiseCheckReport pathwise_product_check(const ProblemSpec& spec, double t,
                                           const SimulationConfig& config, std::size_t refinement) {
  validate(config, t, spec.horizon());
  if (refinement < 2) throw ConfigError("pathwise check needs a refinement factor of at least 2");
  const AtomicMeasure& atomic = require_atomic(spec.triplet().nu);
  const std::size_t fine_steps = config.n_grid_steps * refinement;
  const PathSampler sampler(spec.triplet(), t, fine_steps);
  const auto lhs = factor_chains(spec, atomic);
  const auto rhs = expansion_chains(spec, atomic);
  const double sigma2 = spec.triplet().sigma2;
  const auto stride = static_cast<long>(refinement);

  std::vector<double> coarse(config.n_paths);
  std::vector<double> fine(config.n_paths);
  parallel_for(config.n_paths, resolve_thread_count(config.threads), [&](std::size_t i) {
    thread_local std::vector<double> z;
    thread_local std::vector<double> g;
    const SimulatedPath path = sampler.sample(config.seed, i);
    coarse[i] = std::abs(product_of_factors(lhs, path, stride, sigma2, z, g) -
                         sum_of_chains(rhs, path, stride, sigma2, z, g));
    fine[i] = std::abs(product_of_factors(lhs, path, 1, sigma2, z, g) -
                       sum_of_chains(rhs, path, 1, sigma2, z, g));
  });

  PathwiseCheckReport report;
  report.n_paths = config.n_paths;
  report.n_terms = rhs.size();
  report.coarse_steps = config.n_grid_steps;
  report.fine_steps = fine_steps;
  detail::CompensatedSum sc;
  detail::CompensatedSum sf;
  for (std::size_t i = 0; i < config.n_paths; ++i) {
    report.max_abs_coarse = std::max(report.max_abs_coarse, coarse[i]);
    report.max_abs_fine = std::max(report.max_abs_fine, fine[i]);
    sc += coarse[i];
    sf += fine[i];
  }
  report.mean_abs_coarse = sc.value() / static_cast<double>(config.n_paths);
  report.mean_abs_fine = sf.value() / static_cast<double>(config.n_paths);
  return report;
}

MCEstimate estimate_quadratic_variation(const LevyTriplet& triplet, const GeneratorFunction& alpha,
                                        double horizon, const SimulationConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  validate(config, horizon, horizon);
  const AtomicMeasure& atomic = require_atomic(triplet.nu);
  const PathSampler sampler(triplet, horizon, config.n_grid_steps);
  const std::vector<double> jumps = jump_table(atomic, alpha);
  const double a0 = alpha.zero_value();

  auto bracket = [&](const SimulatedPath& path) {
    detail::CompensatedSum s;
    for (std::size_t i = 1; i < path.points.size(); ++i) {
      const double dw = path.points[i].brownian - path.points[i - 1].brownian;
      s += a0 * a0 * dw * dw;
      if (path.points[i].atom >= 0) {
        const double j = jumps[static_cast<std::size_t>(path.points[i].atom)];
        s += j * j;
      }
    }
    return s.value() / horizon;
  };

  std::vector<double> samples(config.n_paths);
  parallel_for(config.n_paths, resolve_thread_count(config.threads), [&](std::size_t i) {
    double v = bracket(sampler.sample(config.seed, i));
    if (config.antithetic) v = 0.5 * (v + bracket(sampler.sample(config.seed, i, true)));
    samples[i] = v;
  });
  return summarize(samples, config.n_paths, start);
}

}  // namespace levychaos
