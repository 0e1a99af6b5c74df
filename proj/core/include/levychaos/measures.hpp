#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "levychaos/generator.hpp"

namespace levychaos {

struct Atom {
  double location;
  double mass;
};

/// Finite Lévy measure sum_i mass_i * delta_{location_i} (compound Poisson).
struct AtomicMeasure {
  std::vector<Atom> atoms;

  [[nodiscard]] double total_mass() const;
};

/// nu(dx) = h(x) dx on a finite union of intervals that avoid 0 in their
/// interior. An interval may end at 0; the quadrature never evaluates endpoints.
struct DensityMeasure {
  std::function<double(double)> density;
  std::vector<std::pair<double, double>> intervals;
  double rel_tol = 1e-9;
};

/// Known values nu(p_k) of the monomials p_k(x) = x^k.
struct MomentTableMeasure {
  std::map<int, double> values;
  /// nu(1_{|x|>1} x); needed only for raw (non-centred) Lévy moments.
  std::optional<double> large_jump_mean;
};

/// A Lévy measure, validated on construction.
class LevyMeasure {
 public:
  using Representation = std::variant<AtomicMeasure, DensityMeasure, MomentTableMeasure>;

  LevyMeasure() : LevyMeasure(AtomicMeasure{}) {}
  explicit LevyMeasure(AtomicMeasure atomic);
  explicit LevyMeasure(DensityMeasure density);
  explicit LevyMeasure(MomentTableMeasure table);

  static LevyMeasure zero() { return LevyMeasure(AtomicMeasure{}); }
  static LevyMeasure atomic(std::vector<Atom> atoms) { return LevyMeasure(AtomicMeasure{std::move(atoms)}); }

  [[nodiscard]] const Representation& representation() const noexcept { return repr_; }
  [[nodiscard]] const AtomicMeasure* as_atomic() const noexcept {
    return std::get_if<AtomicMeasure>(&repr_);
  }
  [[nodiscard]] const DensityMeasure* as_density() const noexcept {
    return std::get_if<DensityMeasure>(&repr_);
  }
  [[nodiscard]] const MomentTableMeasure* as_moment_table() const noexcept {
    return std::get_if<MomentTableMeasure>(&repr_);
  }

 private:
  Representation repr_;
};

/// Characteristic triplet (gamma, sigma^2, nu).
struct LevyTriplet {
  double gamma = 0.0;
  double sigma2 = 0.0;
  LevyMeasure nu;

  LevyTriplet() = default;
  LevyTriplet(double gamma_, double sigma2_, LevyMeasure nu_);
};

/// \int_{R\{0}} f dnu for a plain function f. Not available for moment tables.
double nu_integrate(const LevyMeasure& nu, const std::function<double(double)>& f);

/// \int_{R\{0}} alpha dnu using the jump part of alpha. Moment tables accept
/// monomial jump parts only.
double nu_integrate(const LevyMeasure& nu, const GeneratorFunction& alpha);

/// nu(p_k) for the monomial p_k(x) = x^k.
double nu_monomial(const LevyMeasure& nu, int k);

/// mu(f) = sigma^2 f(0) + nu(f) with mu = sigma^2 delta_0 + nu.
double mu_integrate(const LevyTriplet& triplet, const GeneratorFunction& f);

enum class Finiteness { finite, infinite, unknown };

const char* to_string(Finiteness f) noexcept;

/// Advisory test of \int |f|^p dnu < infinity.
///
/// Atomic measures are always finite. Densities are integrated on intervals
/// trimmed ever closer to their endpoints; the increments must shrink
/// geometrically to report finite. Moment tables report finite only when the
/// entries bounding |x|^{kp} are present for a monomial f.
Finiteness check_moment_finiteness(const LevyMeasure& nu, const GeneratorFunction& f, int p);

}  // namespace levychaos
