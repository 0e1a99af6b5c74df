#include "levychaos/measures.hpp"

#include <array>
#include <cmath>
#include <string>

#include "levychaos/errors.hpp"
#include "numerics.hpp"

namespace levychaos {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double integrate_density(const DensityMeasure& d, const std::function<double(double)>& f) {
  double total = 0.0;
  for (const auto& [lo, hi] : d.intervals) {
    auto integrand = [&](double x) { return f(x) * d.density(x); };
    const auto r = detail::adaptive_quadrature(integrand, lo, hi, d.rel_tol);
    if (r.error > 10.0 * d.rel_tol * r.l1 && r.error > 1e-300) {
      throw NumericError("density quadrature did not converge on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]: error estimate " + std::to_string(r.error));
    }
    total += r.value;
  }
  return total;
}

}  // namespace

double AtomicMeasure::total_mass() const {
  detail::CompensatedSum s;
  for (const auto& a : atoms) s.add(a.mass);
  return s.value();
}

LevyMeasure::LevyMeasure(AtomicMeasure atomic) : repr_(std::move(atomic)) {
  for (const auto& a : std::get<AtomicMeasure>(repr_).atoms) {
    if (a.location == 0.0) throw ConfigError("Lévy measure atom at 0");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.location)) {
      throw ConfigError("Lévy measure atoms need finite location and strictly positive mass");
    }
  }
}

LevyMeasure::LevyMeasure(DensityMeasure density) : repr_(std::move(density)) {
  const auto& d = std::get<DensityMeasure>(repr_);
  if (!d.density) throw ConfigError("density measure without a density function");
  if (d.intervals.empty()) throw ConfigError("density measure needs at least one interval");
  if (!(d.rel_tol > 0.0)) throw ConfigError("density measure tolerance must be positive");
  for (const auto& [lo, hi] : d.intervals) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw ConfigError("density interval bounds must be finite with lo < hi");
    }
    if (lo < 0.0 && hi > 0.0) throw ConfigError("density interval contains 0 in its interior");
  }
}

LevyMeasure::LevyMeasure(MomentTableMeasure table) : repr_(std::move(table)) {
  for (const auto& [k, v] : std::get<MomentTableMeasure>(repr_).values) {
    if (k < 0) throw ConfigError("moment table keys must be nonnegative");
    if (!std::isfinite(v)) throw ConfigError("moment table values must be finite");
    if (k % 2 == 0 && v < 0.0) throw ConfigError("even moments of a measure cannot be negative");
  }
}

LevyTriplet::LevyTriplet(double gamma_, double sigma2_, LevyMeasure nu_)
    : gamma(gamma_), sigma2(sigma2_), nu(std::move(nu_)) {
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) throw ConfigError("sigma2 must be >= 0");
  if (!std::isfinite(gamma)) throw ConfigError("gamma must be finite");
}

double nu_integrate(const LevyMeasure& nu, const std::function<double(double)>& f) {
  return std::visit(
      overloaded{
          [&](const AtomicMeasure& a) {
            detail::CompensatedSum s;
            for (const auto& atom : a.atoms) s.add(atom.mass * f(atom.location));
            return s.value();
          },
          [&](const DensityMeasure& d) { return integrate_density(d, f); },
          [&](const MomentTableMeasure&) -> double {
            throw UnsupportedError("a moment table can only integrate monomial products");
          },
      },
      nu.representation());
}

double nu_monomial(const LevyMeasure& nu, int k) {
  if (const auto* table = nu.as_moment_table()) {
    const auto it = table->values.find(k);
    if (it == table->values.end()) {
      throw MissingMomentError("moment table has no entry for nu(p_" + std::to_string(k) + ")");
    }
    return it->second;
  }
  return nu_integrate(nu, [k](double x) { return std::pow(x, k); });
}

double nu_integrate(const LevyMeasure& nu, const GeneratorFunction& alpha) {
  if (nu.as_moment_table()) {
    const auto& m = alpha.monomial_jump();
    if (!m) {
      throw UnsupportedError("generator '" + alpha.name() +
                             "' is not a monomial; a moment table cannot integrate it");
    }
    if (m->coefficient == 0.0) return 0.0;
    return m->coefficient * nu_monomial(nu, m->power);
  }
  return nu_integrate(nu, alpha.jump_function());
}

double mu_integrate(const LevyTriplet& triplet, const GeneratorFunction& f) {
  return triplet.sigma2 * f.zero_value() + nu_integrate(triplet.nu, f);
}

const char* to_string(Finiteness f) noexcept {
  switch (f) {
    case Finiteness::finite:
      return "finite";
    case Finiteness::infinite:
      return "infinite";
    case Finiteness::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

// Classifies an endpoint from the integrals over successive geometric shells
// approaching it (each shell two decades closer than the previous one).
Finiteness classify_shells(const std::array<double, 5>& shells, double core) {
  for (double s : shells) {
    if (!std::isfinite(s)) return Finiteness::infinite;
  }
  const double last = std::abs(shells[4]);
  const double prev = std::abs(shells[3]);
  const double scale = 1.0 + std::abs(core);
  if (last <= 1e-12 * scale) return Finiteness::finite;
  const double ratio = prev > 0.0 ? last / prev : 1.0;
  if (ratio <= 0.3) return Finiteness::finite;
  if (ratio >= 0.7) return Finiteness::infinite;
  return Finiteness::unknown;
}

Finiteness density_finiteness(const DensityMeasure& d, const GeneratorFunction& f, int p) {
  auto g = [&](double x) { return std::pow(std::abs(f.jump(x)), p) * d.density(x); };
  Finiteness overall = Finiteness::finite;
  try {
    for (const auto& [lo, hi] : d.intervals) {
      const double w = hi - lo;
      const double e0 = 1e-2;
      const double core = detail::adaptive_quadrature(g, lo + e0 * w, hi - e0 * w, 1e-6, 10).value;
      // Shell (inner, outer) at distance d = w e^s from an endpoint, in the
      // variable s = log(d / w), so every shell is resolved alike.
      auto shell = [&](double endpoint, double direction, double inner, double outer) {
        auto in_log = [&](double s) {
          const double d = w * std::exp(s);
          return g(endpoint + direction * d) * d;
        };
        return detail::adaptive_quadrature(in_log, std::log(inner), std::log(outer), 1e-6, 10).value;
      };
      std::array<double, 5> left{};
      std::array<double, 5> right{};
      double outer = e0;
      for (std::size_t i = 0; i < left.size(); ++i) {
        const double inner = outer * 1e-2;
        left[i] = shell(lo, 1.0, inner, outer);
        right[i] = shell(hi, -1.0, inner, outer);
        outer = inner;
      }
      for (const auto verdict : {classify_shells(left, core), classify_shells(right, core)}) {
        if (verdict == Finiteness::infinite) return Finiteness::infinite;
        if (verdict == Finiteness::unknown) overall = Finiteness::unknown;
      }
    }
  } catch (const NumericError&) {
    return Finiteness::infinite;
  }
  return overall;
}

Finiteness table_finiteness(const MomentTableMeasure& t, const GeneratorFunction& f, int p) {
  const auto& m = f.monomial_jump();
  if (!m) return Finiteness::unknown;
  if (m->coefficient == 0.0) return Finiteness::finite;
  const int q = m->power * p;
  auto has = [&](int k) { return t.values.contains(k); };
  if (q % 2 == 0) return has(q) ? Finiteness::finite : Finiteness::unknown;
  // |x|^q <= x^{q-1} + x^{q+1} with both exponents even.
  return has(q - 1) && has(q + 1) ? Finiteness::finite : Finiteness::unknown;
}

}  // namespace

Finiteness check_moment_finiteness(const LevyMeasure& nu, const GeneratorFunction& f, int p) {
  if (p < 2) return Finiteness::unknown;
  return std::visit(overloaded{
                        [](const AtomicMeasure&) { return Finiteness::finite; },
                        [&](const DensityMeasure& d) { return density_finiteness(d, f, p); },
                        [&](const MomentTableMeasure& t) { return table_finiteness(t, f, p); },
                    },
                    nu.representation());
}

}  // namespace levychaos
