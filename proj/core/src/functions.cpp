#include "levychaos/functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levychaos/errors.hpp"

namespace levychaos {

// ---------------------------------------------------------------------------
// Generator families

GeneratorFunction dyadic_indicator(double a, double b, double c) {
  if (!(a < b)) throw ConfigError("dyadic indicator needs a < b");
  if (a <= 0.0 && b >= 0.0) throw ConfigError("dyadic indicator interval must not contain 0");
  return GeneratorFunction(
      c, [a, b](double x) { return (x > a && x <= b) ? 1.0 : 0.0; },
      "1_(" + std::to_string(a) + "," + std::to_string(b) + "]");
}

GeneratorFunction teugels(int n) {
  if (n < 1) throw ConfigError("Teugels index must be >= 1");
  return GeneratorFunction::monomial(n == 1 ? 1.0 : 0.0, 1.0, n, "h" + std::to_string(n));
}

double normalized_hermite(int n, double x) {
  if (n < 0) throw ConfigError("Hermite degree must be >= 0");
  double prev = 1.0;  // He_0
  if (n == 0) return 1.0;
  double cur = x;  // He_1
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur / std::tgamma(n + 1.0);
}

double haar_wavelet(int j, int k, double x) {
  const double scale = std::ldexp(1.0, j);  // 2^j
  const double y = scale * x - k;
  const double amp = std::sqrt(scale);
  if (y >= 0.0 && y < 0.5) return amp;
  if (y >= 0.5 && y < 1.0) return -amp;
  return 0.0;
}

namespace {

const DensityMeasure& require_density(const LevyMeasure& nu, const char* family) {
  const auto* d = nu.as_density();
  if (!d) throw ConfigError(std::string(family) + " generators need a density Lévy measure");
  return *d;
}

double inverse_sqrt_density(const std::function<double(double)>& h, double x) {
  const double v = h(x);
  return v > 0.0 ? 1.0 / std::sqrt(v) : 0.0;
}

}  // namespace

GeneratorFunction hermite_weighted(int n, const LevyMeasure& nu) {
  if (n < 1) throw ConfigError("Hermite index must be >= 1");
  const auto h = require_density(nu, "Hermite").density;
  return GeneratorFunction(
      normalized_hermite(n, 0.0),
      [h, n](double x) {
        return inverse_sqrt_density(h, x) * std::exp(-0.5 * x * x) * normalized_hermite(n, x);
      },
      "P" + std::to_string(n));
}

GeneratorFunction haar_weighted(int j, int k, const LevyMeasure& nu) {
  const auto h = require_density(nu, "Haar").density;
  return GeneratorFunction(
      haar_wavelet(j, k, 0.0),
      [h, j, k](double x) { return inverse_sqrt_density(h, x) * haar_wavelet(j, k, x); },
      "psi" + std::to_string(j) + "," + std::to_string(k));
}

// ---------------------------------------------------------------------------
// Time functions

UnivariateTimeFunction::UnivariateTimeFunction(Polynomial p)
    : repr_(PolynomialTimeFunction{std::move(p)}) {}

UnivariateTimeFunction::UnivariateTimeFunction(PiecewiseConstantTimeFunction pwc)
    : repr_(std::move(pwc)) {
  const auto& f = std::get<PiecewiseConstantTimeFunction>(repr_);
  if (f.values.size() != f.breakpoints.size() + 1) {
    throw ConfigError("piecewise-constant function needs one more value than breakpoints");
  }
  if (!std::is_sorted(f.breakpoints.begin(), f.breakpoints.end()) ||
      std::adjacent_find(f.breakpoints.begin(), f.breakpoints.end()) != f.breakpoints.end()) {
    throw ConfigError("piecewise-constant breakpoints must be strictly increasing");
  }
}

UnivariateTimeFunction::UnivariateTimeFunction(CallableTimeFunction callable)
    : repr_(std::move(callable)) {
  const auto& f = std::get<CallableTimeFunction>(repr_);
  if (!f.evaluate) throw ConfigError("callable time function is empty");
  if (!(f.bound >= 0.0) || !std::isfinite(f.bound)) {
    throw ConfigError("callable time function needs a finite declared bound");
  }
}

double UnivariateTimeFunction::operator()(double t) const {
  switch (repr_.index()) {
    case 0:
      return std::get<0>(repr_).poly(t);
    case 1: {
      const auto& f = std::get<1>(repr_);
      const auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), t);
      return f.values[static_cast<std::size_t>(it - f.breakpoints.begin())];
    }
    default:
      return std::get<2>(repr_).evaluate(t);
  }
}

const Polynomial* UnivariateTimeFunction::as_polynomial() const noexcept {
  if (const auto* p = std::get_if<PolynomialTimeFunction>(&repr_)) return &p->poly;
  return nullptr;
}

std::span<const double> UnivariateTimeFunction::breakpoints() const noexcept {
  if (const auto* p = std::get_if<PiecewiseConstantTimeFunction>(&repr_)) return p->breakpoints;
  return {};
}

TimeIntegrand::TimeIntegrand(int order, std::vector<Term> terms)
    : order_(order), terms_(std::move(terms)) {
  if (order_ < 1) throw ConfigError("time integrand order must be >= 1");
  for (const auto& t : terms_) {
    if (static_cast<int>(t.factors.size()) != order_) {
      throw ConfigError("every tensor term needs exactly " + std::to_string(order_) + " factors");
    }
  }
}

TimeIntegrand TimeIntegrand::constant(int order, double c) {
  if (order < 1) throw ConfigError("time integrand order must be >= 1");
  return TimeIntegrand(
      order, {Term{c, std::vector<UnivariateTimeFunction>(static_cast<std::size_t>(order))}});
}

TimeIntegrand TimeIntegrand::tensor(std::vector<UnivariateTimeFunction> factors) {
  const int m = static_cast<int>(factors.size());
  return TimeIntegrand(m, {Term{1.0, std::move(factors)}});
}

bool TimeIntegrand::all_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return std::all_of(t.factors.begin(), t.factors.end(),
                       [](const auto& f) { return f.as_polynomial() != nullptr; });
  });
}

double TimeIntegrand::operator()(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != order_) throw ConfigError("wrong number of time arguments");
  double total = 0.0;
  for (const auto& t : terms_) {
    double v = t.coefficient;
    for (std::size_t i = 0; i < t.factors.size(); ++i) v *= t.factors[i](u[i]);
    total += v;
  }
  return total;
}

TimeIntegrand& TimeIntegrand::operator+=(const TimeIntegrand& other) {
  if (other.order_ != order_) throw ConfigError("cannot add integrands of different orders");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

TimeIntegrand& TimeIntegrand::operator*=(double scalar) {
  for (auto& t : terms_) t.coefficient *= scalar;
  return *this;
}

// ---------------------------------------------------------------------------
// Identification

bool IdentifiedIntegrand::all_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return std::all_of(t.variables.begin(), t.variables.end(), [](const auto& fs) {
      return std::all_of(fs.begin(), fs.end(), [](const auto& f) { return f.as_polynomial(); });
    });
  });
}

double IdentifiedIntegrand::variable_value(const Term& term, std::size_t r, double s) {
  double v = 1.0;
  for (const auto& f : term.variables[r]) v *= f(s);
  return v;
}

std::optional<std::vector<Polynomial>> IdentifiedIntegrand::variable_polynomials(const Term& term) {
  std::vector<Polynomial> out;
  out.reserve(term.variables.size());
  for (const auto& fs : term.variables) {
    Polynomial p = Polynomial::constant(1.0);
    for (const auto& f : fs) {
      const auto* q = f.as_polynomial();
      if (!q) return std::nullopt;
      p *= *q;
    }
    out.push_back(std::move(p));
  }
  return out;
}

double IdentifiedIntegrand::operator()(std::span<const double> t) const {
  if (t.size() != dimension_) throw ConfigError("wrong number of simplex variables");
  double total = 0.0;
  for (const auto& term : terms_) {
    double v = term.coefficient;
    for (std::size_t r = 0; r < dimension_; ++r) v *= variable_value(term, r, t[r]);
    total += v;
  }
  return total;
}

IdentifiedIntegrand identify(std::span<const TimeIntegrand> integrands,
                             const IdentificationRule& rule) {
  const auto& orders = rule.orders();
  if (integrands.size() != orders.size()) {
    throw ConfigError("identify: " + std::to_string(integrands.size()) + " integrands for a rule over " +
                      std::to_string(orders.size()) + " factors");
  }
  std::vector<int> offsets(orders.size() + 1, 0);
  for (std::size_t j = 0; j < orders.size(); ++j) {
    if (integrands[j].order() != orders[j]) {
      throw ConfigError("identify: integrand " + std::to_string(j + 1) + " has order " +
                        std::to_string(integrands[j].order()) + ", rule expects " +
                        std::to_string(orders[j]));
    }
    offsets[j + 1] = offsets[j] + orders[j];
  }

  // Locate each global index: (factor, position within factor).
  std::vector<std::pair<std::size_t, std::size_t>> where(static_cast<std::size_t>(offsets.back()));
  for (std::size_t j = 0; j < orders.size(); ++j) {
    for (int p = 0; p < orders[j]; ++p) {
      where[static_cast<std::size_t>(offsets[j] + p)] = {j, static_cast<std::size_t>(p)};
    }
  }

  std::vector<IdentifiedIntegrand::Term> out;
  for (const auto& f : integrands) {
    if (f.terms().empty()) return IdentifiedIntegrand(rule.size(), {});
  }
  std::vector<std::size_t> choice(integrands.size(), 0);
  while (true) {
    IdentifiedIntegrand::Term term;
    term.coefficient = 1.0;
    for (std::size_t j = 0; j < integrands.size(); ++j) {
      term.coefficient *= integrands[j].terms()[choice[j]].coefficient;
    }
    term.variables.resize(rule.size());
    for (std::size_t r = 0; r < rule.size(); ++r) {
      for (int idx : rule.blocks()[r]) {
        const auto [j, p] = where[static_cast<std::size_t>(idx)];
        term.variables[r].push_back(integrands[j].terms()[choice[j]].factors[p]);
      }
    }
    if (term.coefficient != 0.0) out.push_back(std::move(term));

    std::size_t j = 0;
    for (; j < integrands.size(); ++j) {
      if (++choice[j] < integrands[j].terms().size()) break;
      choice[j] = 0;
    }
    if (j == integrands.size()) break;
  }
  return IdentifiedIntegrand(rule.size(), std::move(out));
}

}  // namespace levychaos
