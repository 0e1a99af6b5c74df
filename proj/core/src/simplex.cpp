#include "levychaos/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "levychaos/errors.hpp"
#include "numerics.hpp"

namespace levychaos {

Polynomial integrate_exact(const IdentifiedIntegrand& integrand, int max_degree) {
  Polynomial total;
  for (const auto& term : integrand.terms()) {
    const auto polys = IdentifiedIntegrand::variable_polynomials(term);
    if (!polys) throw UnsupportedError("exact simplex integration needs polynomial factors");
    Polynomial g = Polynomial::constant(1.0);
    for (const auto& p : *polys) {
      g = (g * p).antiderivative();
      if (g.degree() > max_degree) {
        throw CapacityError("simplex polynomial degree exceeds " + std::to_string(max_degree));
      }
    }
    total += g * term.coefficient;
  }
  return total;
}

namespace {

class NestedIntegrator {
 public:
  NestedIntegrator(const IdentifiedIntegrand::Term& term, double tol) : term_(term), tol_(tol) {
    const std::size_t k = term.variables.size();
    splits_.resize(k);
    std::vector<double> acc;
    for (std::size_t r = 0; r < k; ++r) {
      for (const auto& f : term.variables[r]) {
        acc.insert(acc.end(), f.breakpoints().begin(), f.breakpoints().end());
      }
      std::sort(acc.begin(), acc.end());
      acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
      splits_[r] = acc;
    }
  }

  // I_r(s) = \int_0^s g_r(u) I_{r-1}(u) du with I_0 = 1; level is 1-based.
  detail::QuadratureResult level(std::size_t r, double s) const {
    if (r == 0) return {1.0, 0.0, 1.0};
    if (s <= 0.0) return {};
    auto f = [&](double u) {
      return IdentifiedIntegrand::variable_value(term_, r - 1, u) * level(r - 1, u).value;
    };
    // Inner levels are integrated more tightly than the outer one.
    const double level_tol = tol_ * std::pow(0.1, static_cast<double>(term_.variables.size() - r));
    detail::QuadratureResult out;
    double lo = 0.0;
    auto piece = [&](double hi) {
      if (hi <= lo) return;
      const auto q = detail::adaptive_quadrature(f, lo, hi, std::max(level_tol, 1e-13), 12);
      out.value += q.value;
      out.error += q.error;
      out.l1 += q.l1;
      lo = hi;
    };
    for (double b : splits_[r - 1]) {
      if (b > 0.0 && b < s) piece(b);
    }
    piece(s);
    return out;
  }

 private:
  const IdentifiedIntegrand::Term& term_;
  double tol_;
  std::vector<std::vector<double>> splits_;
};

}  // namespace

SimplexIntegral integrate_numeric(const IdentifiedIntegrand& integrand, double t, double tol,
                                  std::size_t max_dimension) {
  const std::size_t k = integrand.dimension();
  if (k > max_dimension) {
    throw CapacityError("simplex dimension " + std::to_string(k) + " exceeds cap " +
                        std::to_string(max_dimension));
  }
  if (!(t >= 0.0)) throw ConfigError("simplex horizon must be >= 0");
  SimplexIntegral out{0.0, 0.0, k};
  for (const auto& term : integrand.terms()) {
    const NestedIntegrator nested(term, tol);
    const auto q = nested.level(k, t);
    out.value += term.coefficient * q.value;
    out.error += std::abs(term.coefficient) * q.error;
  }
  if (!std::isfinite(out.value)) throw NumericError("simplex integral is not finite");
  if (out.error > 10.0 * tol * (1.0 + std::abs(out.value))) {
    throw NumericError("simplex quadrature did not reach tolerance: error estimate " +
                       std::to_string(out.error));
  }
  return out;
}

double integrate_at(const IdentifiedIntegrand& integrand, double t, double tol,
                    std::size_t max_dimension) {
  if (integrand.all_polynomial()) return integrate_exact(integrand)(t);
  return integrate_numeric(integrand, t, tol, max_dimension).value;
}

}  // namespace levychaos
