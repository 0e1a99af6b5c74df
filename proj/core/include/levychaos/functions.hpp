#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "levychaos/generator.hpp"
#include "levychaos/measures.hpp"
#include "levychaos/partitions.hpp"
#include "levychaos/polynomial.hpp"

namespace levychaos {

// ---------------------------------------------------------------------------
// Generator families

/// alpha(0) = c, alpha = 1 on (a, b], 0 elsewhere off zero. Requires a < b and 0 not in [a, b].
GeneratorFunction dyadic_indicator(double a, double b, double c);

/// h_n: h_1 = 1_{0} + x 1_{R\{0}}, h_n = x^n 1_{R\{0}} for n >= 2.
GeneratorFunction teugels(int n);

/// P_n = H_n(0) 1_{0} + 1_{R\{0}} g H_n with g = h^{-1/2} exp(-x^2/2) and
/// H_n the Hermite polynomial normalised as He_n / n!. Needs a density measure.
GeneratorFunction hermite_weighted(int n, const LevyMeasure& nu);

/// psi_jk(0) 1_{0} + 1_{R\{0}} h^{-1/2} psi_jk with psi_jk the Haar wavelet
/// 2^{j/2} psi(2^j x - k). Needs a density measure.
GeneratorFunction haar_weighted(int j, int k, const LevyMeasure& nu);

/// The Haar wavelet psi_jk itself.
double haar_wavelet(int j, int k, double x);

/// He_n(x) / n!.
double normalized_hermite(int n, double x);

// ---------------------------------------------------------------------------
// Time functions

struct PolynomialTimeFunction {
  Polynomial poly;
};

/// values[i] on [breakpoints[i-1], breakpoints[i]), with breakpoints[-1] = -inf
/// and breakpoints[n] = +inf; values has one more entry than breakpoints.
struct PiecewiseConstantTimeFunction {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

struct CallableTimeFunction {
  std::function<double(double)> evaluate;
  /// Declared sup |f| on [0, T].
  double bound = 0.0;
};

/// A bounded function of time on [0, T].
class UnivariateTimeFunction {
 public:
  using Representation =
      std::variant<PolynomialTimeFunction, PiecewiseConstantTimeFunction, CallableTimeFunction>;

  UnivariateTimeFunction() : UnivariateTimeFunction(Polynomial::constant(1.0)) {}
  UnivariateTimeFunction(Polynomial p);  // NOLINT(google-explicit-constructor)
  explicit UnivariateTimeFunction(PiecewiseConstantTimeFunction pwc);
  explicit UnivariateTimeFunction(CallableTimeFunction callable);

  static UnivariateTimeFunction one() { return Polynomial::constant(1.0); }

  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] const Representation& representation() const noexcept { return repr_; }
  [[nodiscard]] const Polynomial* as_polynomial() const noexcept;
  /// Interior points where the function may jump (empty for polynomials).
  [[nodiscard]] std::span<const double> breakpoints() const noexcept;

 private:
  Representation repr_;
};

/// A linear combination of tensor products F_1 (x) ... (x) F_m.
class TimeIntegrand {
 public:
  struct Term {
    double coefficient = 1.0;
    std::vector<UnivariateTimeFunction> factors;
  };

  TimeIntegrand(int order, std::vector<Term> terms);

  /// The constant c in m variables.
  static TimeIntegrand constant(int order, double c = 1.0);
  /// A single tensor product with coefficient 1.
  static TimeIntegrand tensor(std::vector<UnivariateTimeFunction> factors);

  [[nodiscard]] int order() const noexcept { return order_; }
  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool all_polynomial() const;
  [[nodiscard]] double operator()(std::span<const double> u) const;

  TimeIntegrand& operator+=(const TimeIntegrand& other);
  TimeIntegrand& operator*=(double scalar);

 private:
  int order_;
  std::vector<Term> terms_;
};

/// Result of applying an identification rule to the tensor product of several
/// integrands. Each term carries, per time variable t_r, the product of the
/// univariate factors whose global index lies in block S_r.
class IdentifiedIntegrand {
 public:
  struct Term {
    double coefficient = 1.0;
    /// variables[r] is the list of factors multiplied together in t_r.
    std::vector<std::vector<UnivariateTimeFunction>> variables;
  };

  IdentifiedIntegrand(std::size_t dimension, std::vector<Term> terms)
      : dimension_(dimension), terms_(std::move(terms)) {}

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool all_polynomial() const;
  /// Evaluates at (t_1, ..., t_k).
  [[nodiscard]] double operator()(std::span<const double> t) const;
  /// Value of the product of variable r's factors at time s for one term.
  [[nodiscard]] static double variable_value(const Term& term, std::size_t r, double s);
  /// Per-variable polynomials of a term; nullopt if any factor is not polynomial.
  [[nodiscard]] static std::optional<std::vector<Polynomial>> variable_polynomials(const Term& term);

 private:
  std::size_t dimension_;
  std::vector<Term> terms_;
};

/// Applies the rule to integrands[0] (x) ... (x) integrands[N-1]. Their orders
/// must equal the rule's factor orders.
IdentifiedIntegrand identify(std::span<const TimeIntegrand> integrands,
                             const IdentificationRule& rule);

}  // namespace levychaos
