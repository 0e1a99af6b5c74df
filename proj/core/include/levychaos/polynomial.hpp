#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace levychaos {

/// Dense univariate polynomial with double coefficients, ascending degree.
///
/// The zero polynomial has an empty coefficient vector and degree -1.
/// Trailing zero coefficients are trimmed after every operation so that
/// equality of coefficient vectors means equality of polynomials.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  Polynomial(std::initializer_list<double> coefficients);

  static Polynomial constant(double c);
  /// c * t^k
  static Polynomial monomial(double c, std::size_t k);

  [[nodiscard]] int degree() const noexcept {
    return static_cast<int>(coeffs_.size()) - 1;
  }
  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] std::span<const double> coefficients() const noexcept { return coeffs_; }
  /// Coefficient of t^k; zero beyond the degree.
  [[nodiscard]] double operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
  }

  [[nodiscard]] double operator()(double t) const noexcept;

  /// The polynomial P(t) = \int_0^t p(s) ds.
  [[nodiscard]] Polynomial antiderivative() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(double scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();

  std::vector<double> coeffs_;
};

/// max_k |a_k - b_k| / max(max_k |a_k|, max_k |b_k|); 0 when the two agree.
double relative_coefficient_distance(const Polynomial& a, const Polynomial& b);

/// max_k |a_k - b_k|
double max_coefficient_distance(const Polynomial& a, const Polynomial& b);

}  // namespace levychaos
