#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace levychaos {

/// Jump part of the form coefficient * x^power.
struct MonomialJump {
  double coefficient = 1.0;
  int power = 0;

  friend bool operator==(const MonomialJump&, const MonomialJump&) = default;
};

/// A function alpha on the real line that defines the martingale
///   X^alpha = alpha(0) W^sigma + (1_{R\{0}} alpha) * compensated jump measure.
///
/// The value at 0 loads the Gaussian part and is stored separately; the jump
/// part is never consulted at 0. Jump parts that are monomials keep that tag
/// so they can be integrated against a moment table.
class GeneratorFunction {
 public:
  using JumpFunction = std::function<double(double)>;

  GeneratorFunction(double zero_value, JumpFunction jump, std::string name = "alpha");

  /// zero_value at 0, coefficient * x^power elsewhere.
  static GeneratorFunction monomial(double zero_value, double coefficient, int power,
                                    std::string name = "monomial");
  /// alpha(x) = c for every x, including 0.
  static GeneratorFunction constant(double c, std::string name = "constant");

  [[nodiscard]] double operator()(double x) const { return x == 0.0 ? zero_value_ : jump_(x); }
  [[nodiscard]] double zero_value() const noexcept { return zero_value_; }
  /// Jump part at x != 0.
  [[nodiscard]] double jump(double x) const { return jump_(x); }
  [[nodiscard]] const JumpFunction& jump_function() const noexcept { return jump_; }
  [[nodiscard]] const std::optional<MonomialJump>& monomial_jump() const noexcept {
    return monomial_;
  }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

 private:
  double zero_value_;
  JumpFunction jump_;
  std::optional<MonomialJump> monomial_;
  std::string name_;
};

/// Pointwise product; the value at 0 is the product of the values at 0.
GeneratorFunction product(std::span<const GeneratorFunction> alphas);
GeneratorFunction product(const GeneratorFunction& a, const GeneratorFunction& b);

/// 1_{R\{0}} alpha: zero at 0, unchanged elsewhere.
GeneratorFunction restrict_jump(const GeneratorFunction& alpha);

}  // namespace levychaos
