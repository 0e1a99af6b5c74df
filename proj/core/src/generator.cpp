#include "levychaos/generator.hpp"

#include <cmath>
#include <vector>

#include "levychaos/errors.hpp"

namespace levychaos {

GeneratorFunction::GeneratorFunction(double zero_value, JumpFunction jump, std::string name)
    : zero_value_(zero_value), jump_(std::move(jump)), name_(std::move(name)) {
  if (!jump_) throw ConfigError("generator '" + name_ + "' has an empty jump function");
}

GeneratorFunction GeneratorFunction::monomial(double zero_value, double coefficient, int power,
                                              std::string name) {
  if (power < 0) throw ConfigError("monomial generator needs a nonnegative power");
  GeneratorFunction g(
      zero_value,
      [coefficient, power](double x) { return coefficient * std::pow(x, power); },
      std::move(name));
  g.monomial_ = MonomialJump{coefficient, power};
  return g;
}

GeneratorFunction GeneratorFunction::constant(double c, std::string name) {
  return monomial(c, c, 0, std::move(name));
}

GeneratorFunction product(std::span<const GeneratorFunction> alphas) {
  if (alphas.empty()) throw ConfigError("product of an empty generator list");
  if (alphas.size() == 1) return alphas.front();

  double zero = 1.0;
  bool all_monomial = true;
  MonomialJump mono{1.0, 0};
  std::string name;
  for (const auto& a : alphas) {
    zero *= a.zero_value();
    if (!name.empty()) name += "*";
    name += a.name();
    if (a.monomial_jump()) {
      mono.coefficient *= a.monomial_jump()->coefficient;
      mono.power += a.monomial_jump()->power;
    } else {
      all_monomial = false;
    }
  }
  if (all_monomial) return GeneratorFunction::monomial(zero, mono.coefficient, mono.power, name);

  std::vector<GeneratorFunction::JumpFunction> parts;
  parts.reserve(alphas.size());
  for (const auto& a : alphas) parts.push_back(a.jump_function());
  return GeneratorFunction(
      zero,
      [parts = std::move(parts)](double x) {
        double v = 1.0;
        for (const auto& f : parts) v *= f(x);
        return v;
      },
      name);
}

GeneratorFunction product(const GeneratorFunction& a, const GeneratorFunction& b) {
  const GeneratorFunction pair[] = {a, b};
  return product(pair);
}

GeneratorFunction restrict_jump(const GeneratorFunction& alpha) {
  if (const auto& m = alpha.monomial_jump()) {
    return GeneratorFunction::monomial(0.0, m->coefficient, m->power, alpha.name());
  }
  return GeneratorFunction(0.0, alpha.jump_function(), alpha.name());
}

}  // namespace levychaos
