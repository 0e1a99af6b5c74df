#include "config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "levychaos/errors.hpp"
#include "levychaos/functions.hpp"
#include "levychaos/generator.hpp"

namespace levychaos::cli {

using nlohmann::json;

namespace {

std::string where(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError("'" + path + "' must be an object");
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  require_object(j, path);
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.contains(k)) throw ConfigError("unknown key '" + where(path, k) + "'");
  }
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw ConfigError("missing key '" + where(path, key) + "'");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError("'" + path + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError("'" + path + "' must be finite");
  return v;
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
  return j.contains(key) ? number(j.at(key), where(path, key)) : fallback;
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError("'" + path + "' must be an integer");
  return j.get<long>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError("'" + path + "' must be a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError("'" + path + "' must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::pair<double, double>> pairs(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError("'" + path + "' must be an array of pairs");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto v = numbers(j[i], path + "[" + std::to_string(i) + "]");
    if (v.size() != 2) throw ConfigError("'" + path + "[" + std::to_string(i) + "]' must have two entries");
    out.emplace_back(v[0], v[1]);
  }
  return out;
}

LevyMeasure parse_measure(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string type = text(member(j, path, "type"), where(path, "type"));
  if (type == "atomic") {
    allow_keys(j, path, {"type", "atoms"});
    std::vector<Atom> atoms;
    for (const auto& [x, w] : pairs(j.value("atoms", json::array()), where(path, "atoms"))) atoms.push_back({x, w});
    return LevyMeasure::atomic(std::move(atoms));
  }
  if (type == "density") {
    allow_keys(j, path, {"type", "family", "scale", "rate", "exponent", "intervals", "tol"});
    const std::string family = text(member(j, path, "family"), where(path, "family"));
    const double scale = number_or(j, path, "scale", 1.0);
    DensityMeasure d;
    if (family == "exponential") {
      const double rate = number_or(j, path, "rate", 1.0);
      d.density = [scale, rate](double x) { return scale * std::exp(-rate * std::abs(x)); };
    } else if (family == "power") {
      const double exponent = number(member(j, path, "exponent"), where(path, "exponent"));
      d.density = [scale, exponent](double x) { return scale * std::pow(std::abs(x), -exponent); };
    } else {
      throw ConfigError("unknown density family '" + family + "' (expected exponential or power)");
    }
    d.intervals = pairs(member(j, path, "intervals"), where(path, "intervals"));
    d.rel_tol = number_or(j, path, "tol", d.rel_tol);
    return LevyMeasure(std::move(d));
  }
  if (type == "moments") {
    allow_keys(j, path, {"type", "values", "large_jump_mean"});
    MomentTableMeasure t;
    const json& values = member(j, path, "values");
    require_object(values, where(path, "values"));
    for (const auto& [k, v] : values.items()) {
      int order = 0;
      try {
        std::size_t used = 0;
        order = std::stoi(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::exception&) {
        throw ConfigError("moment table key '" + k + "' is not an integer");
      }
      t.values[order] = number(v, where(where(path, "values"), k));
    }
    if (j.contains("large_jump_mean")) t.large_jump_mean = number(j.at("large_jump_mean"), where(path, "large_jump_mean"));
    return LevyMeasure(std::move(t));
  }
  throw ConfigError("unknown measure type '" + type + "' (expected atomic, density or moments)");
}

class GeneratorTable {
 public:
  GeneratorTable(const json& decls, const LevyMeasure& nu) : decls_(decls), nu_(nu) {
    require_object(decls, "generators");
  }

  const GeneratorFunction& get(const std::string& name) {
    if (auto it = built_.find(name); it != built_.end()) return it->second;
    if (!decls_.contains(name)) throw ConfigError("unknown generator '" + name + "'");
    if (!visiting_.insert(name).second) throw ConfigError("generator '" + name + "' refers to itself");
    GeneratorFunction g = build(name, decls_.at(name));
    visiting_.erase(name);
    return built_.emplace(name, std::move(g)).first->second;
  }

  void build_all() {
    for (const auto& [name, decl] : decls_.items()) (void)get(name);
  }

 private:
  GeneratorFunction build(const std::string& name, const json& d) {
    const std::string path = "generators." + name;
    require_object(d, path);
    const std::string family = text(member(d, path, "family"), where(path, "family"));
    auto int_param = [&](const char* key) {
      return static_cast<int>(integer(member(d, path, key), where(path, key)));
    };
    GeneratorFunction g = [&]() -> GeneratorFunction {
      if (family == "constant") {
        allow_keys(d, path, {"family", "value"});
        return GeneratorFunction::constant(number(member(d, path, "value"), where(path, "value")), name);
      }
      if (family == "teugels") {
        allow_keys(d, path, {"family", "n"});
        return teugels(int_param("n"));
      }
      if (family == "dyadic") {
        allow_keys(d, path, {"family", "a", "b", "zero"});
        return dyadic_indicator(number(member(d, path, "a"), where(path, "a")),
                                number(member(d, path, "b"), where(path, "b")), number_or(d, path, "zero", 0.0));
      }
      if (family == "hermite") {
        allow_keys(d, path, {"family", "n"});
        return hermite_weighted(int_param("n"), nu_);
      }
      if (family == "haar") {
        allow_keys(d, path, {"family", "j", "k"});
        return haar_weighted(int_param("j"), int_param("k"), nu_);
      }
      if (family == "monomial") {
        allow_keys(d, path, {"family", "zero", "coefficient", "power"});
        const int power = int_param("power");
        if (power < 0) throw ConfigError("'" + where(path, "power") + "' must be >= 0");
        return GeneratorFunction::monomial(number_or(d, path, "zero", 0.0), number_or(d, path, "coefficient", 1.0),
                                           power, name);
      }
      if (family == "table") {
        allow_keys(d, path, {"family", "zero", "values", "default"});
        std::map<double, double> values;
        for (const auto& [x, v] : pairs(member(d, path, "values"), where(path, "values"))) values[x] = v;
        const double fallback = number_or(d, path, "default", 0.0);
        return GeneratorFunction(
            number_or(d, path, "zero", 0.0),
            [values, fallback](double x) {
              const auto it = values.find(x);
              return it == values.end() ? fallback : it->second;
            },
            name);
      }
      if (family == "product") {
        allow_keys(d, path, {"family", "of"});
        const json& of = member(d, path, "of");
        if (!of.is_array() || of.empty()) throw ConfigError("'" + where(path, "of") + "' must be a nonempty array");
        std::vector<GeneratorFunction> parts;
        for (const auto& n : of) parts.push_back(get(text(n, where(path, "of"))));
        return product(parts);
      }
      if (family == "restrict_jump") {
        allow_keys(d, path, {"family", "of"});
        return restrict_jump(get(text(member(d, path, "of"), where(path, "of"))));
      }
      throw ConfigError("unknown generator family '" + family + "'");
    }();
    return g;
  }

  const json& decls_;
  const LevyMeasure& nu_;
  std::map<std::string, GeneratorFunction> built_;
  std::set<std::string> visiting_;
};

UnivariateTimeFunction parse_time_function(const json& j, const std::string& path) {
  if (j.is_number()) return Polynomial::constant(number(j, path));
  require_object(j, path);
  if (j.contains("poly")) {
    allow_keys(j, path, {"poly"});
    return Polynomial(numbers(j.at("poly"), where(path, "poly")));
  }
  if (j.contains("pwc")) {
    allow_keys(j, path, {"pwc"});
    const json& p = j.at("pwc");
    const std::string pp = where(path, "pwc");
    allow_keys(p, pp, {"breakpoints", "values"});
    return UnivariateTimeFunction(PiecewiseConstantTimeFunction{numbers(member(p, pp, "breakpoints"), where(pp, "breakpoints")),
                                                                numbers(member(p, pp, "values"), where(pp, "values"))});
  }
  throw ConfigError("'" + path + "' must be a number, {\"poly\": [...]} or {\"pwc\": {...}}");
}

TimeIntegrand::Term parse_term(const json& j, const std::string& path, int order) {
  allow_keys(j, path, {"coefficient", "factors"});
  TimeIntegrand::Term term;
  term.coefficient = number_or(j, path, "coefficient", 1.0);
  const json& factors = member(j, path, "factors");
  if (!factors.is_array() || static_cast<int>(factors.size()) != order) {
    throw ConfigError("'" + where(path, "factors") + "' must list " + std::to_string(order) + " time functions");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    term.factors.push_back(parse_time_function(factors[i], where(path, "factors") + "[" + std::to_string(i) + "]"));
  }
  return term;
}

TimeIntegrand parse_integrand(const json& j, const std::string& path, int order) {
  if (j.is_null()) return TimeIntegrand::constant(order);
  if (j.is_number()) return TimeIntegrand::constant(order, number(j, path));
  require_object(j, path);
  if (j.contains("terms")) {
    allow_keys(j, path, {"terms"});
    const json& terms = j.at("terms");
    if (!terms.is_array()) throw ConfigError("'" + where(path, "terms") + "' must be an array");
    std::vector<TimeIntegrand::Term> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      out.push_back(parse_term(terms[i], where(path, "terms") + "[" + std::to_string(i) + "]", order));
    }
    return TimeIntegrand(order, std::move(out));
  }
  return TimeIntegrand(order, {parse_term(j, path, order)});
}

SimulationConfig parse_simulation(const json& j) {
  const std::string path = "simulation";
  allow_keys(j, path, {"n_paths", "n_grid_steps", "seed", "antithetic", "threads"});
  SimulationConfig c;
  auto positive = [&](const char* key, std::size_t fallback) -> std::size_t {
    if (!j.contains(key)) return fallback;
    const long v = integer(j.at(key), where(path, key));
    if (v <= 0) throw ConfigError("'" + where(path, key) + "' must be positive");
    return static_cast<std::size_t>(v);
  };
  c.n_paths = positive("n_paths", c.n_paths);
  c.n_grid_steps = positive("n_grid_steps", c.n_grid_steps);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("'simulation.seed' must be a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("antithetic")) {
    if (!j.at("antithetic").is_boolean()) throw ConfigError("'simulation.antithetic' must be a boolean");
    c.antithetic = j.at("antithetic").get<bool>();
  }
  if (j.contains("threads")) {
    const long v = integer(j.at("threads"), where(path, "threads"));
    if (v < 0) throw ConfigError("'simulation.threads' must be >= 0");
    c.threads = static_cast<unsigned>(v);
  }
  return c;
}

}  // namespace

LevyTriplet parse_triplet(const json& j) {
  allow_keys(j, "triplet", {"gamma", "sigma2", "nu"});
  return {number_or(j, "triplet", "gamma", 0.0), number_or(j, "triplet", "sigma2", 0.0),
          j.contains("nu") ? parse_measure(j.at("nu"), "triplet.nu") : LevyMeasure::zero()};
}

Config parse_config(const json& j) {
  allow_keys(j, "", {"triplet", "generators", "factors", "horizon", "simulation", "eval_times"});
  LevyTriplet triplet = parse_triplet(member(j, "", "triplet"));

  const json empty = json::object();
  GeneratorTable table(j.contains("generators") ? j.at("generators") : empty, triplet.nu);
  table.build_all();

  const json& fs = member(j, "", "factors");
  if (!fs.is_array() || fs.empty()) throw ConfigError("'factors' must be a nonempty array");
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string path = "factors[" + std::to_string(i) + "]";
    allow_keys(fs[i], path, {"generators", "integrand"});
    const json& names = member(fs[i], path, "generators");
    if (!names.is_array() || names.empty()) {
      throw ConfigError("'" + where(path, "generators") + "' must be a nonempty array of names");
    }
    std::vector<GeneratorFunction> gens;
    for (const auto& n : names) gens.push_back(table.get(text(n, where(path, "generators"))));
    const int order = static_cast<int>(gens.size());
    factors.push_back({std::move(gens),
                       parse_integrand(fs[i].contains("integrand") ? fs[i].at("integrand") : json(), where(path, "integrand"), order)});
  }
  const double horizon = number(member(j, "", "horizon"), "horizon");

  Config c{ProblemSpec(std::move(triplet), std::move(factors), horizon), std::nullopt, {}};
  if (j.contains("simulation")) c.simulation = parse_simulation(j.at("simulation"));
  if (j.contains("eval_times")) c.eval_times = numbers(j.at("eval_times"), "eval_times");
  return c;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

}  // namespace levychaos::cli
