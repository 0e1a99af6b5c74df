#include "cli.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "levychaos/chaos.hpp"
#include "levychaos/errors.hpp"
#include "levychaos/montecarlo.hpp"
#include "levychaos/partitions.hpp"
#include "levychaos/recursive.hpp"

namespace levychaos::cli {

using nlohmann::json;

namespace {

constexpr double kCrosscheckSigmas = 4.0;
constexpr double kCrosscheckRelTol = 1e-10;

struct Options {
  std::string config;
  std::string output = "json";
  std::vector<double> eval_times;
  std::optional<double> t;
  std::optional<std::size_t> paths;
  std::optional<std::size_t> steps;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  bool antithetic = false;
  bool literal = false;
  int order = 4;
  bool raw = false;
  std::vector<int> m;
  bool moment_only = false;
};

json coefficients(const Polynomial& p) {
  json a = json::array();
  for (double c : p.coefficients()) a.push_back(c);
  return a;
}

json one_based(const std::vector<std::vector<int>>& blocks) {
  json a = json::array();
  for (const auto& b : blocks) {
    json bj = json::array();
    for (int i : b) bj.push_back(i + 1);
    a.push_back(bj);
  }
  return a;
}

json one_based(IndexMask mask) {
  json a = json::array();
  for (int i = 0; i < 32; ++i) {
    if ((mask >> i) & 1u) a.push_back(i + 1);
  }
  return a;
}

std::string rule_text(const std::vector<std::vector<int>>& blocks) {
  std::string s = "(";
  for (std::size_t r = 0; r < blocks.size(); ++r) {
    if (r) s += ",";
    s += "{";
    for (std::size_t i = 0; i < blocks[r].size(); ++i) {
      if (i) s += " ";
      s += std::to_string(blocks[r][i] + 1);
    }
    s += "}";
  }
  return s + ")";
}

std::string num(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

Config load(const Options& o) { return parse_config(read_json(o.config)); }

std::vector<double> eval_times(const Options& o, const Config& c) {
  return o.eval_times.empty() ? c.eval_times : o.eval_times;
}

SimulationConfig simulation(const Options& o, const Config& c) {
  SimulationConfig s = c.simulation.value_or(SimulationConfig{});
  if (o.paths) s.n_paths = *o.paths;
  if (o.steps) s.n_grid_steps = *o.steps;
  if (o.seed) s.seed = *o.seed;
  if (o.threads) s.threads = o.threads;
  if (o.antithetic) s.antithetic = true;
  return s;
}

void check_time(const ProblemSpec& spec, double t) {
  if (!(t >= 0.0) || t > spec.horizon()) {
    throw ConfigError("time " + num(t) + " lies outside [0, horizon]");
  }
}

int cmd_moment(const Options& o, std::ostream& out) {
  const Config c = load(o);
  MomentOptions mo;
  mo.literal_b_sum = o.literal;
  mo.threads = o.threads;
  const auto times = eval_times(o, c);
  for (double t : times) check_time(c.spec, t);

  json result;
  std::vector<double> values;
  if (c.spec.all_polynomial()) {
    const Polynomial p = moment_polynomial(c.spec, mo);
    result["moment_poly"] = coefficients(p);
    for (double t : times) values.push_back(p(t));
  } else {
    if (times.empty()) throw ConfigError("non-polynomial integrands need eval_times or --eval-times");
    for (double t : times) values.push_back(moment_at(c.spec, t, mo));
  }
  if (!times.empty()) {
    json v = json::array();
    for (std::size_t i = 0; i < times.size(); ++i) v.push_back({{"t", times[i]}, {"value", values[i]}});
    result["values"] = v;
  }

  if (o.output == "csv") {
    if (!times.empty()) {
      out << "t,value\n";
      for (std::size_t i = 0; i < times.size(); ++i) out << num(times[i]) << "," << num(values[i]) << "\n";
    } else {
      out << "degree,coefficient\n";
      const auto& cs = result["moment_poly"];
      for (std::size_t k = 0; k < cs.size(); ++k) out << k << "," << num(cs[k].get<double>()) << "\n";
    }
  } else {
    out << result.dump(2) << "\n";
  }
  return kOk;
}

const char* label_name(BlockLabel l) { return l == BlockLabel::gaussian ? "gaussian" : "jump"; }
const char* kind_name(IntegratorKind k) { return k == IntegratorKind::deterministic ? "dt" : "martingale"; }

int cmd_expand(const Options& o, std::ostream& out) {
  const Config c = load(o);
  const ChaosExpansion e = expand_product(c.spec);
  if (o.output == "csv") {
    out << "term,rule,blocks,coefficient\n";
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      const auto& t = e.terms[i];
      std::string blocks;
      for (std::size_t r = 0; r < t.blocks.size(); ++r) {
        if (r) blocks += " ";
        blocks += std::string(label_name(t.blocks[r].label)) + "/" + kind_name(t.blocks[r].kind);
      }
      out << i << ",\"" << rule_text(t.rule.blocks()) << "\"," << blocks << "," << num(t.coefficient) << "\n";
    }
    return kOk;
  }
  json terms = json::array();
  for (const auto& t : e.terms) {
    json blocks = json::array();
    for (const auto& b : t.blocks) {
      blocks.push_back({{"indices", one_based(b.indices)},
                        {"label", label_name(b.label)},
                        {"integrator", kind_name(b.kind)},
                        {"weight", b.weight}});
    }
    terms.push_back({{"rule", one_based(t.rule.blocks())},
                     {"blocks", blocks},
                     {"coefficient", t.coefficient},
                     {"deterministic", t.deterministic()}});
  }
  json result{{"terms", terms}, {"n_terms", e.terms.size()}};
  if (c.spec.all_polynomial()) result["expectation_poly"] = coefficients(expectation_polynomial(e));
  out << result.dump(2) << "\n";
  return kOk;
}

int cmd_levy_moments(const Options& o, std::ostream& out) {
  const json j = read_json(o.config);
  if (!j.is_object() || !j.contains("triplet")) throw ConfigError("config needs a 'triplet'");
  const bool full = j.contains("factors");
  const LevyTriplet triplet = full ? parse_config(j).spec.triplet() : parse_triplet(j.at("triplet"));
  if (!full) {
    for (const auto& [k, v] : j.items()) {
      if (k != "triplet" && k != "horizon" && k != "eval_times") throw ConfigError("unknown key '" + k + "'");
    }
  }
  if (o.order < 1) throw ConfigError("--N must be >= 1");
  const auto moments = o.raw ? levy_raw_moments(triplet, o.order) : levy_central_moments(triplet, o.order);
  if (o.output == "csv") {
    out << "order,degree,coefficient\n";
    for (int n = 1; n <= o.order; ++n) {
      const auto cs = moments[static_cast<std::size_t>(n)].coefficients();
      for (std::size_t k = 0; k < cs.size(); ++k) out << n << "," << k << "," << num(cs[k]) << "\n";
    }
    return kOk;
  }
  json table = json::array();
  for (int n = 1; n <= o.order; ++n) {
    table.push_back({{"order", n}, {"poly", coefficients(moments[static_cast<std::size_t>(n)])}});
  }
  out << json{{"central", !o.raw}, {"moments", table}}.dump(2) << "\n";
  return kOk;
}

int cmd_partitions(const Options& o, std::ostream& out) {
  std::vector<int> m = o.m;
  if (m.empty()) {
    if (o.config.empty()) throw ConfigError("partitions needs --m or a config file");
    m = load(o).spec.orders();
  }
  EnumerationOptions opts;
  if (o.moment_only) opts.min_block_size = 2;
  const auto rules = enumerate_rules(m, opts);
  if (o.output == "csv") {
    out << "index,rule\n";
    for (std::size_t i = 0; i < rules.size(); ++i) out << i << ",\"" << rule_text(rules[i].blocks()) << "\"\n";
    return kOk;
  }
  json list = json::array();
  for (const auto& r : rules) list.push_back(one_based(r.blocks()));
  out << json{{"orders", m}, {"n_rules", rules.size()}, {"rules", list}}.dump(2) << "\n";
  return kOk;
}

json estimate_json(const MCEstimate& e, double t) {
  return {{"t", t},
          {"estimate", e.estimate},
          {"std_error", e.std_error},
          {"n_paths", e.n_paths},
          {"elapsed_seconds", e.elapsed_seconds}};
}

std::optional<double> formula_value(const ProblemSpec& spec, double t, unsigned threads) {
  MomentOptions mo;
  mo.threads = threads;
  try {
    return moment_at(spec, t, mo);
  } catch (const UnsupportedError&) {
    return std::nullopt;
  }
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Config c = load(o);
  const double t = o.t.value_or(c.spec.horizon());
  check_time(c.spec, t);
  const SimulationConfig sim = simulation(o, c);
  const MCEstimate e = simulate_moment(c.spec, t, sim);
  json result = estimate_json(e, t);
  result["seed"] = sim.seed;
  result["n_grid_steps"] = sim.n_grid_steps;
  result["antithetic"] = sim.antithetic;
  if (const auto f = formula_value(c.spec, t, o.threads)) {
    result["formula"] = *f;
    result["z_score"] = e.z_score(*f);
  }
  if (o.output == "csv") {
    out << "t,estimate,std_error,n_paths,elapsed_seconds\n"
        << num(t) << "," << num(e.estimate) << "," << num(e.std_error) << "," << e.n_paths << ","
        << num(e.elapsed_seconds) << "\n";
  } else {
    out << result.dump(2) << "\n";
  }
  return kOk;
}

int cmd_crosscheck(const Options& o, std::ostream& out, std::ostream& err) {
  const Config c = load(o);
  const double t = o.t.value_or(c.spec.horizon());
  check_time(c.spec, t);
  MomentOptions mo;
  mo.threads = o.threads;
  const double formula = moment_at(c.spec, t, mo);
  json result{{"t", t}, {"formula", formula}};
  bool pass = true;
  if (c.spec.all_polynomial()) {
    const Polynomial fp = moment_polynomial(c.spec, mo);
    const Polynomial rp = recursive_product_moment(c.spec);
    const double rel = relative_coefficient_distance(fp, rp);
    result["formula_poly"] = coefficients(fp);
    result["recursive"] = rp(t);
    result["recursive_poly"] = coefficients(rp);
    result["recursive_rel_diff"] = rel;
    if (rel > kCrosscheckRelTol) pass = false;
  }
  const SimulationConfig sim = simulation(o, c);
  const MCEstimate e = simulate_moment(c.spec, t, sim);
  const double z = e.z_score(formula);
  result["monte_carlo"] = estimate_json(e, t);
  result["z_score"] = z;
  if (!(std::abs(z) <= kCrosscheckSigmas)) pass = false;
  result["pass"] = pass;
  out << result.dump(2) << "\n";
  if (!pass) err << "crosscheck failed (|z| = " << std::abs(z) << ")\n";
  return pass ? kOk : kCrosscheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Products and moments of iterated integrals driven by a Levy process"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* s, bool need_config) {
    auto* c = s->add_option("config", o.config, "problem file (JSON)");
    if (need_config) c->required()->check(CLI::ExistingFile);
    s->add_option("--output", o.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--threads", o.threads, "worker threads (default: $LEVYCHAOS_THREADS or all cores)");
  };
  auto add_sim = [&](CLI::App* s) {
    s->add_option("--t", o.t, "evaluation time (default: horizon)");
    s->add_option("--paths", o.paths, "number of paths")->check(CLI::PositiveNumber);
    s->add_option("--steps", o.steps, "uniform grid steps")->check(CLI::PositiveNumber);
    s->add_option("--seed", o.seed, "master seed");
    s->add_flag("--antithetic", o.antithetic, "antithetic Brownian pairs");
  };

  auto* moment = app.add_subcommand("moment", "moment polynomial or values at times");
  add_common(moment, true);
  moment->add_option("--eval-times", o.eval_times, "times to evaluate at")->delimiter(',');
  moment->add_flag("--literal", o.literal, "use the literal sum over Gaussian sets");

  auto* expand = app.add_subcommand("expand", "symbolic product expansion");
  add_common(expand, true);

  auto* levy = app.add_subcommand("levy-moments", "moments of the Levy process itself");
  add_common(levy, true);
  levy->add_option("--N", o.order, "highest order")->required();
  levy->add_flag("--raw", o.raw, "non-centred moments");

  auto* parts = app.add_subcommand("partitions", "identification rules of m");
  add_common(parts, false);
  parts->add_option("--m", o.m, "orders m_1,...,m_N")->delimiter(',');
  parts->add_flag("--moment", o.moment_only, "only rules without singleton blocks");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of the moment");
  add_common(sim, true);
  add_sim(sim);

  auto* cross = app.add_subcommand("crosscheck", "formula, recursion and Monte Carlo side by side");
  add_common(cross, true);
  add_sim(cross);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (moment->parsed()) return cmd_moment(o, out);
    if (expand->parsed()) return cmd_expand(o, out);
    if (levy->parsed()) return cmd_levy_moments(o, out);
    if (parts->parsed()) return cmd_partitions(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (cross->parsed()) return cmd_crosscheck(o, out, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacityError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace levychaos::cli
