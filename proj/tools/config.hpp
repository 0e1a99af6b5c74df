#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "levychaos/montecarlo.hpp"
#include "levychaos/problem.hpp"

namespace levychaos::cli {

/// A parsed problem file. Every key is validated before any computation runs.
struct Config {
  ProblemSpec spec;
  std::optional<SimulationConfig> simulation;
  std::vector<double> eval_times;
};

/// Only the triplet, for commands that need nothing else.
LevyTriplet parse_triplet(const nlohmann::json& j);

Config parse_config(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace levychaos::cli
