#pragma once

#include <string>

#include <json.hpp>

#include "microevo/neat.hpp"
#include "microevo/scenario.hpp"

namespace microevo {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything a training run needs: hyper-parameters plus the scenario set.
struct RunConfig {
    EvolutionConfig evolution;
    TrainingSet scenarios;
    double move_scale = kDefaultMoveScale;
    int checkpoint_interval = 5;  // generations between checkpoints
    bool reseed_each_generation = true;

    std::string hash() const;  // stable fingerprint for manifests/genome metadata
};

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& j);

nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Parses a config file and applies MICROEVO_* environment overrides
/// (e.g. MICROEVO_GENERATIONS=10 overrides evolution.generations).
/// Throws ConfigError with position-anchored diagnostics on bad input.
RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& config, const std::string& path);

/// The training preset matching the published simulation experiment:
/// the simulation hyper-parameter column and the ten training scenarios.
RunConfig paper_sim_config();

}  // namespace microevo
