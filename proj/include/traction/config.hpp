// JSON config loading for scenarios and estimator settings. Validation
// failures throw ConfigError with the offending config path (e.g.
// "scenario.json: vehicle.wheels[2].inertia must be > 0").
#pragma once

#include <stdexcept>
#include <string>

#include "traction/estimator.hpp"
#include "traction/scenario.hpp"

namespace traction {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

EstimatorConfig load_estimator_config(const std::string& path);
void save_estimator_config(const EstimatorConfig& cfg, const std::string& path);

}  // namespace traction
