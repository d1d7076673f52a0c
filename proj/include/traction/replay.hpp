// Streams a sensor log through the traction estimator. Records that fail a
// step are skipped and counted; a run with more than 1% skips is failed.
#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "traction/estimator.hpp"
#include "traction/records.hpp"

namespace traction {

struct ReplayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReplayResult {
  std::vector<EstimateRecord> estimates;
  std::size_t total = 0;
  std::size_t skipped = 0;
};

ReplayResult replay(std::span<const SensorRecord> log,
                    const EstimatorConfig& cfg);

}  // namespace traction
