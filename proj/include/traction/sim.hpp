// Scenario-driven longitudinal simulation: closes the loop between the wheel
// and body dynamics and the mu(s) soil characteristic, tracks the commanded
// wheel speed with a PI controller, injects seeded sensor noise, and emits
// one SensorRecord per sensor period with noiseless truth columns alongside.
#pragma once

#include <stdexcept>
#include <vector>

#include "traction/analysis.hpp"
#include "traction/records.hpp"
#include "traction/scenario.hpp"

namespace traction {

struct SimulationError : std::runtime_error {
  SimulationError(const char* what, double last_valid_time)
      : std::runtime_error(what), last_valid_time(last_valid_time) {}
  double last_valid_time;
};

std::vector<SensorRecord> simulate(const Scenario& scenario);

// Soil sections and transition zones of a simulated run, in time. A
// transition zone covers the interval during which the vehicle position is
// within transition_halfwidth of a soil-map breakpoint; sections are the
// gaps between zones, labeled with the soil under the vehicle.
struct SectionLayout {
  std::vector<analysis::TimeInterval> sections;
  std::vector<analysis::TimeInterval> transitions;
};

SectionLayout section_layout(std::span<const SensorRecord> truth_log,
                             const Scenario& scenario);

// True soil-switch timestamps (position crossing a map breakpoint).
std::vector<double> switch_times(std::span<const SensorRecord> truth_log,
                                 const Scenario& scenario);

}  // namespace traction
