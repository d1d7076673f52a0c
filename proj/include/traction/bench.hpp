// Built-in benchmark scenarios and the acceptance suite behind the `bench`
// subcommand. The scenarios are synthetic multi-soil drives over the built-in
// catalog (analogs of the field experiments, not reconstructions); every
// criterion below runs against seeded, fully deterministic runs and writes
// its artifacts under an output directory.
#pragma once

#include <string>
#include <vector>

#include "traction/estimator.hpp"
#include "traction/scenario.hpp"

namespace traction::bench {

// The mobile-robot vehicle used by all benchmarks: 139 kg, 54/85 front/rear
// split, 0.4 m wheel diameter.
dynamics::VehicleParams benchmark_vehicle();

// Multi-soil drive with varying speed commands; grass between fine, coarse,
// wet and hard patches. Tracking-fidelity and section benchmarks run here.
Scenario multi2_analog();

// Constant-speed drive over grass/fine/wet/grass/coarse/grass, including the
// fine->wet switch the detection criterion deliberately excludes.
Scenario multi1_analog();

// Single hard->grass switch with clean sensors, for the adaptation
// comparison.
Scenario soil_step_scenario();

// Uniform fine soil, constant command; detection false-positive control and
// steady-noise comparison.
Scenario stationary_scenario();

// Slow drawbar ramp covering slip operating points on one soil.
Scenario sweep_scenario(const std::string& soil_name);

// Estimator settings used by the tracking benchmarks.
EstimatorConfig benchmark_estimator();

// Estimator settings for the adaptation benchmark: deliberately over-confident
// nominal Q (the divergence regime the adaptation exists to fix) and R/
// supervisor scales matched to the clean-sensor scenarios.
EstimatorConfig step_benchmark_estimator(bool adaptive);

struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs all acceptance criteria, writing artifacts (scenario files, sensor and
// estimate logs, fit tables, section stats, detection events) under out_dir.
// Deterministic: a second invocation produces byte-identical files.
std::vector<CriterionResult> run_acceptance(const std::string& out_dir);

}  // namespace traction::bench
