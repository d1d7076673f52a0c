// Scenario description for the synthetic multi-soil drives: vehicle,
// soil catalog and map, commanded wheel speed, drawbar (tool) pull, sensor
// noise and the wheel-speed controller. A scenario plus its seed fully
// determines a run.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "traction/dynamics.hpp"
#include "traction/soil.hpp"

namespace traction {

// Piecewise-linear time profile; values are held flat past the ends.
struct Profile {
  std::vector<std::pair<double, double>> points;  // (t, value), t increasing

  double at(double t) const;
  void validate(const std::string& what) const;
};

// Drawbar pull: either a time profile or a constant value per soil type
// (the tool digs in differently on different grounds).
struct DrawbarSpec {
  bool per_soil = false;
  Profile profile;
  std::map<std::string, double> by_soil;

  double at(double t, const std::string& soil_name) const;
};

struct NoiseSpec {
  double omega_sd = 0.05;   // rad/s
  double v_sd = 0.03;       // m/s
  double torque_sd = 0.1;   // N m
  double f_dx_sd = 0.0;     // N
};

// Per-wheel PI speed controller with output saturation; the same commanded
// speed is applied to all wheels.
struct ControllerSpec {
  double kp = 15.0;          // N m per rad/s
  double ki = 30.0;          // N m per rad
  double max_torque = 40.0;  // N m
};

struct Scenario {
  std::string name = "scenario";
  dynamics::VehicleParams vehicle;
  soil::SoilCatalog catalog;
  soil::SoilMap map;
  Profile command;        // commanded wheel speed, rad/s
  DrawbarSpec drawbar;
  NoiseSpec noise;
  ControllerSpec controller;
  double duration = 10.0;             // s
  double dt = 0.01;                   // sensor period, s
  int substeps = 20;                  // integrator substeps per sensor period
  std::uint64_t seed = 1;
  double transition_halfwidth = 0.5;  // m, half-width of soil transition zones

  void validate() const;
};

}  // namespace traction
