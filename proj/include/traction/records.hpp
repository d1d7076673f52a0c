// Row types shared between the simulator, the estimator and the analysis
// tools. Truth columns in SensorRecord exist for evaluation only; the
// estimation path never reads them.
#pragma once

#include <array>
#include <string>

namespace traction {

struct SensorRecord {
  double timestamp = 0.0;             // s
  std::array<double, 4> omega{};      // measured wheel speeds, rad/s
  double v = 0.0;                     // measured ground speed, m/s
  std::array<double, 4> torque{};     // measured drive torques, N m
  double f_zf = 0.0;                  // front vertical load per wheel, N
  double f_dx = 0.0;                  // drawbar pull, N

  // --- ground-truth extras (evaluation only)
  std::array<double, 4> truth_mu{};
  double truth_rho_s = 0.0;
  double truth_position = 0.0;  // m along the path
  std::string truth_soil;
};

// State layout of the 10-dimensional traction filter.
namespace state_index {
inline constexpr std::size_t omega0 = 0;  // .. omega3 = 3
inline constexpr std::size_t v = 4;
inline constexpr std::size_t mu0 = 5;  // .. mu3 = 8
inline constexpr std::size_t rho_s = 9;
inline constexpr std::size_t count = 10;
}  // namespace state_index

struct EstimateRecord {
  double timestamp = 0.0;
  std::array<double, 10> state{};     // posterior mean, state_index layout
  std::array<double, 10> variance{};  // posterior covariance diagonal
  std::array<double, 4> slip{};       // per-wheel slip from the posterior
  double lambda = 0.0;                // supervisor blend factor
  double adaptation = 1.0;            // scalar of A_k
};

}  // namespace traction
