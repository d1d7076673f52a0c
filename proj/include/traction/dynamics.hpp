// Longitudinal wheel and vehicle-body dynamics: slip/adhesion/efficiency
// kinematics, the per-wheel torque balance, whole-vehicle force balance, and
// a fixed-step RK4 integrator. All quantities are SI. Every function here is
// pure, so concurrent calls are safe.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>

#include "traction/linalg.hpp"

namespace traction::dynamics {

struct WheelParams {
  double mass = 0.0;            // kg
  double inertia = 0.0;         // kg m^2
  double rolling_radius = 0.0;  // m, dynamic rolling radius (fixed per wheel)
  double rho_t = 0.0;           // tire-deformation rolling resistance coeff
  double rho_omega = 0.0;       // bearing friction coefficient, N s
};

struct VehicleParams {
  double mass = 0.0;  // kg, whole vehicle
  std::array<WheelParams, 4> wheels{};
  double front_load_fraction = 0.5;  // static share of weight on front axle
  double gravity = 9.81;             // m/s^2

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  // Static per-wheel vertical loads: {front, front, rear, rear}.
  std::array<double, 4> static_wheel_loads() const;
};

struct WheelDynState {
  double omega = 0.0;    // rad/s
  double torque = 0.0;   // N m, drive torque M_d
  double f_h = 0.0;      // N, horizontal ground force
  double f_z = 0.0;      // N, vertical load
};

struct BodyDynState {
  double v = 0.0;      // m/s
  double f_dx = 0.0;   // N, drawbar pull, longitudinal component
  double rho_s = 0.0;  // soil rolling resistance coefficient
};

// Slip ratio in [-1, 1]: 0 pure rolling, 1 spinning in place, -1 locked
// wheel. The indeterminate case v = omega = 0 is defined as 0 (a standing
// vehicle has no slip).
double slip_ratio(double v, double omega, double rolling_radius);

// F_h / F_z; throws std::domain_error when f_z <= 0.
double adhesion_coefficient(double f_h, double f_z);

// Net traction ratio kappa = mu - rho_s.
double net_traction(double mu, double rho_s);

// Energy efficiency kappa/(kappa+rho) * (1-s); throws std::domain_error when
// kappa + rho == 0.
double efficiency(double kappa, double rho, double s);

// Wheel torque balance: (M_d - r_d F_h - r_d F_t - r_d rho_omega omega)/J_w
// with F_t = rho_t F_z.
double wheel_angular_accel(const WheelDynState& s, const WheelParams& p);

// Body force balance: (sum F_h - F_dx - rho_s m g)/m.
double body_accel(double f_h_sum, double f_dx, double rho_s, double m,
                  double g);

struct IntegrationError : std::runtime_error {
  IntegrationError(const char* what, Vec state)
      : std::runtime_error(what), state(std::move(state)) {}
  Vec state;  // the state at which the derivative turned non-finite
};

using DerivativeFn = std::function<Vec(const Vec& state, const Vec& input)>;

// Classical fourth-order Runge-Kutta step; inputs are zero-order held across
// the sub-stages. Throws IntegrationError if any stage derivative is
// non-finite.
Vec rk4_step(const Vec& state, const Vec& input, const DerivativeFn& deriv,
             double dt);

}  // namespace traction::dynamics
