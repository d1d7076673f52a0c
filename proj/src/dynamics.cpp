#include "traction/dynamics.hpp"

#include <cmath>
#include <string>

#include "traction/kernels.hpp"

namespace traction::dynamics {

void VehicleParams::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("vehicle.mass must be > 0");
  if (!(gravity > 0.0)) throw std::invalid_argument("vehicle.gravity must be > 0");
  if (!(front_load_fraction > 0.0 && front_load_fraction < 1.0))
    throw std::invalid_argument("vehicle.front_load_fraction must be in (0,1)");
  double wheel_mass = 0.0;
  for (std::size_t i = 0; i < wheels.size(); ++i) {
    const WheelParams& w = wheels[i];
    const std::string at = "vehicle.wheels[" + std::to_string(i) + "].";
    if (!(w.mass > 0.0)) throw std::invalid_argument(at + "mass must be > 0");
    if (!(w.inertia > 0.0)) throw std::invalid_argument(at + "inertia must be > 0");
    if (!(w.rolling_radius > 0.0))
      throw std::invalid_argument(at + "rolling_radius must be > 0");
    if (w.rho_t < 0.0) throw std::invalid_argument(at + "rho_t must be >= 0");
    if (w.rho_omega < 0.0) throw std::invalid_argument(at + "rho_omega must be >= 0");
    wheel_mass += w.mass;
  }
  if (mass < wheel_mass)
    throw std::invalid_argument("vehicle.mass is less than the sum of wheel masses");
}

std::array<double, 4> VehicleParams::static_wheel_loads() const {
  const double total = mass * gravity;
  const double front = front_load_fraction * total / 2.0;
  const double rear = (1.0 - front_load_fraction) * total / 2.0;
  return {front, front, rear, rear};
}

double slip_ratio(double v, double omega, double rolling_radius) {
  const double av = std::fabs(v);
  const double aw = rolling_radius * std::fabs(omega);
  if (av <= aw) {
    if (aw == 0.0) return 0.0;  // standing vehicle, slip undefined -> 0
    return 1.0 - av / aw;
  }
  return -1.0 + aw / av;
}

double adhesion_coefficient(double f_h, double f_z) {
  if (!(f_z > 0.0))
    throw std::domain_error("adhesion_coefficient: vertical load must be > 0");
  return f_h / f_z;
}

double net_traction(double mu, double rho_s) { return mu - rho_s; }

double efficiency(double kappa, double rho, double s) {
  const double denom = kappa + rho;
  if (denom == 0.0)
    throw std::domain_error("efficiency: kappa + rho must be nonzero");
  return kappa / denom * (1.0 - s);
}

double wheel_angular_accel(const WheelDynState& s, const WheelParams& p) {
  const double f_t = p.rho_t * s.f_z;
  return (s.torque - p.rolling_radius * s.f_h - p.rolling_radius * f_t -
          p.rolling_radius * p.rho_omega * s.omega) /
         p.inertia;
}

double body_accel(double f_h_sum, double f_dx, double rho_s, double m,
                  double g) {
  return (f_h_sum - f_dx - rho_s * m * g) / m;
}

namespace {

void check_finite(const Vec& k, const Vec& at) {
  if (!k.all_finite())
    throw IntegrationError("rk4_step: non-finite derivative", at);
}

}  // namespace

Vec rk4_step(const Vec& state, const Vec& input, const DerivativeFn& deriv,
             double dt) {
  const std::size_t n = state.size();
  const Vec k1 = deriv(state, input);
  check_finite(k1, state);

  Vec stage(n);
  kernels::scaled_add(state.data(), k1.data(), dt / 2.0, n, stage.data());
  const Vec k2 = deriv(stage, input);
  check_finite(k2, stage);

  kernels::scaled_add(state.data(), k2.data(), dt / 2.0, n, stage.data());
  const Vec k3 = deriv(stage, input);
  check_finite(k3, stage);

  kernels::scaled_add(state.data(), k3.data(), dt, n, stage.data());
  const Vec k4 = deriv(stage, input);
  check_finite(k4, stage);

  Vec out(n);
  kernels::rk4_combine(state.data(), k1.data(), k2.data(), k3.data(), k4.data(),
                       dt, n, out.data());
  return out;
}

}  // namespace traction::dynamics
