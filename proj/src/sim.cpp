#include "traction/sim.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

namespace traction {
namespace {

// Resistance terms in Eqs. (2)/(3) are printed for forward driving; the
// simulator fades them in with the motion direction so that a standing
// vehicle is an exact equilibrium.
double direction(double value, double eps) {
  return std::clamp(value / eps, -1.0, 1.0);
}

constexpr double kMotionEps = 1e-3;

// The quasi-static mu(s) force law degenerates near standstill (ds/dv is
// singular in the wheel surface speed) and explodes for deep negative slip.
// Fading traction in with the surface speed and capping the force keeps the
// launch regime integrable without touching the model anywhere it is valid.
constexpr double kTractionFadeSpeed = 0.1;  // m/s of wheel surface speed

double wheel_ground_force(const soil::SoilCurveParams& ground, double v,
                          double omega, double r_d, double f_z) {
  const double s = dynamics::slip_ratio(v, omega, r_d);
  const double fade = std::clamp(r_d * std::fabs(omega) / kTractionFadeSpeed,
                                 0.0, 1.0);
  const double f_h = soil::mu_of_s(ground, s) * f_z * fade;
  const double cap = 2.0 * ground.a * f_z;
  return std::clamp(f_h, -cap, cap);
}

struct SimState {
  std::array<double, 4> omega{};
  double v = 0.0;
  double pos = 0.0;
};

}  // namespace

std::vector<SensorRecord> simulate(const Scenario& sc) {
  sc.validate();

  const auto f_z = sc.vehicle.static_wheel_loads();
  const double f_zf = f_z[0];

  std::mt19937_64 rng(sc.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SimState st;
  // Start rolling, consistent with the initial command; the quasi-static
  // force law has no useful launch-from-standstill regime.
  if (const double cmd0 = sc.command.at(0.0); cmd0 > 0.0) {
    for (std::size_t i = 0; i < 4; ++i) st.omega[i] = cmd0;
    double r_mean = 0.0;
    for (const auto& w : sc.vehicle.wheels) r_mean += w.rolling_radius / 4.0;
    st.v = r_mean * cmd0 * 0.95;
  }
  std::array<double, 4> integ{};  // controller integrators

  const std::size_t steps = static_cast<std::size_t>(std::llround(sc.duration / sc.dt));
  std::vector<SensorRecord> records;
  records.reserve(steps + 1);

  const double sub_dt = sc.dt / static_cast<double>(sc.substeps);

  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * sc.dt;
    const soil::SoilCurveParams& ground =
        sc.map.soil_at(sc.catalog, std::max(st.pos, 0.0));
    // The towed tool resists motion; its pull fades out when the vehicle
    // stands, exactly like the rolling-resistance terms.
    const double f_dx_tool = sc.drawbar.at(t, ground.name);
    const double f_dx = f_dx_tool * direction(st.v, kMotionEps);
    const double cmd = sc.command.at(t);

    // PI speed controller, zero-order held over the sensor period.
    std::array<double, 4> torque{};
    for (std::size_t i = 0; i < 4; ++i) {
      const double err = cmd - st.omega[i];
      double m = sc.controller.kp * err + integ[i];
      const bool high = m > sc.controller.max_torque;
      const bool low = m < -sc.controller.max_torque;
      m = std::clamp(m, -sc.controller.max_torque, sc.controller.max_torque);
      // anti-windup: only integrate when not pushing further into saturation
      if (!(high && err > 0.0) && !(low && err < 0.0))
        integ[i] += sc.controller.ki * err * sc.dt;
      torque[i] = m;
    }

    SensorRecord rec;
    rec.timestamp = t;
    rec.f_zf = f_zf;
    rec.truth_rho_s = ground.rho_s;
    rec.truth_position = st.pos;
    rec.truth_soil = ground.name;
    for (std::size_t i = 0; i < 4; ++i)
      rec.truth_mu[i] =
          wheel_ground_force(ground, st.v, st.omega[i],
                             sc.vehicle.wheels[i].rolling_radius, f_z[i]) /
          f_z[i];
    for (std::size_t i = 0; i < 4; ++i)
      rec.omega[i] = st.omega[i] + sc.noise.omega_sd * gauss(rng);
    rec.v = st.v + sc.noise.v_sd * gauss(rng);
    for (std::size_t i = 0; i < 4; ++i)
      rec.torque[i] = torque[i] + sc.noise.torque_sd * gauss(rng);
    rec.f_dx = f_dx + sc.noise.f_dx_sd * gauss(rng);
    records.push_back(std::move(rec));

    if (k == steps) break;

    // Integrate one sensor period; torque, drawbar and soil held.
    auto deriv = [&](const Vec& x, const Vec&) {
      Vec dx(6);
      double f_h_sum = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        const double f_h = wheel_ground_force(
            ground, x[4], x[i], sc.vehicle.wheels[i].rolling_radius, f_z[i]);
        dynamics::WheelDynState w;
        w.omega = x[i];
        w.torque = torque[i];
        w.f_h = f_h;
        // f_z feeds only the F_t resistance here; fade with wheel direction
        w.f_z = f_z[i] * direction(x[i], kMotionEps);
        dx[i] = dynamics::wheel_angular_accel(w, sc.vehicle.wheels[i]);
        f_h_sum += f_h;
      }
      dx[4] = dynamics::body_accel(f_h_sum, f_dx_tool * direction(x[4], kMotionEps),
                                   ground.rho_s * direction(x[4], kMotionEps),
                                   sc.vehicle.mass, sc.vehicle.gravity);
      dx[5] = x[4];
      return dx;
    };

    Vec x(6);
    for (std::size_t i = 0; i < 4; ++i) x[i] = st.omega[i];
    x[4] = st.v;
    x[5] = st.pos;
    const Vec u(0);
    try {
      for (int s = 0; s < sc.substeps; ++s)
        x = dynamics::rk4_step(x, u, deriv, sub_dt);
    } catch (const dynamics::IntegrationError&) {
      throw SimulationError("simulation diverged", t);
    }
    if (!x.all_finite()) throw SimulationError("simulation diverged", t);

    for (std::size_t i = 0; i < 4; ++i) st.omega[i] = x[i];
    st.v = x[4];
    st.pos = x[5];
  }
  return records;
}

SectionLayout section_layout(std::span<const SensorRecord> truth_log,
                             const Scenario& scenario) {
  SectionLayout out;
  if (truth_log.empty()) return out;

  const auto& breaks = scenario.map.breakpoints();
  const double hw = scenario.transition_halfwidth;
  const double t_end = truth_log.back().timestamp + scenario.dt;

  auto first_time_at = [&](double position) -> std::optional<double> {
    for (const SensorRecord& r : truth_log)
      if (r.truth_position >= position) return r.timestamp;
    return std::nullopt;
  };

  double section_start = truth_log.front().timestamp;
  std::string label = breaks.front().second;
  for (std::size_t j = 1; j < breaks.size(); ++j) {
    const double b = breaks[j].first;
    const auto z0 = first_time_at(b - hw);
    if (!z0) break;  // never reached this breakpoint
    const auto z1 = first_time_at(b + hw);
    const double zone_end = z1.value_or(t_end);
    out.transitions.push_back({*z0, zone_end, "transition"});
    if (*z0 > section_start)
      out.sections.push_back({section_start, *z0, label});
    section_start = zone_end;
    label = breaks[j].second;
  }
  if (section_start < t_end)
    out.sections.push_back({section_start, t_end, label});
  return out;
}

std::vector<double> switch_times(std::span<const SensorRecord> truth_log,
                                 const Scenario& scenario) {
  std::vector<double> out;
  const auto& breaks = scenario.map.breakpoints();
  for (std::size_t j = 1; j < breaks.size(); ++j) {
    for (const SensorRecord& r : truth_log) {
      if (r.truth_position >= breaks[j].first) {
        out.push_back(r.timestamp);
        break;
      }
    }
  }
  return out;
}

}  // namespace traction
