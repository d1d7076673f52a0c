#include "traction/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace traction {

double Profile::at(double t) const {
  if (points.empty()) return 0.0;
  if (t <= points.front().first) return points.front().second;
  if (t >= points.back().first) return points.back().second;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (t <= points[i].first) {
      const auto& [t0, v0] = points[i - 1];
      const auto& [t1, v1] = points[i];
      const double f = (t - t0) / (t1 - t0);
      return v0 + f * (v1 - v0);
    }
  }
  return points.back().second;
}

void Profile::validate(const std::string& what) const {
  if (points.empty())
    throw std::invalid_argument(what + ": profile must have at least one point");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].first > points[i - 1].first))
      throw std::invalid_argument(what + ": profile times must be strictly increasing");
}

double DrawbarSpec::at(double t, const std::string& soil_name) const {
  if (!per_soil) return profile.at(t);
  const auto it = by_soil.find(soil_name);
  if (it == by_soil.end())
    throw std::invalid_argument("drawbar: no pull value for soil '" + soil_name + "'");
  return it->second;
}

void Scenario::validate() const {
  vehicle.validate();
  if (!(duration > 0.0)) throw std::invalid_argument("scenario.duration must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("scenario.dt must be > 0");
  if (substeps < 1) throw std::invalid_argument("scenario.substeps must be >= 1");
  if (!(transition_halfwidth >= 0.0))
    throw std::invalid_argument("scenario.transition_halfwidth must be >= 0");
  if (noise.omega_sd < 0.0 || noise.v_sd < 0.0 || noise.torque_sd < 0.0 ||
      noise.f_dx_sd < 0.0)
    throw std::invalid_argument("scenario.noise: standard deviations must be >= 0");
  command.validate("scenario.command");
  if (!drawbar.per_soil) drawbar.profile.validate("scenario.drawbar");
  if (catalog.size() == 0) throw std::invalid_argument("scenario.soils must be nonempty");
  if (map.breakpoints().empty())
    throw std::invalid_argument("scenario.soil_map must be nonempty");
  if (drawbar.per_soil)
    for (const auto& bp : map.breakpoints()) drawbar.at(0.0, bp.second);
}

}  // namespace traction
