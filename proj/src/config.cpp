#include "traction/config.hpp"

#include <fstream>

#include <json.hpp>

#include "io_util.hpp"

namespace traction {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

const json& require(const json& j, const char* key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double number_at(const json& j, const char* key, const std::string& path) {
  return number(require(j, key, path), path + "." + key);
}

double number_or(const json& j, const char* key, double fallback,
                 const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  return number(*it, path + "." + key);
}

bool bool_or(const json& j, const char* key, bool fallback,
             const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) fail(path + "." + key, "expected a boolean");
  return it->get<bool>();
}

std::string string_at(const json& j, const char* key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

json load_json(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(file + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(file + ": top level must be an object");
  return j;
}

dynamics::WheelParams parse_wheel(const json& j, const std::string& path) {
  dynamics::WheelParams w;
  w.mass = number_at(j, "mass", path);
  w.inertia = number_at(j, "inertia", path);
  w.rolling_radius = number_at(j, "rolling_radius", path);
  w.rho_t = number_at(j, "rho_t", path);
  w.rho_omega = number_at(j, "rho_omega", path);
  return w;
}

dynamics::VehicleParams parse_vehicle(const json& j, const std::string& path) {
  dynamics::VehicleParams v;
  v.mass = number_at(j, "mass", path);
  v.front_load_fraction = number_at(j, "front_load_fraction", path);
  v.gravity = number_or(j, "gravity", 9.81, path);
  if (j.contains("wheels")) {
    const json& ws = j.at("wheels");
    if (!ws.is_array() || ws.size() != 4)
      fail(path + ".wheels", "expected an array of 4 wheel objects");
    for (std::size_t i = 0; i < 4; ++i)
      v.wheels[i] = parse_wheel(ws[i], path + ".wheels[" + std::to_string(i) + "]");
  } else {
    const json& w = require(j, "wheel", path);
    const dynamics::WheelParams shared = parse_wheel(w, path + ".wheel");
    v.wheels = {shared, shared, shared, shared};
  }
  try {
    v.validate();
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return v;
}

Profile parse_profile(const json& j, const std::string& path) {
  Profile p;
  const json& pts = require(j, "points", path);
  if (!pts.is_array()) fail(path + ".points", "expected an array of [t, value] pairs");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const json& pt = pts[i];
    const std::string at = path + ".points[" + std::to_string(i) + "]";
    if (!pt.is_array() || pt.size() != 2) fail(at, "expected [t, value]");
    p.points.emplace_back(number(pt[0], at + "[0]"), number(pt[1], at + "[1]"));
  }
  try {
    p.validate(path);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

json profile_json(const Profile& p) {
  json pts = json::array();
  for (const auto& [t, v] : p.points) pts.push_back({t, v});
  return json{{"points", pts}};
}

json vehicle_json(const dynamics::VehicleParams& v) {
  json wheels = json::array();
  for (const auto& w : v.wheels)
    wheels.push_back({{"mass", w.mass},
                      {"inertia", w.inertia},
                      {"rolling_radius", w.rolling_radius},
                      {"rho_t", w.rho_t},
                      {"rho_omega", w.rho_omega}});
  return json{{"mass", v.mass},
              {"front_load_fraction", v.front_load_fraction},
              {"gravity", v.gravity},
              {"wheels", wheels}};
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  const json j = load_json(path);
  Scenario s;
  try {
    if (j.contains("name")) {
      if (!j.at("name").is_string()) fail("name", "expected a string");
      s.name = j.at("name").get<std::string>();
    }
    s.duration = number_at(j, "duration", "");
    s.dt = number_at(j, "dt", "");
    s.seed = static_cast<std::uint64_t>(number_or(j, "seed", 1.0, ""));
    s.substeps = static_cast<int>(number_or(j, "substeps", 20.0, ""));
    s.transition_halfwidth = number_or(j, "transition_halfwidth", 0.5, "");

    s.vehicle = parse_vehicle(require(j, "vehicle", ""), "vehicle");

    const json& soils = require(j, "soils", "");
    if (!soils.is_array() || soils.empty())
      fail("soils", "expected a nonempty array");
    for (std::size_t i = 0; i < soils.size(); ++i) {
      const std::string at = "soils[" + std::to_string(i) + "]";
      const json& sj = soils[i];
      soil::SoilCurveParams sp;
      sp.name = string_at(sj, "name", at);
      sp.a = number_at(sj, "a", at);
      sp.p = number_at(sj, "p", at);
      sp.alpha1 = number_at(sj, "alpha1", at);
      sp.alpha2 = number_at(sj, "alpha2", at);
      sp.rho_s = number_at(sj, "rho_s", at);
      try {
        s.catalog.add(sp);
      } catch (const soil::ConfigError& e) {
        fail(at, e.what());
      }
    }

    const json& mp = require(j, "soil_map", "");
    if (!mp.is_array() || mp.empty()) fail("soil_map", "expected a nonempty array");
    std::vector<std::pair<double, std::string>> breaks;
    for (std::size_t i = 0; i < mp.size(); ++i) {
      const std::string at = "soil_map[" + std::to_string(i) + "]";
      const json& e = mp[i];
      if (!e.is_array() || e.size() != 2 || !e[1].is_string())
        fail(at, "expected [position, soil_name]");
      breaks.emplace_back(number(e[0], at + "[0]"), e[1].get<std::string>());
    }
    try {
      s.map = soil::SoilMap(std::move(breaks), s.catalog);
    } catch (const soil::ConfigError& e) {
      fail("soil_map", e.what());
    }

    s.command = parse_profile(require(j, "command", ""), "command");

    const json& db = require(j, "drawbar", "");
    if (db.contains("per_soil")) {
      const json& ps = db.at("per_soil");
      if (!ps.is_object()) fail("drawbar.per_soil", "expected an object");
      s.drawbar.per_soil = true;
      for (const auto& [key, val] : ps.items())
        s.drawbar.by_soil[key] = number(val, "drawbar.per_soil." + key);
    } else {
      s.drawbar.per_soil = false;
      s.drawbar.profile = parse_profile(db, "drawbar");
    }

    if (j.contains("noise")) {
      const json& nj = j.at("noise");
      s.noise.omega_sd = number_or(nj, "omega_sd", s.noise.omega_sd, "noise");
      s.noise.v_sd = number_or(nj, "v_sd", s.noise.v_sd, "noise");
      s.noise.torque_sd = number_or(nj, "torque_sd", s.noise.torque_sd, "noise");
      s.noise.f_dx_sd = number_or(nj, "f_dx_sd", s.noise.f_dx_sd, "noise");
    }
    if (j.contains("controller")) {
      const json& cj = j.at("controller");
      s.controller.kp = number_or(cj, "kp", s.controller.kp, "controller");
      s.controller.ki = number_or(cj, "ki", s.controller.ki, "controller");
      s.controller.max_torque =
          number_or(cj, "max_torque", s.controller.max_torque, "controller");
    }

    s.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return s;
}

void save_scenario(const Scenario& s, const std::string& path) {
  json soils = json::array();
  for (const auto& sp : s.catalog.entries())
    soils.push_back({{"name", sp.name},
                     {"a", sp.a},
                     {"p", sp.p},
                     {"alpha1", sp.alpha1},
                     {"alpha2", sp.alpha2},
                     {"rho_s", sp.rho_s}});
  json mp = json::array();
  for (const auto& [pos, name] : s.map.breakpoints()) mp.push_back({pos, name});

  json db;
  if (s.drawbar.per_soil) {
    json ps = json::object();
    for (const auto& [name, f] : s.drawbar.by_soil) ps[name] = f;
    db = json{{"per_soil", ps}};
  } else {
    db = profile_json(s.drawbar.profile);
  }

  const json j{{"name", s.name},
               {"duration", s.duration},
               {"dt", s.dt},
               {"seed", s.seed},
               {"substeps", s.substeps},
               {"transition_halfwidth", s.transition_halfwidth},
               {"vehicle", vehicle_json(s.vehicle)},
               {"soils", soils},
               {"soil_map", mp},
               {"command", profile_json(s.command)},
               {"drawbar", db},
               {"noise",
                {{"omega_sd", s.noise.omega_sd},
                 {"v_sd", s.noise.v_sd},
                 {"torque_sd", s.noise.torque_sd},
                 {"f_dx_sd", s.noise.f_dx_sd}}},
               {"controller",
                {{"kp", s.controller.kp},
                 {"ki", s.controller.ki},
                 {"max_torque", s.controller.max_torque}}}};
  io::write_file_atomic(path, j.dump(2) + "\n");
}

EstimatorConfig load_estimator_config(const std::string& path) {
  const json j = load_json(path);
  EstimatorConfig cfg;
  try {
    cfg.vehicle = parse_vehicle(require(j, "vehicle", ""), "vehicle");

    if (j.contains("filter")) {
      const json& f = j.at("filter");
      cfg.ut.alpha = number_or(f, "alpha", cfg.ut.alpha, "filter");
      cfg.ut.beta = number_or(f, "beta", cfg.ut.beta, "filter");
      cfg.ut.kappa = number_or(f, "kappa", cfg.ut.kappa, "filter");
      cfg.q_speed = number_or(f, "q_speed", cfg.q_speed, "filter");
      cfg.q_mu = number_or(f, "q_mu", cfg.q_mu, "filter");
      cfg.q_rho = number_or(f, "q_rho", cfg.q_rho, "filter");
      cfg.sigma_omega = number_or(f, "sigma_omega", cfg.sigma_omega, "filter");
      cfg.sigma_v = number_or(f, "sigma_v", cfg.sigma_v, "filter");
      cfg.init_mu = number_or(f, "init_mu", cfg.init_mu, "filter");
      cfg.init_rho_s = number_or(f, "init_rho_s", cfg.init_rho_s, "filter");
      cfg.init_var_mu = number_or(f, "init_var_mu", cfg.init_var_mu, "filter");
      cfg.init_var_rho_s =
          number_or(f, "init_var_rho_s", cfg.init_var_rho_s, "filter");
      cfg.init_var_omega = number_or(f, "init_var_omega", cfg.init_var_omega, "filter");
      cfg.init_var_v = number_or(f, "init_var_v", cfg.init_var_v, "filter");
    }
    if (j.contains("adaptation")) {
      const json& a = j.at("adaptation");
      cfg.adaptation_enabled = bool_or(a, "enabled", true, "adaptation");
      cfg.adaptation.window = static_cast<std::size_t>(
          number_or(a, "window", double(cfg.adaptation.window), "adaptation"));
      cfg.adaptation.a_min = number_or(a, "a_min", cfg.adaptation.a_min, "adaptation");
      cfg.adaptation.a_max = number_or(a, "a_max", cfg.adaptation.a_max, "adaptation");
    }
    if (j.contains("supervisor")) {
      const json& sv = j.at("supervisor");
      cfg.supervisor_enabled = bool_or(sv, "enabled", true, "supervisor");
      cfg.supervisor.window = static_cast<std::size_t>(
          number_or(sv, "window", double(cfg.supervisor.window), "supervisor"));
      cfg.supervisor.low = number_or(sv, "low", cfg.supervisor.low, "supervisor");
      cfg.supervisor.high = number_or(sv, "high", cfg.supervisor.high, "supervisor");
      cfg.supervisor.omega_scale =
          number_or(sv, "omega_scale", cfg.sigma_omega, "supervisor");
      cfg.supervisor.v_scale = number_or(sv, "v_scale", cfg.sigma_v, "supervisor");
      cfg.supervisor.lambda_min =
          number_or(sv, "lambda_min", cfg.supervisor.lambda_min, "supervisor");
      cfg.supervisor.lambda_max =
          number_or(sv, "lambda_max", cfg.supervisor.lambda_max, "supervisor");
    } else {
      cfg.supervisor.omega_scale = cfg.sigma_omega;
      cfg.supervisor.v_scale = cfg.sigma_v;
    }

    cfg.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return cfg;
}

void save_estimator_config(const EstimatorConfig& cfg, const std::string& path) {
  const json j{
      {"vehicle", vehicle_json(cfg.vehicle)},
      {"filter",
       {{"alpha", cfg.ut.alpha},
        {"beta", cfg.ut.beta},
        {"kappa", cfg.ut.kappa},
        {"q_speed", cfg.q_speed},
        {"q_mu", cfg.q_mu},
        {"q_rho", cfg.q_rho},
        {"sigma_omega", cfg.sigma_omega},
        {"sigma_v", cfg.sigma_v},
        {"init_mu", cfg.init_mu},
        {"init_rho_s", cfg.init_rho_s},
        {"init_var_mu", cfg.init_var_mu},
        {"init_var_rho_s", cfg.init_var_rho_s},
        {"init_var_omega", cfg.init_var_omega},
        {"init_var_v", cfg.init_var_v}}},
      {"adaptation",
       {{"enabled", cfg.adaptation_enabled},
        {"window", cfg.adaptation.window},
        {"a_min", cfg.adaptation.a_min},
        {"a_max", cfg.adaptation.a_max}}},
      {"supervisor",
       {{"enabled", cfg.supervisor_enabled},
        {"window", cfg.supervisor.window},
        {"low", cfg.supervisor.low},
        {"high", cfg.supervisor.high},
        {"omega_scale", cfg.supervisor.omega_scale},
        {"v_scale", cfg.supervisor.v_scale},
        {"lambda_min", cfg.supervisor.lambda_min},
        {"lambda_max", cfg.supervisor.lambda_max}}}};
  io::write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace traction
