// tractionkit: simulate multi-soil drives, estimate traction parameters from
// sensor logs, fit adhesion-slip curves, compute section statistics, detect
// ground changes, and run the built-in benchmark suite.
//
// Exit codes: 0 success, 1 usage error, 2 data/config error, 3 numerical
// failure.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "traction/analysis.hpp"
#include "traction/bench.hpp"
#include "traction/config.hpp"
#include "traction/csv.hpp"
#include "traction/replay.hpp"
#include "traction/sim.hpp"

namespace {

using namespace traction;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_triple(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      try {
        out.push_back(std::stod(cur));
      } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": malformed number '" + cur + "'");
      }
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (out.size() != 3)
    throw UsageError(std::string(what) + ": expected three comma-separated values");
  return out;
}

int run_simulate(const std::string& scenario_path, const std::string& out) {
  const Scenario sc = load_scenario(scenario_path);
  const auto log = simulate(sc);
  csv::write_sensor_csv(out, log);
  std::printf("simulate: %zu records -> %s\n", log.size(), out.c_str());
  return 0;
}

int run_estimate(const std::string& log_path, const std::string& config_path,
                 const std::string& out) {
  const EstimatorConfig cfg = load_estimator_config(config_path);
  const auto log = csv::read_sensor_csv(log_path);
  const ReplayResult res = replay(log, cfg);
  csv::write_estimate_csv(out, res.estimates);
  std::printf("estimate: %zu records, %zu skipped -> %s\n", res.total,
              res.skipped, out.c_str());
  return 0;
}

int run_fit(const std::string& estimates_path, const std::string& shape_text,
            const std::string& bins_text, int wheel, const std::string& out,
            const std::string& fit_out) {
  const auto shape_v = parse_triple(shape_text, "--shape");
  const auto bins_v = parse_triple(bins_text, "--bins");
  const analysis::CurveShape shape{shape_v[0], shape_v[1], shape_v[2]};
  const double width = bins_v[0], s_min = bins_v[1], s_max = bins_v[2];
  if (!(width > 0.0) || !(s_min < s_max))
    throw UsageError("--bins: need width > 0 and min < max");
  if (wheel < 0 || wheel > 4) throw UsageError("--wheel: expected 0..4");

  const auto estimates = csv::read_estimate_csv(estimates_path);
  std::vector<std::pair<double, double>> samples;
  for (const auto& e : estimates)
    for (int w = 0; w < 4; ++w) {
      if (wheel != 0 && w != wheel - 1) continue;
      samples.emplace_back(e.slip[w], e.state[5 + w]);
    }
  const auto bins = analysis::bin_data(samples, width, s_min, s_max);
  const auto fit = analysis::fit_scale(bins, shape);
  csv::write_bins_csv(out, bins, fit);
  if (!fit_out.empty()) csv::write_fit_csv(fit_out, fit);
  std::printf("fit: a=%.6g nrmse=%.4g r2=%.4g bins_used=%zu -> %s\n", fit.a,
              fit.nrmse, fit.r2, fit.bins_used, out.c_str());
  return 0;
}

int run_sections(const std::string& estimates_path,
                 const std::string& scenario_path,
                 const std::string& sensor_path, int wheel,
                 const std::string& out) {
  if (wheel < 1 || wheel > 4) throw UsageError("--wheel: expected 1..4");
  const Scenario sc = load_scenario(scenario_path);
  const auto estimates = csv::read_estimate_csv(estimates_path);

  // Section boundaries live in position space; recover the position/time
  // mapping from the provided sensor log, or re-simulate the scenario.
  const std::vector<SensorRecord> truth_log =
      sensor_path.empty() ? simulate(sc) : csv::read_sensor_csv(sensor_path);
  const SectionLayout layout = section_layout(truth_log, sc);

  std::vector<analysis::SectionSample> est_samples;
  for (const auto& e : estimates)
    est_samples.push_back(
        {e.timestamp, e.slip[wheel - 1], e.state[5 + (wheel - 1)]});
  auto stats = analysis::section_stats(est_samples, layout.sections,
                                       layout.transitions, "estimated");

  if (!sensor_path.empty()) {
    // measured-source rows: slip from measured speeds, mu from the truth
    // columns (the synthetic analog of the wheel force sensor)
    std::vector<analysis::SectionSample> meas;
    for (const auto& rec : truth_log) {
      const double s = dynamics::slip_ratio(
          rec.v, rec.omega[wheel - 1],
          sc.vehicle.wheels[wheel - 1].rolling_radius);
      meas.push_back({rec.timestamp, s, rec.truth_mu[wheel - 1]});
    }
    const auto meas_stats = analysis::section_stats(
        meas, layout.sections, layout.transitions, "measured");
    stats.insert(stats.end(), meas_stats.begin(), meas_stats.end());
  }

  csv::write_sections_csv(out, stats);
  std::printf("sections: %zu rows -> %s\n", stats.size(), out.c_str());
  return 0;
}

int run_detect(const std::string& estimates_path, std::size_t window,
               double threshold, const std::string& out) {
  const auto estimates = csv::read_estimate_csv(estimates_path);
  std::vector<std::pair<double, double>> t_mu;
  for (const auto& e : estimates)
    t_mu.emplace_back(e.timestamp, 0.25 * (e.state[5] + e.state[6] +
                                           e.state[7] + e.state[8]));
  const auto events = analysis::detect_ground_change(t_mu, window, threshold);
  csv::write_events_csv(out, events);
  std::printf("detect: %zu events -> %s\n", events.size(), out.c_str());
  for (double t : events) std::printf("  change at t=%.2f s\n", t);
  return 0;
}

int run_bench(const std::string& out_dir) {
  const auto results = bench::run_acceptance(out_dir);
  bool all = true;
  std::printf("%-4s %-45s %s\n", "", "criterion", "result");
  for (const auto& r : results) {
    std::printf("%-4s %-45s %s  %s\n", r.id.c_str(), r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("artifacts under %s/\n", out_dir.c_str());
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"traction parameter identification toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, log_path, config_path, estimates_path;
  std::string out, fit_out, sensor_path;
  std::string shape_text = "0.52,0.01,-11.36";
  std::string bins_text = "0.01,0.05,0.60";
  std::string out_dir = "bench_out";
  int wheel_fit = 0, wheel_sections = 4;
  std::size_t window = 500;
  double threshold = 5.0;

  auto* sim_cmd = app.add_subcommand("simulate", "run a scenario simulation");
  sim_cmd->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  sim_cmd->add_option("--out", out, "output sensor CSV")->required();

  auto* est_cmd =
      app.add_subcommand("estimate", "replay a sensor log through the AUKF-FS");
  est_cmd->add_option("--log", log_path, "sensor CSV")->required();
  est_cmd->add_option("--config", config_path, "estimator config JSON")
      ->required();
  est_cmd->add_option("--out", out, "output estimate CSV")->required();

  auto* fit_cmd =
      app.add_subcommand("fit", "bin estimates by slip and fit the mu(s) scale");
  fit_cmd->add_option("--estimates", estimates_path, "estimate CSV")->required();
  fit_cmd->add_option("--shape", shape_text, "p,alpha1,alpha2");
  fit_cmd->add_option("--bins", bins_text, "width,min,max");
  fit_cmd->add_option("--wheel", wheel_fit, "wheel 1..4, or 0 for all");
  fit_cmd->add_option("--out", out, "output bin-table CSV")->required();
  fit_cmd->add_option("--fit-out", fit_out, "optional fit-summary CSV");

  auto* sec_cmd = app.add_subcommand(
      "sections", "per-soil-section statistics with transition exclusion");
  sec_cmd->add_option("--estimates", estimates_path, "estimate CSV")->required();
  sec_cmd->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  sec_cmd->add_option("--log", sensor_path,
                      "sensor CSV (avoids re-simulation, adds measured rows)");
  sec_cmd->add_option("--wheel", wheel_sections, "wheel 1..4");
  sec_cmd->add_option("--out", out, "output CSV")->required();

  auto* det_cmd =
      app.add_subcommand("detect", "windowed mean-shift ground change events");
  det_cmd->add_option("--estimates", estimates_path, "estimate CSV")->required();
  det_cmd->add_option("--window", window, "window length, steps");
  det_cmd->add_option("--threshold", threshold, "shift threshold, pooled SDs");
  det_cmd->add_option("--out", out, "output CSV")->required();

  auto* bench_cmd =
      app.add_subcommand("bench", "run the built-in acceptance benchmarks");
  bench_cmd->add_option("--out-dir", out_dir, "artifact directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sim_cmd->parsed()) return run_simulate(scenario_path, out);
    if (est_cmd->parsed()) return run_estimate(log_path, config_path, out);
    if (fit_cmd->parsed())
      return run_fit(estimates_path, shape_text, bins_text, wheel_fit, out,
                     fit_out);
    if (sec_cmd->parsed())
      return run_sections(estimates_path, scenario_path, sensor_path,
                          wheel_sections, out);
    if (det_cmd->parsed())
      return run_detect(estimates_path, window, threshold, out);
    if (bench_cmd->parsed()) return run_bench(out_dir);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const csv::DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const soil::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
