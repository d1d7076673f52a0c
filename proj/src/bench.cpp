#include "traction/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "traction/analysis.hpp"
#include "traction/config.hpp"
#include "traction/csv.hpp"
#include "traction/replay.hpp"
#include "traction/sim.hpp"
#include "traction/ukf.hpp"

namespace traction::bench {
namespace {

namespace fs = std::filesystem;
using analysis::CurveShape;

std::map<std::string, double> tool_pull() {
  return {{"grass", 25.0},
          {"fine", 160.0},
          {"wet", 170.0},
          {"coarse", 190.0},
          {"hard", 300.0}};
}

// Drawbar force that produces steady slip s on the given soil (bisection on
// the force balance mu(s) m g = F_dx + rho_s m g).
double drawbar_for_slip(const soil::SoilCurveParams& ground, double s,
                        const dynamics::VehicleParams& vehicle) {
  const double mg = vehicle.mass * vehicle.gravity;
  return soil::mu_of_s(ground, s) * mg - ground.rho_s * mg;
}

}  // namespace

dynamics::VehicleParams benchmark_vehicle() {
  dynamics::VehicleParams v;
  v.mass = 139.0;
  v.front_load_fraction = 54.0 / 139.0;
  v.gravity = 9.81;
  for (auto& w : v.wheels) {
    w.mass = 5.0;
    w.inertia = 0.5;
    w.rolling_radius = 0.2;
    w.rho_t = 0.02;
    w.rho_omega = 0.01;
  }
  return v;
}

Scenario multi2_analog() {
  Scenario sc;
  sc.name = "multi2";
  sc.vehicle = benchmark_vehicle();
  sc.catalog = soil::SoilCatalog::builtin();
  sc.map = soil::SoilMap({{0.0, "grass"},
                          {25.0, "fine"},
                          {55.0, "grass"},
                          {80.0, "coarse"},
                          {110.0, "grass"},
                          {135.0, "wet"},
                          {165.0, "grass"},
                          {190.0, "hard"},
                          {225.0, "grass"}},
                         sc.catalog);
  sc.command.points = {{0.0, 2.5},   {60.0, 2.5},  {80.0, 3.0},  {140.0, 3.0},
                       {160.0, 2.2}, {220.0, 2.2}, {240.0, 2.8}, {300.0, 2.8},
                       {320.0, 2.4}, {380.0, 2.4}, {400.0, 3.0}, {460.0, 3.0},
                       {480.0, 2.5}, {500.0, 2.5}};
  sc.drawbar.per_soil = true;
  sc.drawbar.by_soil = tool_pull();
  sc.duration = 500.0;
  sc.seed = 20;
  return sc;
}

Scenario multi1_analog() {
  Scenario sc;
  sc.name = "multi1";
  sc.vehicle = benchmark_vehicle();
  sc.catalog = soil::SoilCatalog::builtin();
  sc.map = soil::SoilMap({{0.0, "grass"},
                          {35.0, "fine"},
                          {70.0, "wet"},
                          {105.0, "grass"},
                          {140.0, "coarse"},
                          {175.0, "grass"}},
                         sc.catalog);
  sc.command.points = {{0.0, 2.5}};
  sc.drawbar.per_soil = true;
  sc.drawbar.by_soil = tool_pull();
  sc.duration = 450.0;
  sc.seed = 10;
  return sc;
}

Scenario soil_step_scenario() {
  Scenario sc = multi1_analog();
  sc.name = "soil_step";
  sc.map = soil::SoilMap({{0.0, "hard"}, {60.0, "grass"}}, sc.catalog);
  sc.duration = 250.0;
  sc.seed = 30;
  sc.noise.omega_sd = 0.01;
  sc.noise.v_sd = 0.01;
  return sc;
}

Scenario stationary_scenario() {
  Scenario sc = multi1_analog();
  sc.name = "stationary";
  sc.map = soil::SoilMap({{0.0, "fine"}}, sc.catalog);
  sc.duration = 250.0;
  sc.seed = 40;
  sc.noise.omega_sd = 0.01;
  sc.noise.v_sd = 0.01;
  return sc;
}

Scenario sweep_scenario(const std::string& soil_name) {
  Scenario sc;
  sc.name = "sweep_" + soil_name;
  sc.vehicle = benchmark_vehicle();
  sc.catalog = soil::SoilCatalog::builtin();
  sc.map = soil::SoilMap({{0.0, soil_name}}, sc.catalog);
  sc.command.points = {{0.0, 2.5}};
  const auto& ground = sc.catalog.at(soil_name);
  const double s_top = soil_name == "grass" ? 0.30 : 0.50;
  const double f_lo =
      std::max(drawbar_for_slip(ground, 0.05, sc.vehicle), 5.0);
  const double f_hi = drawbar_for_slip(ground, s_top, sc.vehicle);
  sc.drawbar.per_soil = false;
  sc.drawbar.profile.points = {{0.0, f_lo}, {20.0, f_lo}, {280.0, f_hi}};
  if (soil_name == "hard") sc.controller.max_torque = 80.0;
  sc.duration = 300.0;
  sc.seed = 101;
  return sc;
}

EstimatorConfig benchmark_estimator() {
  EstimatorConfig cfg;
  cfg.vehicle = benchmark_vehicle();
  cfg.q_mu = 1e-4;
  return cfg;
}

EstimatorConfig step_benchmark_estimator(bool adaptive) {
  EstimatorConfig cfg = benchmark_estimator();
  cfg.q_mu = 1e-9;
  cfg.sigma_omega = 0.01;
  cfg.sigma_v = 0.01;
  cfg.supervisor.omega_scale = 0.01;
  cfg.supervisor.v_scale = 0.01;
  cfg.supervisor.window = 50;
  cfg.adaptation_enabled = adaptive;
  cfg.supervisor_enabled = adaptive;
  return cfg;
}

namespace {

constexpr std::size_t kInstrumentedWheel = 3;  // rear right
constexpr std::size_t kDetectWindow = 500;     // 5 s at dt = 0.01
constexpr double kDetectThreshold = 5.0;

bool in_any(double t, const std::vector<analysis::TimeInterval>& zones) {
  for (const auto& z : zones)
    if (t >= z.t0 && t < z.t1) return true;
  return false;
}

struct MeanSd {
  double mean = 0.0, sd = 0.0;
  std::size_t n = 0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd out;
  out.n = xs.size();
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double acc = 0.0;
  for (double x : xs) acc += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  return out;
}

std::string fmt_detail(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

// One full artifact-producing pipeline over the built-in scenarios. Also the
// substrate of the determinism criterion: two invocations must produce
// byte-identical files.
struct PipelineData {
  std::vector<SensorRecord> multi2_log;
  std::vector<EstimateRecord> multi2_est;
  SectionLayout multi2_layout;

  std::vector<SensorRecord> multi1_log;
  std::vector<EstimateRecord> multi1_est;
  std::vector<double> multi1_switches;
  std::vector<double> multi1_events;
  std::vector<double> stationary_events;

  std::vector<analysis::FitResult> sweep_fits;  // catalog order
  double tracking_seconds = 0.0;
  double sweep_seconds = 0.0;
};

std::vector<std::pair<double, double>> mean_mu_series(
    const std::vector<EstimateRecord>& est) {
  std::vector<std::pair<double, double>> out;
  out.reserve(est.size());
  for (const auto& e : est)
    out.emplace_back(e.timestamp, 0.25 * (e.state[5] + e.state[6] +
                                          e.state[7] + e.state[8]));
  return out;
}

PipelineData run_pipeline(const fs::path& dir) {
  fs::create_directories(dir);
  PipelineData d;
  const EstimatorConfig cfg = benchmark_estimator();
  save_estimator_config(cfg, (dir / "estimator.json").string());

  // multi2: tracking + sections
  const auto t0 = std::chrono::steady_clock::now();
  {
    const Scenario sc = multi2_analog();
    save_scenario(sc, (dir / "multi2.scenario.json").string());
    d.multi2_log = simulate(sc);
    csv::write_sensor_csv((dir / "multi2_sensor.csv").string(), d.multi2_log);
    d.multi2_est = replay(d.multi2_log, cfg).estimates;
    csv::write_estimate_csv((dir / "multi2_estimates.csv").string(),
                            d.multi2_est);
    d.multi2_layout = section_layout(d.multi2_log, sc);

    std::vector<analysis::SectionSample> est_samples;
    for (const auto& e : d.multi2_est)
      est_samples.push_back({e.timestamp, e.slip[kInstrumentedWheel],
                             e.state[5 + kInstrumentedWheel]});
    const auto stats =
        analysis::section_stats(est_samples, d.multi2_layout.sections,
                                d.multi2_layout.transitions, "estimated");
    csv::write_sections_csv((dir / "multi2_sections.csv").string(), stats);
  }
  d.tracking_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  // multi1: detection benchmark + stationary control
  {
    const Scenario sc = multi1_analog();
    save_scenario(sc, (dir / "multi1.scenario.json").string());
    d.multi1_log = simulate(sc);
    csv::write_sensor_csv((dir / "multi1_sensor.csv").string(), d.multi1_log);
    d.multi1_est = replay(d.multi1_log, cfg).estimates;
    csv::write_estimate_csv((dir / "multi1_estimates.csv").string(),
                            d.multi1_est);
    d.multi1_switches = switch_times(d.multi1_log, sc);
    d.multi1_events = analysis::detect_ground_change(
        mean_mu_series(d.multi1_est), kDetectWindow, kDetectThreshold);
    csv::write_events_csv((dir / "multi1_events.csv").string(),
                          d.multi1_events);

    save_scenario(soil_step_scenario(), (dir / "soil_step.scenario.json").string());
    const Scenario st = stationary_scenario();
    save_scenario(st, (dir / "stationary.scenario.json").string());
    const auto st_log = simulate(st);
    const auto st_est = replay(st_log, cfg).estimates;
    d.stationary_events = analysis::detect_ground_change(
        mean_mu_series(st_est), kDetectWindow, kDetectThreshold);
    csv::write_events_csv((dir / "stationary_events.csv").string(),
                          d.stationary_events);
  }

  // per-soil sweeps: estimate, bin, fit
  const auto t1 = std::chrono::steady_clock::now();
  const auto catalog = soil::SoilCatalog::builtin();
  for (const auto& ground : catalog.entries()) {
    const Scenario sc = sweep_scenario(ground.name);
    save_scenario(sc, (dir / (sc.name + ".scenario.json")).string());
    const auto log = simulate(sc);
    const auto est = replay(log, cfg).estimates;

    std::vector<std::pair<double, double>> samples;
    for (const auto& e : est) {
      if (e.timestamp < 20.0) continue;  // initial transient
      for (std::size_t w = 0; w < 4; ++w)
        samples.emplace_back(e.slip[w], e.state[5 + w]);
    }
    const auto bins = analysis::bin_data(samples, 0.01, 0.05, 0.60);
    const CurveShape shape{ground.p, ground.alpha1, ground.alpha2};
    const auto fit = analysis::fit_scale(bins, shape);
    d.sweep_fits.push_back(fit);
    csv::write_bins_csv((dir / ("sweep_" + ground.name + "_bins.csv")).string(),
                        bins, fit);
    csv::write_fit_csv((dir / ("sweep_" + ground.name + "_fit.csv")).string(),
                       fit);
  }
  d.sweep_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t1)
          .count();
  return d;
}

// ---- criterion implementations ------------------------------------------

CriterionResult criterion_tracking(const PipelineData& d) {
  std::vector<double> est, truth;
  for (std::size_t i = 0; i < d.multi2_est.size(); ++i) {
    const double t = d.multi2_est[i].timestamp;
    if (in_any(t, d.multi2_layout.transitions)) continue;
    est.push_back(d.multi2_est[i].state[5 + kInstrumentedWheel]);
    truth.push_back(d.multi2_log[i].truth_mu[kInstrumentedWheel]);
  }
  const auto good = analysis::goodness(truth, est);
  const double r2 = good.r2.value_or(-1.0);
  const double nrmse = good.nrmse.value_or(1e9);
  CriterionResult r{"C1", "tracking fidelity (multi2 analog)", false, ""};
  r.pass = r2 >= 0.80 && nrmse <= 0.10;
  r.detail = fmt_detail("R2=%.3f (>=0.80) NRMSE=%.3f (<=0.10) runtime=%.1fs",
                        r2, nrmse, d.tracking_seconds);
  return r;
}

CriterionResult criterion_curve_fit(const PipelineData& d) {
  const auto catalog = soil::SoilCatalog::builtin();
  bool pass = true;
  double worst_rel = 0.0, worst_noiseless = 0.0;
  for (std::size_t i = 0; i < catalog.entries().size(); ++i) {
    const auto& ground = catalog.entries()[i];
    const double rel =
        std::fabs(d.sweep_fits[i].a - ground.a) / ground.a;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 0.05) pass = false;

    // noiseless variant: exact samples at bin midpoints, bin, fit
    std::vector<std::pair<double, double>> samples;
    for (int b = 0; b < 55; ++b) {
      const double mid = 0.05 + 0.01 * b + 0.005;
      samples.emplace_back(mid, soil::mu_of_s(ground, mid));
    }
    const auto bins = analysis::bin_data(samples, 0.01, 0.05, 0.60);
    const auto fit = analysis::fit_scale(
        bins, CurveShape{ground.p, ground.alpha1, ground.alpha2});
    worst_noiseless = std::max(worst_noiseless, std::fabs(fit.a - ground.a));
    if (std::fabs(fit.a - ground.a) > 1e-10 || fit.r2 < 1.0 - 1e-12)
      pass = false;
  }
  CriterionResult r{"C2", "curve-fit round trip (5 soils)", pass, ""};
  r.detail = fmt_detail(
      "worst |a-a*|/a*=%.1f%% (<=5%%), noiseless |a-a*|=%.1e (<=1e-10), "
      "runtime=%.1fs",
      100.0 * worst_rel, worst_noiseless, d.sweep_seconds);
  return r;
}

Mat random_spd(std::mt19937& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = u(rng) * scale;
  Mat spd = a * a.transposed();
  for (std::size_t i = 0; i < n; ++i) spd(i, i) += 0.01 * scale * scale;
  return spd;
}

Mat random_mat(std::mt19937& rng, std::size_t r, std::size_t c, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

double frob(const Mat& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * m(r, c);
  return std::sqrt(s);
}

// Gauss-Jordan inverse; the Kalman oracle deliberately avoids the library's
// Cholesky solve path.
Mat gauss_inverse(Mat a) {
  const std::size_t n = a.rows();
  Mat inv = Mat::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(piv, j), a(col, j));
      std::swap(inv(piv, j), inv(col, j));
    }
    const double dgl = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= dgl;
      inv(col, j) /= dgl;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

CriterionResult criterion_ukf_kf_equivalence() {
  const std::size_t n = 10, m = 5;
  const ukf::UtParams ut{1.0, 2.0, 0.0};
  double worst = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937 rng(1000 + seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    Mat a = random_mat(rng, n, n, 1.0);
    a *= 0.9 / frob(a);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.4;
    const Mat h = random_mat(rng, m, n, 1.0);
    const Mat q = random_spd(rng, n, 0.2);
    const Mat rr = random_spd(rng, m, 0.3);

    ukf::GaussianEstimate est{Vec(n), random_spd(rng, n, 1.0)};
    for (std::size_t i = 0; i < n; ++i) est.mean[i] = u(rng);
    Vec kf_x = est.mean;
    Mat kf_p = est.cov;

    auto f = [&a](const Vec& x, const Vec&) { return a * x; };
    auto hf = [&h](const Vec& x) { return h * x; };

    for (int step = 0; step < 100; ++step) {
      Vec y(m);
      for (std::size_t i = 0; i < m; ++i) y[i] = u(rng);

      const auto set = ukf::generate_sigma_points(est, ut);
      const auto prior = ukf::predict(set, f, Vec(0), q);
      const auto prior_set = ukf::generate_sigma_points(prior, ut);
      est = ukf::update(prior, prior_set, hf, y, rr).posterior;

      // direct Kalman recursion
      const Vec xp = a * kf_x;
      const Mat pp = a * kf_p * a.transposed() + q;
      const Mat s = h * pp * h.transposed() + rr;
      const Mat k = pp * h.transposed() * gauss_inverse(s);
      kf_x = xp + k * (y - h * xp);
      kf_p = pp - k * s * k.transposed();

      double me = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        me = std::max(me, std::fabs(est.mean[i] - kf_x[i]));
        scale = std::max(scale, std::fabs(kf_x[i]));
      }
      worst = std::max(worst, me / (1.0 + scale));
      worst = std::max(worst, frob(est.cov - kf_p) / (1.0 + frob(kf_p)));
    }
  }
  CriterionResult r{"C3", "UKF/KF equivalence (n=10, m=5, 20 seeds)",
                    worst <= 1e-8, ""};
  r.detail = fmt_detail("worst relative deviation=%.2e (<=1e-8)", worst);
  return r;
}

CriterionResult criterion_ut_exactness() {
  const std::size_t n = 10;
  const ukf::UtParams ut{1.0, 2.0, 0.0};
  double worst = 0.0;
  for (int seed = 0; seed < 50; ++seed) {
    std::mt19937 rng(2000 + seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    ukf::GaussianEstimate est{Vec(n), random_spd(rng, n, 1.0)};
    for (std::size_t i = 0; i < n; ++i) est.mean[i] = u(rng);
    const Mat a = random_mat(rng, n, n, 1.0);

    const auto set = ukf::generate_sigma_points(est, ut);
    auto f = [&a](const Vec& x, const Vec&) { return a * x; };
    const auto out = ukf::predict(set, f, Vec(0), Mat(n, n));

    const Vec want_mean = a * est.mean;
    const Mat want_cov = a * est.cov * a.transposed();
    double me = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      me = std::max(me, std::fabs(out.mean[i] - want_mean[i]));
      scale = std::max(scale, std::fabs(want_mean[i]));
    }
    worst = std::max(worst, me / (1.0 + scale));
    worst = std::max(worst, frob(out.cov - want_cov) / (1.0 + frob(want_cov)));
  }
  CriterionResult r{"C4", "unscented-transform exactness (50 seeds)",
                    worst <= 1e-10, ""};
  r.detail = fmt_detail("worst relative deviation=%.2e (<=1e-10)", worst);
  return r;
}

CriterionResult criterion_slip_properties() {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  std::uniform_real_distribution<double> ur(0.05, 1.0);
  bool pass = true;
  for (int i = 0; i < 10000 && pass; ++i) {
    const double v = u(rng), w = u(rng), rd = ur(rng);
    const double s = dynamics::slip_ratio(v, w, rd);
    if (!(s >= -1.0 && s <= 1.0)) pass = false;
    // branch continuity at |v| = r|w|: both formulas give zero
    const double edge = rd * std::fabs(w);
    if (std::fabs(dynamics::slip_ratio(edge, w, rd)) > 1e-12) pass = false;
    if (edge > 0.0 && std::fabs(-1.0 + rd * std::fabs(w) / edge) > 1e-12)
      pass = false;
  }
  if (dynamics::slip_ratio(2.0, 10.0, 0.2) != 0.0) pass = false;
  if (dynamics::slip_ratio(0.0, 5.0, 0.2) != 1.0) pass = false;
  if (dynamics::slip_ratio(1.0, 0.0, 0.2) != -1.0) pass = false;
  CriterionResult r{"C5", "slip-formula properties (10^4 randomized)", pass,
                    "range, branch continuity, boundary cases"};
  return r;
}

CriterionResult criterion_adaptation() {
  const Scenario sc = soil_step_scenario();
  const auto log = simulate(sc);
  const double t_sw = switch_times(log, sc).at(0);

  // post-switch steady truth
  double mu_new = 0.0;
  std::size_t n_new = 0;
  for (const auto& rec : log)
    if (rec.timestamp >= t_sw + 20.0 && rec.timestamp < t_sw + 30.0) {
      mu_new += rec.truth_mu[kInstrumentedWheel];
      ++n_new;
    }
  mu_new /= static_cast<double>(n_new);

  auto reconverge_steps = [&](bool adaptive) -> std::size_t {
    const auto est = replay(log, step_benchmark_estimator(adaptive)).estimates;
    std::size_t i_sw = 0;
    while (log[i_sw].timestamp < t_sw) ++i_sw;
    std::size_t ok_run = 0;
    for (std::size_t i = i_sw; i < est.size(); ++i) {
      if (std::fabs(est[i].state[5 + kInstrumentedWheel] - mu_new) <= 0.05)
        ++ok_run;
      else
        ok_run = 0;
      if (ok_run == 100) return i - 99 - i_sw;
    }
    return est.size() - i_sw;
  };
  const std::size_t steps_aukf = reconverge_steps(true);
  const std::size_t steps_ukf = reconverge_steps(false);

  const auto st_log = simulate(stationary_scenario());
  auto steady_variance = [&](bool adaptive) {
    const auto est = replay(st_log, step_benchmark_estimator(adaptive)).estimates;
    std::vector<double> xs;
    for (const auto& e : est)
      if (e.timestamp > 50.0) xs.push_back(e.state[5 + kInstrumentedWheel]);
    const MeanSd ms = mean_sd(xs);
    return ms.sd * ms.sd;
  };
  const double var_aukf = steady_variance(true);
  const double var_ukf = steady_variance(false);
  const double ratio = var_aukf / var_ukf;

  CriterionResult r{"C6", "adaptation re-convergence and noise bound", false,
                    ""};
  r.pass = steps_aukf < steps_ukf && ratio <= 1.5;
  r.detail = fmt_detail(
      "reconverge AUKF-FS=%zu < UKF=%zu steps; steady var ratio=%.3f (<=1.5)",
      steps_aukf, steps_ukf, ratio);
  return r;
}

CriterionResult criterion_detection(const PipelineData& d) {
  const Scenario sc = multi1_analog();
  // checked switches: all except fine<->wet (positions 35->70 boundary)
  const auto& breaks = sc.map.breakpoints();
  bool pass = true;
  std::ostringstream detail;
  const double two_windows = 2.0 * kDetectWindow * sc.dt;
  std::size_t checked = 0;
  for (std::size_t j = 1; j < breaks.size(); ++j) {
    const std::string& from = breaks[j - 1].second;
    const std::string& to = breaks[j].second;
    const bool fine_wet = (from == "fine" && to == "wet") ||
                          (from == "wet" && to == "fine");
    if (fine_wet) continue;
    if (j - 1 >= d.multi1_switches.size()) {
      pass = false;
      break;
    }
    const double t_sw = d.multi1_switches[j - 1];
    std::size_t hits = 0;
    for (double t : d.multi1_events)
      if (std::fabs(t - t_sw) <= two_windows) ++hits;
    if (hits != 1) pass = false;
    ++checked;
  }
  if (!d.stationary_events.empty()) pass = false;
  CriterionResult r{"C7", "ground-change detection (multi1 analog)", pass, ""};
  r.detail = fmt_detail(
      "%zu/%zu checked switches hit exactly once within 2 windows; "
      "stationary events=%zu (=0)",
      checked, checked, d.stationary_events.size());
  return r;
}

CriterionResult criterion_sections(const PipelineData& d) {
  std::vector<analysis::SectionSample> est_samples, truth_samples;
  for (std::size_t i = 0; i < d.multi2_est.size(); ++i) {
    const auto& e = d.multi2_est[i];
    est_samples.push_back(
        {e.timestamp, e.slip[kInstrumentedWheel], e.state[5 + kInstrumentedWheel]});
    truth_samples.push_back(
        {e.timestamp, 0.0, d.multi2_log[i].truth_mu[kInstrumentedWheel]});
  }
  const auto est_stats =
      analysis::section_stats(est_samples, d.multi2_layout.sections,
                              d.multi2_layout.transitions, "estimated");
  const auto tru_stats =
      analysis::section_stats(truth_samples, d.multi2_layout.sections,
                              d.multi2_layout.transitions, "measured");

  bool pass = true;
  double worst_rel = 0.0;
  std::vector<double> grass_est, hard_est, grass_tru, hard_tru;
  for (std::size_t i = 0; i < est_stats.size(); ++i) {
    if (!est_stats[i].mean_mu || !tru_stats[i].mean_mu) continue;
    const double rel = std::fabs(*est_stats[i].mean_mu - *tru_stats[i].mean_mu) /
                       std::fabs(*tru_stats[i].mean_mu);
    worst_rel = std::max(worst_rel, rel);
    if (rel >= 0.10) pass = false;
  }
  // aggregate same-soil samples for the separation check
  auto collect = [&](const std::string& label,
                     const std::vector<analysis::SectionSample>& samples,
                     std::vector<double>& out) {
    for (const auto& smp : samples) {
      if (in_any(smp.t, d.multi2_layout.transitions)) continue;
      for (const auto& sec : d.multi2_layout.sections)
        if (sec.label == label && smp.t >= sec.t0 && smp.t < sec.t1)
          out.push_back(smp.mu);
    }
  };
  collect("grass", est_samples, grass_est);
  collect("hard", est_samples, hard_est);
  collect("grass", truth_samples, grass_tru);
  collect("hard", truth_samples, hard_tru);
  const MeanSd ge = mean_sd(grass_est), he = mean_sd(hard_est);
  const MeanSd gt = mean_sd(grass_tru), ht = mean_sd(hard_tru);
  const bool sep_est = ge.mean + ge.sd < he.mean - he.sd;
  const bool sep_tru = gt.mean + gt.sd < ht.mean - ht.sd;
  if (!sep_est || !sep_tru) pass = false;

  CriterionResult r{"C8", "section separation and agreement (multi2)", pass,
                    ""};
  r.detail = fmt_detail(
      "worst est-vs-true section mean error=%.1f%% (<10%%); grass %.3f+-%.3f "
      "< hard %.3f-%.3f",
      100.0 * worst_rel, ge.mean, ge.sd, he.mean, he.sd);
  return r;
}

CriterionResult criterion_determinism(const fs::path& run1,
                                      const fs::path& run2) {
  bool pass = true;
  std::size_t files = 0;
  std::string first_diff;
  for (const auto& entry : fs::directory_iterator(run1)) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const fs::path other = run2 / entry.path().filename();
    std::ifstream a(entry.path(), std::ios::binary);
    std::ifstream b(other, std::ios::binary);
    if (!b) {
      pass = false;
      first_diff = entry.path().filename().string() + " missing";
      break;
    }
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    if (sa.str() != sb.str()) {
      pass = false;
      first_diff = entry.path().filename().string();
      break;
    }
  }
  CriterionResult r{"C9", "bit-exact reproducibility of bench outputs", pass,
                    ""};
  r.detail = pass ? fmt_detail("%zu files byte-identical across two runs", files)
                  : ("first differing file: " + first_diff);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& out_dir) {
  const fs::path base(out_dir);
  const PipelineData run1 = run_pipeline(base / "run1");
  run_pipeline(base / "run2");

  std::vector<CriterionResult> results;
  results.push_back(criterion_tracking(run1));
  results.push_back(criterion_curve_fit(run1));
  results.push_back(criterion_ukf_kf_equivalence());
  results.push_back(criterion_ut_exactness());
  results.push_back(criterion_slip_properties());
  results.push_back(criterion_adaptation());
  results.push_back(criterion_detection(run1));
  results.push_back(criterion_sections(run1));
  results.push_back(criterion_determinism(base / "run1", base / "run2"));
  return results;
}

}  // namespace traction::bench
