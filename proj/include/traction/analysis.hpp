// Offline analysis of estimate logs: slip-binned statistics, least-squares
// fit of the mu(s) scale parameter, NRMSE/R^2 metrics, per-section soil
// statistics with transition-zone exclusion, and windowed mean-shift ground
// change detection. Pure batch functions over immutable data.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace traction::analysis {

struct SlipBin {
  double s_lo = 0.0;
  double s_hi = 0.0;
  std::size_t count = 0;
  double mean_mu = 0.0;  // NaN when empty
  double sd_mu = 0.0;    // sample SD (n-1); NaN when count < 2

  double mid() const { return 0.5 * (s_lo + s_hi); }
};

// Partitions [s_min, s_max) into uniform bins of the given width and fills
// per-bin mean/SD of mu. Samples outside the range are dropped; empty bins
// are retained with count 0.
std::vector<SlipBin> bin_data(std::span<const std::pair<double, double>> samples,
                              double bin_width, double s_min, double s_max);

struct CurveShape {
  double p = 0.52;
  double alpha1 = 0.01;
  double alpha2 = -11.36;
};

// The shape factor g(s) with mu(s) = a * g(s).
double shape_value(const CurveShape& shape, double s);

struct FitResult {
  double a = 0.0;
  CurveShape shape;
  double nrmse = 0.0;  // NaN when undefined (constant bin means)
  double r2 = 0.0;     // NaN when undefined
  std::size_t bins_used = 0;
};

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed-form least squares a* = sum(g*mu_bar)/sum(g^2) over nonempty bins,
// evaluated at bin midpoints. Bins weigh equally by default; set
// weight_by_count to weigh each bin by its sample count instead.
FitResult fit_scale(std::span<const SlipBin> bins, const CurveShape& shape,
                    bool weight_by_count = false);

struct Goodness {
  std::optional<double> nrmse;  // RMSE / (max - min) of the observations
  std::optional<double> r2;     // 1 - SS_res / SS_tot
};

// Both metrics are undefined (nullopt) for a constant observed sequence.
Goodness goodness(std::span<const double> observed,
                  std::span<const double> predicted);

struct TimeInterval {
  double t0 = 0.0;
  double t1 = 0.0;
  std::string label;
};

struct SectionSample {
  double t = 0.0;
  double s = 0.0;
  double mu = 0.0;
};

struct SectionStats {
  std::string label;
  double t0 = 0.0;
  double t1 = 0.0;
  std::size_t count = 0;
  std::optional<double> mean_s, sd_s, mean_mu, sd_mu;
  std::string source;  // "measured" or "estimated"
};

// Per-section mean/SD of s and mu. Samples inside any transition zone are
// excluded; a section left without samples gets undefined stats (not an
// error). Sections must not overlap.
std::vector<SectionStats> section_stats(
    std::span<const SectionSample> samples,
    std::span<const TimeInterval> sections,
    std::span<const TimeInterval> transition_zones, const std::string& source);

// Flags a ground change when the mean of mu over the trailing window shifts
// against the preceding window by more than threshold x pooled SD. Events
// fire on the rising edge of the test statistic (with hysteresis at half the
// threshold) and are debounced to at least one window apart. Returns event
// timestamps.
std::vector<double> detect_ground_change(
    std::span<const std::pair<double, double>> t_mu, std::size_t window,
    double threshold);

}  // namespace traction::analysis
