#include "traction/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "traction/kernels.hpp"

namespace traction::analysis {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct MeanSd {
  std::size_t count = 0;
  double mean = kNan;
  double sd = kNan;
};

MeanSd mean_sd(std::span<const double> xs) {
  MeanSd out;
  out.count = xs.size();
  if (xs.empty()) return out;
  out.mean = kernels::sum(xs.data(), xs.size()) / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double acc = 0.0;
  for (double x : xs) acc += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  return out;
}

}  // namespace

std::vector<SlipBin> bin_data(std::span<const std::pair<double, double>> samples,
                              double bin_width, double s_min, double s_max) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin_data: bin_width must be > 0");
  if (!(s_min < s_max)) throw std::invalid_argument("bin_data: need s_min < s_max");

  const std::size_t nbins = static_cast<std::size_t>(
      std::ceil((s_max - s_min) / bin_width - 1e-9));
  std::vector<std::vector<double>> acc(nbins);
  for (const auto& [s, mu] : samples) {
    if (s < s_min || s >= s_max) continue;
    std::size_t idx = static_cast<std::size_t>((s - s_min) / bin_width);
    if (idx >= nbins) idx = nbins - 1;  // float edge at the last boundary
    acc[idx].push_back(mu);
  }

  std::vector<SlipBin> bins(nbins);
  for (std::size_t i = 0; i < nbins; ++i) {
    bins[i].s_lo = s_min + static_cast<double>(i) * bin_width;
    bins[i].s_hi = std::min(bins[i].s_lo + bin_width, s_max);
    const MeanSd st = mean_sd(acc[i]);
    bins[i].count = st.count;
    bins[i].mean_mu = st.mean;
    bins[i].sd_mu = st.count >= 2 ? st.sd : kNan;
  }
  return bins;
}

double shape_value(const CurveShape& shape, double s) {
  return 1.0 - shape.p * std::exp(shape.alpha1 * s) -
         (1.0 - shape.p) * std::exp(shape.alpha2 * s);
}

FitResult fit_scale(std::span<const SlipBin> bins, const CurveShape& shape,
                    bool weight_by_count) {
  std::vector<double> g, mu_bar, w;
  for (const SlipBin& b : bins) {
    if (b.count == 0) continue;
    g.push_back(shape_value(shape, b.mid()));
    mu_bar.push_back(b.mean_mu);
    w.push_back(weight_by_count ? static_cast<double>(b.count) : 1.0);
  }
  if (g.empty()) throw FitError("fit_scale: no nonempty bins");

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    num += w[i] * g[i] * mu_bar[i];
    den += w[i] * g[i] * g[i];
  }
  if (den == 0.0) throw FitError("fit_scale: degenerate fit, all g(s_mid) = 0");

  FitResult out;
  out.a = num / den;
  out.shape = shape;
  out.bins_used = g.size();

  std::vector<double> predicted(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) predicted[i] = out.a * g[i];
  const Goodness good = goodness(mu_bar, predicted);
  out.nrmse = good.nrmse.value_or(kNan);
  out.r2 = good.r2.value_or(kNan);
  return out;
}

Goodness goodness(std::span<const double> observed,
                  std::span<const double> predicted) {
  if (observed.empty() || observed.size() != predicted.size())
    throw std::invalid_argument("goodness: sequences must have equal nonzero length");

  const double n = static_cast<double>(observed.size());
  const double mean =
      kernels::sum(observed.data(), observed.size()) / n;

  double ss_res = 0.0, ss_tot = 0.0;
  double lo = observed[0], hi = observed[0];
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double r = observed[i] - predicted[i];
    ss_res += r * r;
    ss_tot += (observed[i] - mean) * (observed[i] - mean);
    lo = std::min(lo, observed[i]);
    hi = std::max(hi, observed[i]);
  }

  Goodness out;
  if (hi > lo) {
    out.nrmse = std::sqrt(ss_res / n) / (hi - lo);
    if (ss_tot > 0.0) out.r2 = 1.0 - ss_res / ss_tot;
  }
  return out;
}

std::vector<SectionStats> section_stats(
    std::span<const SectionSample> samples,
    std::span<const TimeInterval> sections,
    std::span<const TimeInterval> transition_zones, const std::string& source) {
  for (std::size_t i = 0; i < sections.size(); ++i)
    for (std::size_t j = i + 1; j < sections.size(); ++j) {
      const bool disjoint = sections[i].t1 <= sections[j].t0 ||
                            sections[j].t1 <= sections[i].t0;
      if (!disjoint)
        throw std::invalid_argument("section_stats: sections must not overlap");
    }

  auto in_transition = [&](double t) {
    for (const TimeInterval& z : transition_zones)
      if (t >= z.t0 && t < z.t1) return true;
    return false;
  };

  std::vector<SectionStats> out;
  out.reserve(sections.size());
  for (const TimeInterval& sec : sections) {
    std::vector<double> ss, mus;
    for (const SectionSample& smp : samples) {
      if (smp.t < sec.t0 || smp.t >= sec.t1) continue;
      if (in_transition(smp.t)) continue;
      ss.push_back(smp.s);
      mus.push_back(smp.mu);
    }
    SectionStats st;
    st.label = sec.label;
    st.t0 = sec.t0;
    st.t1 = sec.t1;
    st.count = ss.size();
    st.source = source;
    const MeanSd s_stat = mean_sd(ss);
    const MeanSd mu_stat = mean_sd(mus);
    if (st.count >= 1) {
      st.mean_s = s_stat.mean;
      st.mean_mu = mu_stat.mean;
    }
    if (st.count >= 2) {
      st.sd_s = s_stat.sd;
      st.sd_mu = mu_stat.sd;
    }
    out.push_back(std::move(st));
  }
  return out;
}

std::vector<double> detect_ground_change(
    std::span<const std::pair<double, double>> t_mu, std::size_t window,
    double threshold) {
  if (window < 2) throw std::invalid_argument("detect_ground_change: window must be >= 2");

  std::vector<double> events;
  if (t_mu.size() < 2 * window) return events;

  const std::size_t w = window;
  // Prefix sums for O(1) window statistics.
  std::vector<double> ps(t_mu.size() + 1, 0.0), ps2(t_mu.size() + 1, 0.0);
  for (std::size_t i = 0; i < t_mu.size(); ++i) {
    ps[i + 1] = ps[i] + t_mu[i].second;
    ps2[i + 1] = ps2[i] + t_mu[i].second * t_mu[i].second;
  }
  auto win_mean = [&](std::size_t lo, std::size_t hi) {
    return (ps[hi] - ps[lo]) / static_cast<double>(hi - lo);
  };
  auto win_var = [&](std::size_t lo, std::size_t hi) {
    const double n = static_cast<double>(hi - lo);
    const double m = win_mean(lo, hi);
    const double v = (ps2[hi] - ps2[lo]) / n - m * m;
    return std::max(v, 0.0);
  };

  bool armed = true;
  std::size_t last_event_idx = 0;
  for (std::size_t k = 2 * w; k <= t_mu.size(); ++k) {
    const double m1 = win_mean(k - 2 * w, k - w);
    const double m2 = win_mean(k - w, k);
    const double pooled_sd =
        std::sqrt(0.5 * (win_var(k - 2 * w, k - w) + win_var(k - w, k)));
    const double shift = std::fabs(m2 - m1);
    // absolute floor keeps bit-constant logs from firing on rounding dust
    const double floor = 1e-9 * (std::fabs(m1) + std::fabs(m2) + 1e-300);

    if (armed && shift > threshold * pooled_sd + floor) {
      const std::size_t boundary = k - w;
      if (events.empty() || boundary >= last_event_idx + w) {
        events.push_back(t_mu[boundary].first);
        last_event_idx = boundary;
      }
      armed = false;
    } else if (!armed && shift < 0.5 * threshold * pooled_sd) {
      armed = true;  // hysteresis release
    }
  }
  return events;
}

}  // namespace traction::analysis
