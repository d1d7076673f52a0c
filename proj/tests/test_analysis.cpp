#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "traction/analysis.hpp"
#include "traction/soil.hpp"

using namespace traction;
using namespace traction::analysis;

namespace {

std::vector<std::pair<double, double>> curve_samples(
    const soil::SoilCurveParams& s, std::size_t per_bin, double noise_sd,
    std::mt19937& rng, double s_min = 0.05, double s_max = 0.60) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> us(s_min, s_max);
  std::vector<std::pair<double, double>> out;
  const std::size_t n = per_bin * static_cast<std::size_t>(
                                      std::round((s_max - s_min) / 0.01));
  for (std::size_t i = 0; i < n; ++i) {
    const double sv = us(rng);
    out.emplace_back(sv, soil::mu_of_s(s, sv) + noise_sd * gauss(rng));
  }
  return out;
}

}  // namespace

TEST_CASE("bin_data basics") {
  SUBCASE("no samples -> all bins empty but present") {
    const auto bins = bin_data({}, 0.01, 0.05, 0.60);
    CHECK(bins.size() == 55);
    for (const auto& b : bins) CHECK(b.count == 0);
  }
  SUBCASE("single-bin concentration") {
    std::vector<std::pair<double, double>> samples(7, {0.055, 0.4});
    const auto bins = bin_data(samples, 0.01, 0.05, 0.60);
    CHECK(bins[0].count == 7);
    CHECK(bins[0].mean_mu == doctest::Approx(0.4));
    CHECK(bins[0].sd_mu == doctest::Approx(0.0));
    for (std::size_t i = 1; i < bins.size(); ++i) CHECK(bins[i].count == 0);
  }
  SUBCASE("two samples in one bin: sample SD") {
    std::vector<std::pair<double, double>> samples{{0.105, 0.3}, {0.108, 0.5}};
    const auto bins = bin_data(samples, 0.01, 0.05, 0.60);
    const auto& b = bins[5];
    CHECK(b.count == 2);
    CHECK(b.mean_mu == doctest::Approx(0.4));
    CHECK(b.sd_mu == doctest::Approx(std::sqrt(0.02 / 1.0)).epsilon(1e-12));
  }
  SUBCASE("samples outside the range are dropped") {
    std::vector<std::pair<double, double>> samples{{0.04, 1.0}, {0.60, 1.0}};
    const auto bins = bin_data(samples, 0.01, 0.05, 0.60);
    for (const auto& b : bins) CHECK(b.count == 0);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(bin_data({}, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bin_data({}, 0.01, 0.5, 0.5), std::invalid_argument);
  }
}

TEST_CASE("fit_scale: noiseless round trip recovers a exactly") {
  // samples at the bin midpoints so the bin means sit on the curve itself
  const auto catalog = soil::SoilCatalog::builtin();
  for (const auto& s : catalog.entries()) {
    std::vector<std::pair<double, double>> samples;
    for (int b = 0; b < 55; ++b) {
      const double mid = 0.05 + 0.01 * b + 0.005;
      for (int k = 0; k < 3; ++k) samples.emplace_back(mid, soil::mu_of_s(s, mid));
    }
    const auto bins = bin_data(samples, 0.01, 0.05, 0.60);
    const CurveShape shape{s.p, s.alpha1, s.alpha2};
    const FitResult fit = fit_scale(bins, shape);
    CHECK(std::fabs(fit.a - s.a) < 1e-10);
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.nrmse < 1e-9);
    CHECK(fit.bins_used == 55);
  }
}

TEST_CASE("fit_scale: dense uniform sampling stays close despite in-bin bias") {
  const soil::SoilCurveParams wet{"wet", 0.83, 0.52, 0.01, -11.36, 0.10};
  std::vector<std::pair<double, double>> samples;
  for (double sv = 0.0505; sv < 0.60; sv += 0.001)
    samples.emplace_back(sv, soil::mu_of_s(wet, sv));
  const auto bins = bin_data(samples, 0.01, 0.05, 0.60);
  const FitResult fit = fit_scale(bins, CurveShape{wet.p, wet.alpha1, wet.alpha2});
  CHECK(fit.a == doctest::Approx(wet.a).epsilon(1e-3));
  CHECK(fit.r2 > 0.9999);
}

TEST_CASE("fit_scale: scale equivariance") {
  std::mt19937 rng(19);
  const soil::SoilCurveParams hard{"hard", 1.42, 0.52, 0.01, -11.36, 0.05};
  const auto samples = curve_samples(hard, 30, 0.02, rng);
  const auto bins = bin_data(samples, 0.01, 0.05, 0.60);
  const CurveShape shape{hard.p, hard.alpha1, hard.alpha2};
  const FitResult base = fit_scale(bins, shape);

  auto scaled_bins = bins;
  for (auto& b : scaled_bins) b.mean_mu *= 3.0;
  const FitResult scaled = fit_scale(scaled_bins, shape);
  CHECK(scaled.a == doctest::Approx(3.0 * base.a).epsilon(1e-12));
}

TEST_CASE("fit_scale: noisy recovery within 5% in at least 95 of 100 trials") {
  const soil::SoilCurveParams fine{"fine", 0.85, 0.52, 0.01, -11.36, 0.10};
  const CurveShape shape{fine.p, fine.alpha1, fine.alpha2};
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::mt19937 rng(1000 + trial);
    const auto samples = curve_samples(fine, 50, 0.05, rng);
    const auto bins = bin_data(samples, 0.01, 0.05, 0.60);
    const FitResult fit = fit_scale(bins, shape);
    if (std::fabs(fit.a - fine.a) / fine.a < 0.05) ++ok;
  }
  CHECK(ok >= 95);
}

TEST_CASE("fit_scale: zero bin means give a zero scale") {
  std::vector<std::pair<double, double>> samples;
  for (double sv = 0.06; sv < 0.59; sv += 0.005) samples.emplace_back(sv, 0.0);
  const auto bins = bin_data(samples, 0.01, 0.05, 0.60);
  const FitResult fit = fit_scale(bins, CurveShape{});
  CHECK(fit.a == doctest::Approx(0.0));
}

TEST_CASE("fit_scale: error paths") {
  const auto empty_bins = bin_data({}, 0.01, 0.05, 0.60);
  CHECK_THROWS_AS(fit_scale(empty_bins, CurveShape{}), FitError);

  // all g(s_mid) = 0 when the shape collapses (p=1, alpha1=0 -> g == 0)
  std::vector<std::pair<double, double>> samples{{0.1, 0.2}, {0.2, 0.3}};
  const auto bins = bin_data(samples, 0.01, 0.05, 0.60);
  CHECK_THROWS_AS(fit_scale(bins, CurveShape{1.0, 0.0, -5.0}), FitError);
}

TEST_CASE("goodness metrics") {
  SUBCASE("perfect prediction") {
    const std::vector<double> obs{0.0, 0.5, 1.0};
    const auto g = goodness(obs, obs);
    CHECK(g.nrmse.value() == doctest::Approx(0.0));
    CHECK(g.r2.value() == doctest::Approx(1.0));
  }
  SUBCASE("predicting the mean gives R^2 = 0") {
    const std::vector<double> obs{0.0, 1.0, 2.0};
    const std::vector<double> pred{1.0, 1.0, 1.0};
    CHECK(goodness(obs, pred).r2.value() == doctest::Approx(0.0));
  }
  SUBCASE("hand-computed example") {
    const std::vector<double> obs{0.0, 1.0};
    const std::vector<double> pred{0.1, 0.9};
    const auto g = goodness(obs, pred);
    CHECK(g.nrmse.value() == doctest::Approx(0.1));
    CHECK(g.r2.value() == doctest::Approx(0.96));
  }
  SUBCASE("constant observations -> undefined metrics") {
    const std::vector<double> obs{0.7, 0.7, 0.7};
    const std::vector<double> pred{0.6, 0.7, 0.8};
    const auto g = goodness(obs, pred);
    CHECK_FALSE(g.nrmse.has_value());
    CHECK_FALSE(g.r2.has_value());
  }
  SUBCASE("length mismatch rejected") {
    const std::vector<double> a{1.0};
    const std::vector<double> b{1.0, 2.0};
    CHECK_THROWS_AS(goodness(a, b), std::invalid_argument);
    CHECK_THROWS_AS(goodness({}, {}), std::invalid_argument);
  }
}

TEST_CASE("section stats") {
  std::vector<SectionSample> samples;
  for (int i = 0; i < 100; ++i)
    samples.push_back({0.1 * i, 0.05 + 0.001 * (i % 3), 0.4 + 0.01 * (i % 5)});

  SUBCASE("uniform log, one section equals the global stats") {
    const std::vector<TimeInterval> sections{{0.0, 10.0, "all"}};
    const auto stats = section_stats(samples, sections, {}, "estimated");
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].count == 100);
    double mu_sum = 0.0;
    for (const auto& s : samples) mu_sum += s.mu;
    CHECK(stats[0].mean_mu.value() == doctest::Approx(mu_sum / 100.0));
    CHECK(stats[0].source == "estimated");
  }
  SUBCASE("transition samples are excluded") {
    const std::vector<TimeInterval> sections{{0.0, 10.0, "all"}};
    const std::vector<TimeInterval> zones{{2.0, 4.0, "transition"}};
    const auto stats = section_stats(samples, sections, zones, "estimated");
    CHECK(stats[0].count == 80);
  }
  SUBCASE("section entirely inside a transition zone is undefined") {
    const std::vector<TimeInterval> sections{{2.0, 3.0, "inside"}};
    const std::vector<TimeInterval> zones{{1.0, 5.0, "transition"}};
    const auto stats = section_stats(samples, sections, zones, "measured");
    CHECK(stats[0].count == 0);
    CHECK_FALSE(stats[0].mean_mu.has_value());
    CHECK_FALSE(stats[0].sd_mu.has_value());
  }
  SUBCASE("overlapping sections rejected") {
    const std::vector<TimeInterval> sections{{0.0, 5.0, "a"}, {4.0, 8.0, "b"}};
    CHECK_THROWS_AS(section_stats(samples, sections, {}, "estimated"),
                    std::invalid_argument);
  }
  SUBCASE("synthetic grass/hard separation direction") {
    std::vector<SectionSample> two;
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 500; ++i)  // grass: low slip, low mu
      two.push_back({0.01 * i, 0.04 + 0.002 * gauss(rng), 0.07 + 0.005 * gauss(rng)});
    for (int i = 500; i < 1000; ++i)  // hard: higher slip and mu
      two.push_back({0.01 * i, 0.06 + 0.002 * gauss(rng), 0.27 + 0.005 * gauss(rng)});
    const std::vector<TimeInterval> sections{{0.0, 5.0, "grass"}, {5.0, 10.0, "hard"}};
    const auto stats = section_stats(two, sections, {}, "measured");
    CHECK(stats[0].mean_s.value() < stats[1].mean_s.value());
    CHECK(stats[0].mean_mu.value() < stats[1].mean_mu.value());
  }
}

TEST_CASE("ground change detection") {
  SUBCASE("constant log has no events") {
    std::vector<std::pair<double, double>> log;
    for (int i = 0; i < 2000; ++i) log.emplace_back(0.01 * i, 0.4);
    CHECK(detect_ground_change(log, 100, 5.0).empty());
  }
  SUBCASE("stationary noisy log has no events at the default threshold") {
    std::mt19937 rng(99);
    std::normal_distribution<double> gauss(0.0, 0.015);
    std::vector<std::pair<double, double>> log;
    for (int i = 0; i < 10000; ++i) log.emplace_back(0.01 * i, 0.4 + gauss(rng));
    CHECK(detect_ground_change(log, 500, 5.0).empty());
  }
  SUBCASE("hard->grass step yields exactly one event near the switch") {
    std::mt19937 rng(123);
    std::normal_distribution<double> gauss(0.0, 0.015);
    std::vector<std::pair<double, double>> log;
    const double t_switch = 50.0;
    for (int i = 0; i < 10000; ++i) {
      const double t = 0.01 * i;
      const double mu = (t < t_switch ? 0.6 : 0.2) + gauss(rng);
      log.emplace_back(t, mu);
    }
    const std::size_t w = 500;
    const auto events = detect_ground_change(log, w, 5.0);
    REQUIRE(events.size() == 1);
    CHECK(std::fabs(events[0] - t_switch) <= 2.0 * 0.01 * w);
  }
  SUBCASE("infinite threshold suppresses events") {
    std::vector<std::pair<double, double>> log;
    for (int i = 0; i < 4000; ++i)
      log.emplace_back(0.01 * i, i < 2000 ? 0.6 : 0.2);
    CHECK(detect_ground_change(log, 200,
                               std::numeric_limits<double>::infinity())
              .empty());
  }
  SUBCASE("window validation") {
    CHECK_THROWS_AS(detect_ground_change({}, 1, 5.0), std::invalid_argument);
  }
}
