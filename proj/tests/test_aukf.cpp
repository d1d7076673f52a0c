#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "traction/aukf.hpp"

using namespace traction;
using namespace traction::aukf;

TEST_CASE("adaptation: empty window means no adaptation") {
  InnovationAdaptation ad;
  CHECK(ad.scale() == 1.0);
}

TEST_CASE("adaptation: consistent innovations settle near identity") {
  AdaptationConfig cfg;
  cfg.window = 200;
  cfg.a_min = 0.5;  // widened so the fixed point is visible from both sides
  cfg.a_max = 100.0;
  InnovationAdaptation ad(cfg);

  std::mt19937 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Vec sd{0.4, 0.08, 1.5};
  Mat s = Mat::diagonal(Vec{sd[0] * sd[0], sd[1] * sd[1], sd[2] * sd[2]});

  for (int i = 0; i < 400; ++i) {
    Vec nu(3);
    for (std::size_t j = 0; j < 3; ++j) nu[j] = sd[j] * gauss(rng);
    ad.observe(nu, s);
  }
  CHECK(ad.scale() > 0.8);
  CHECK(ad.scale() < 1.25);
}

TEST_CASE("adaptation: inflated innovations hit the upper clamp") {
  InnovationAdaptation ad;  // a_min 1, a_max 100
  std::mt19937 rng(29);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Mat s = Mat::identity(2);
  for (int i = 0; i < 60; ++i) {
    Vec nu{10.0 * gauss(rng), 10.0 * gauss(rng)};
    ad.observe(nu, s);
  }
  CHECK(ad.scale() == doctest::Approx(100.0));
}

TEST_CASE("adaptation: scale always within the clamp") {
  InnovationAdaptation ad;
  std::mt19937 rng(37);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> mag(0.0, 30.0);
  const Mat s = Mat::identity(2);
  for (int i = 0; i < 500; ++i) {
    const double k = mag(rng);
    ad.observe(Vec{k * gauss(rng), k * gauss(rng)}, s);
    CHECK(ad.scale() >= 1.0);
    CHECK(ad.scale() <= 100.0);
  }
}

TEST_CASE("effective process noise blending") {
  Mat q(2, 2);
  q(0, 0) = 4.0;
  q(1, 1) = 0.5;
  q(0, 1) = q(1, 0) = 0.1;

  SUBCASE("lambda 0 returns nominal Q") {
    const Mat out = effective_process_noise(q, 7.0, 0.0);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) CHECK(out(r, c) == q(r, c));
  }
  SUBCASE("lambda 1 applies the full adaptation") {
    const Mat out = effective_process_noise(q, 2.0, 1.0);
    CHECK(out(0, 0) == doctest::Approx(8.0));
    CHECK(out(1, 1) == doctest::Approx(1.0));
  }
  SUBCASE("affine blend arithmetic") {
    const Mat out = effective_process_noise(q, 3.0, 0.5);
    CHECK(out(0, 0) == doctest::Approx(8.0));
    CHECK(out(0, 1) == doctest::Approx(0.2));
  }
  SUBCASE("matrix A variant agrees with the scalar shortcut") {
    Mat a = Mat::identity(2);
    a *= 3.0;
    const Mat m1 = effective_process_noise(q, a, 0.5);
    const Mat m2 = effective_process_noise(q, 3.0, 0.5);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c)
        CHECK(m1(r, c) == doctest::Approx(m2(r, c)));
  }
  SUBCASE("stays symmetric positive semi-definite across lambda") {
    Vec a_diag{1.0, 6.0};
    const Mat a = Mat::diagonal(a_diag);
    Mat qd(2, 2);
    qd(0, 0) = 0.3;
    qd(1, 1) = 2.0;
    for (double lambda = 0.0; lambda <= 1.0; lambda += 0.1) {
      const Mat out = effective_process_noise(qd, a, lambda);
      CHECK(out(0, 1) == out(1, 0));
      CHECK(out(0, 0) >= 0.0);
      CHECK(out(1, 1) >= 0.0);
      CHECK_NOTHROW(cholesky(out));
    }
  }
  SUBCASE("lambda outside [0,1] rejected") {
    CHECK_THROWS_AS(effective_process_noise(q, 2.0, 1.5), std::invalid_argument);
  }
}

namespace {

SupervisorConfig test_cfg() {
  SupervisorConfig cfg;
  cfg.window = 10;
  cfg.low = 2.0;
  cfg.high = 8.0;
  cfg.omega_scale = 0.05;
  cfg.v_scale = 0.03;
  return cfg;
}

std::vector<std::array<double, 4>> constant_omega(std::size_t n, double value) {
  return std::vector<std::array<double, 4>>(
      n, std::array<double, 4>{value, value, value, value});
}

}  // namespace

TEST_CASE("dynamics intensity: constant signals give zero") {
  const auto cfg = test_cfg();
  CHECK(dynamics_intensity(constant_omega(10, 2.5), std::vector<double>(10, 0.5),
                           cfg) == doctest::Approx(0.0));
}

TEST_CASE("dynamics intensity: saturating step gives one") {
  const auto cfg = test_cfg();
  // per-step jumps far above high*scale on both channels
  std::vector<std::array<double, 4>> omega;
  std::vector<double> v;
  for (int i = 0; i < 10; ++i) {
    const double w = (i % 2 == 0) ? 0.0 : 10.0 * cfg.high * cfg.omega_scale;
    omega.push_back({w, w, w, w});
    v.push_back((i % 2 == 0) ? 0.0 : 10.0 * cfg.high * cfg.v_scale);
  }
  CHECK(dynamics_intensity(omega, v, cfg) == doctest::Approx(1.0));
}

TEST_CASE("dynamics intensity: thresholds midpoint gives one half") {
  const auto cfg = test_cfg();
  const double mid = 0.5 * (cfg.low + cfg.high);
  // alternate so the mean absolute first difference is exactly mid*scale
  std::vector<std::array<double, 4>> omega;
  std::vector<double> v;
  double w = 0.0, vv = 0.0;
  for (int i = 0; i < 11; ++i) {
    omega.push_back({w, w, w, w});
    v.push_back(vv);
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    w += sign * mid * cfg.omega_scale;
    vv += sign * mid * cfg.v_scale;
  }
  CHECK(dynamics_intensity(omega, v, cfg) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("dynamics intensity: monotone in the magnitude of differences") {
  const auto cfg = test_cfg();
  std::mt19937 rng(43);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<std::array<double, 4>> base_omega;
  std::vector<double> base_v;
  for (int i = 0; i < 12; ++i) {
    const double w = gauss(rng);
    base_omega.push_back({w, w * 0.5, -w, w * 2.0});
    base_v.push_back(gauss(rng));
  }

  double prev = -1.0;
  for (double k = 0.0; k <= 3.0; k += 0.05) {
    auto omega = base_omega;
    auto v = base_v;
    for (auto& o : omega)
      for (double& x : o) x *= k;
    for (double& x : v) x *= k;
    const double val = dynamics_intensity(omega, v, cfg);
    CHECK(val >= prev - 1e-12);
    CHECK(val >= 0.0);
    CHECK(val <= 1.0);
    prev = val;
  }
}

TEST_CASE("dynamics intensity input validation") {
  const auto cfg = test_cfg();
  CHECK_THROWS_AS(dynamics_intensity(constant_omega(1, 0.0),
                                     std::vector<double>(1, 0.0), cfg),
                  std::invalid_argument);
}

TEST_CASE("fuzzy supervisor lifecycle") {
  SupervisorConfig cfg = test_cfg();
  cfg.lambda_min = 0.1;
  cfg.lambda_max = 0.9;
  FuzzySupervisor sup(cfg);

  CHECK(sup.intensity() == 0.0);  // warmup
  CHECK(sup.blend() == doctest::Approx(0.1));

  for (int i = 0; i < 15; ++i) sup.observe({2.0, 2.0, 2.0, 2.0}, 0.4);
  CHECK(sup.intensity() == doctest::Approx(0.0));
  CHECK(sup.blend() == doctest::Approx(0.1));

  // violent changes drive the blend to lambda_max
  for (int i = 0; i < 15; ++i)
    sup.observe({i % 2 ? 30.0 : 0.0, 0.0, 0.0, 0.0}, i % 2 ? 3.0 : 0.0);
  CHECK(sup.blend() == doctest::Approx(0.9));
}

TEST_CASE("supervisor config validation") {
  SupervisorConfig bad = test_cfg();
  bad.low = 9.0;  // low >= high
  CHECK_THROWS_AS(FuzzySupervisor{bad}, std::invalid_argument);
  bad = test_cfg();
  bad.lambda_min = 0.8;
  bad.lambda_max = 0.2;
  CHECK_THROWS_AS(FuzzySupervisor{bad}, std::invalid_argument);
}
