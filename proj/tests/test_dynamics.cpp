#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "traction/dynamics.hpp"

using namespace traction;
using namespace traction::dynamics;

TEST_CASE("slip ratio boundary cases") {
  CHECK(slip_ratio(2.0, 10.0, 0.2) == doctest::Approx(0.0));  // pure rolling
  CHECK(slip_ratio(0.0, 5.0, 0.2) == doctest::Approx(1.0));   // spinning in place
  CHECK(slip_ratio(1.0, 0.0, 0.2) == doctest::Approx(-1.0));  // locked wheel
  CHECK(slip_ratio(1.0, 10.0, 0.2) == doctest::Approx(0.5));
  CHECK(slip_ratio(0.0, 0.0, 0.2) == 0.0);  // standing vehicle
}

TEST_CASE("slip ratio range, symmetry and branch continuity") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  std::uniform_real_distribution<double> ur(0.05, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double v = u(rng);
    const double w = u(rng);
    const double r = ur(rng);
    const double s = slip_ratio(v, w, r);
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
    CHECK(slip_ratio(-v, -w, r) == doctest::Approx(s));

    // both branch formulas agree where |v| = r|w|
    const double v_edge = r * std::fabs(w);
    CHECK(slip_ratio(v_edge, w, r) == doctest::Approx(0.0));
    if (v_edge > 0.0)
      CHECK(-1.0 + r * std::fabs(w) / v_edge == doctest::Approx(0.0));
  }
}

TEST_CASE("adhesion coefficient") {
  CHECK(adhesion_coefficient(0.0, 500.0) == doctest::Approx(0.0));
  CHECK(adhesion_coefficient(250.0, 500.0) == doctest::Approx(0.5));
  CHECK(adhesion_coefficient(-50.0, 500.0) == doctest::Approx(-0.1));
  CHECK_THROWS_AS(adhesion_coefficient(10.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(adhesion_coefficient(10.0, -5.0), std::domain_error);
}

TEST_CASE("net traction") {
  CHECK(net_traction(0.5, 0.0) == doctest::Approx(0.5));
  CHECK(net_traction(0.5, 0.1) == doctest::Approx(0.4));
  CHECK(net_traction(0.05, 0.1) == doctest::Approx(-0.05));
}

TEST_CASE("efficiency") {
  CHECK(efficiency(0.4, 0.1, 1.0) == doctest::Approx(0.0));
  CHECK(efficiency(0.4, 0.0, 0.0) == doctest::Approx(1.0));
  CHECK(efficiency(0.5, 0.1, 0.2) == doctest::Approx(0.5 / 0.6 * 0.8));
  CHECK_THROWS_AS(efficiency(0.2, -0.2, 0.0), std::domain_error);
}

TEST_CASE("efficiency decreases with slip") {
  double prev = efficiency(0.4, 0.1, -1.0);
  for (double s = -0.9; s <= 1.0; s += 0.1) {
    const double e = efficiency(0.4, 0.1, s);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("wheel angular acceleration") {
  WheelParams p;
  p.mass = 5.0;
  p.inertia = 0.5;
  p.rolling_radius = 0.2;
  p.rho_t = 0.0;
  p.rho_omega = 0.0;

  SUBCASE("torque balance gives zero acceleration") {
    p.rho_t = 0.05;
    WheelDynState s;
    s.f_h = 100.0;
    s.f_z = 400.0;
    s.torque = p.rolling_radius * (s.f_h + p.rho_t * s.f_z);
    CHECK(wheel_angular_accel(s, p) == doctest::Approx(0.0));
  }
  SUBCASE("pure torque") {
    WheelDynState s;
    s.torque = 10.0;
    CHECK(wheel_angular_accel(s, p) == doctest::Approx(20.0));
  }
  SUBCASE("coast-down") {
    p.rho_t = 0.05;
    WheelDynState s;
    s.f_h = 100.0;
    s.f_z = 100.0;  // F_t = 5
    CHECK(wheel_angular_accel(s, p) == doctest::Approx(-42.0));
  }
}

TEST_CASE("body acceleration") {
  CHECK(body_accel(100.0 + 0.05 * 139.0 * 9.81, 100.0, 0.05, 139.0, 9.81) ==
        doctest::Approx(0.0));
  CHECK(body_accel(200.0, 0.0, 0.0, 139.0, 9.81) ==
        doctest::Approx(200.0 / 139.0));
  CHECK(body_accel(0.0, 100.0, 0.05, 139.0, 9.81) < 0.0);
}

TEST_CASE("wheel and body accelerations are linear in forces") {
  WheelParams p;
  p.mass = 5.0;
  p.inertia = 0.4;
  p.rolling_radius = 0.21;
  p.rho_t = 0.03;
  p.rho_omega = 0.02;

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    WheelDynState a, b;
    a.torque = u(rng); a.f_h = u(rng); a.f_z = std::fabs(u(rng)); a.omega = u(rng);
    b.torque = u(rng); b.f_h = u(rng); b.f_z = std::fabs(u(rng)); b.omega = u(rng);
    WheelDynState sum;
    sum.torque = a.torque + b.torque;
    sum.f_h = a.f_h + b.f_h;
    sum.f_z = a.f_z + b.f_z;
    sum.omega = a.omega + b.omega;
    CHECK(wheel_angular_accel(sum, p) ==
          doctest::Approx(wheel_angular_accel(a, p) + wheel_angular_accel(b, p)));

    const double fa = u(rng), fb = u(rng), da = u(rng), db = u(rng);
    CHECK(body_accel(fa + fb, da + db, 0.0, 139.0, 9.81) ==
          doctest::Approx(body_accel(fa, da, 0.0, 139.0, 9.81) +
                          body_accel(fb, db, 0.0, 139.0, 9.81)));
  }
}

TEST_CASE("rk4 exactness and order") {
  const Vec u(0);

  SUBCASE("constant dynamics hold the state") {
    auto f = [](const Vec& x, const Vec&) { return Vec(x.size(), 0.0); };
    Vec x{3.5};
    const Vec out = rk4_step(x, u, f, 0.25);
    CHECK(out[0] == 3.5);
  }

  SUBCASE("unit derivative integrates exactly") {
    auto f = [](const Vec&, const Vec&) { return Vec{1.0}; };
    const Vec out = rk4_step(Vec{0.0}, u, f, 0.1);
    CHECK(out[0] == doctest::Approx(0.1));
  }

  SUBCASE("exponential growth matches truncated Taylor series") {
    auto f = [](const Vec& x, const Vec&) { return x; };
    const Vec out = rk4_step(Vec{1.0}, u, f, 0.1);
    // RK4 reproduces 1 + h + h^2/2 + h^3/6 + h^4/24 exactly
    CHECK(out[0] == doctest::Approx(1.1051708333333333).epsilon(1e-14));
    CHECK(std::fabs(out[0] - std::exp(0.1)) < 1e-7);
  }

  SUBCASE("Richardson halved-step comparison shows 4th order") {
    auto f = [](const Vec& x, const Vec&) { return Vec{-2.0 * x[0]}; };
    const double h = 0.1;
    const Vec full = rk4_step(Vec{1.0}, u, f, h);
    Vec half = rk4_step(Vec{1.0}, u, f, h / 2.0);
    half = rk4_step(half, u, f, h / 2.0);
    const double exact = std::exp(-2.0 * h);
    const double err_full = std::fabs(full[0] - exact);
    const double err_half = std::fabs(half[0] - exact);
    // local error O(h^5) -> global two half steps ~ 1/16 of one full step
    CHECK(err_half < err_full / 10.0);
  }

  SUBCASE("linear system matches the matrix exponential to O(h^4)") {
    // xdot = A x with a mildly stiff 3x3 system
    const double a[3][3] = {{-1.0, 0.5, 0.0}, {0.2, -2.0, 0.3}, {0.0, 0.1, -0.5}};
    auto f = [&a](const Vec& x, const Vec&) {
      Vec dx(3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) dx[r] += a[r][c] * x[c];
      return dx;
    };
    // exp(A h) x0 by Taylor series (converges at machine precision for
    // ||A h|| << 1)
    const double h = 0.01;
    Vec exact{1.0, -0.5, 2.0};
    Vec term = exact;  // A^k h^k x0 / k!
    for (int k = 1; k <= 30; ++k) {
      Vec next(3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) next[r] += a[r][c] * term[c];
      next *= h / static_cast<double>(k);
      term = next;
      exact += term;
    }
    const Vec got = rk4_step(Vec{1.0, -0.5, 2.0}, u, f, h);
    for (int i = 0; i < 3; ++i)
      CHECK(got[i] == doctest::Approx(exact[i]).epsilon(1e-9));
  }

  SUBCASE("non-finite derivative raises IntegrationError") {
    auto f = [](const Vec& x, const Vec&) {
      return Vec{x[0] > 0.5 ? std::numeric_limits<double>::infinity() : 1.0};
    };
    CHECK_THROWS_AS(rk4_step(Vec{0.6}, u, f, 0.1), IntegrationError);
  }
}

TEST_CASE("vehicle params validation") {
  VehicleParams v;
  v.mass = 139.0;
  v.front_load_fraction = 54.0 / 139.0;
  for (auto& w : v.wheels) {
    w.mass = 5.0;
    w.inertia = 0.5;
    w.rolling_radius = 0.2;
    w.rho_t = 0.02;
    w.rho_omega = 0.01;
  }
  CHECK_NOTHROW(v.validate());

  const auto loads = v.static_wheel_loads();
  CHECK(loads[0] == doctest::Approx(54.0 / 139.0 * 139.0 * 9.81 / 2.0));
  CHECK(loads[2] == doctest::Approx(85.0 / 139.0 * 139.0 * 9.81 / 2.0));
  CHECK(loads[0] + loads[1] + loads[2] + loads[3] ==
        doctest::Approx(139.0 * 9.81));

  VehicleParams bad = v;
  bad.wheels[2].inertia = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = v;
  bad.mass = 10.0;  // less than wheel mass sum
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
