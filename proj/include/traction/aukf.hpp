// Adaptive layer over the UKF core. Two pieces:
//
//  * InnovationAdaptation — a diagonal adaptation matrix A_k = a*I that
//    rescales the process noise from innovation statistics over a moving
//    window, keeping the filter honest when the nominal Q is too small.
//  * FuzzySupervisor — a two-input Mamdani system that measures the
//    intensity of vehicle dynamics from windowed first differences of the
//    wheel-speed and ground-speed measurements and gates how much of the
//    adaptation is applied: full A_k during intense dynamics, nominal Q at
//    steady phases.
#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <vector>

#include "traction/linalg.hpp"

namespace traction::aukf {

struct AdaptationConfig {
  std::size_t window = 30;  // N_w, innovation history length
  double a_min = 1.0;
  double a_max = 100.0;
};

// Tracks the last N_w innovations and predicted innovation covariances and
// exposes the scalar a with A_k = a*I, a = clamp(tr(C_nu)/tr(S_bar)).
// C_nu is the windowed second moment of the innovations (innovations are
// zero-mean under a consistent model, so a bias shows up as inflation, which
// is exactly the divergence signal the adaptation exists to catch).
class InnovationAdaptation {
 public:
  explicit InnovationAdaptation(AdaptationConfig cfg = {});

  void observe(const Vec& innovation, const Mat& innovation_cov);
  double scale() const { return scale_; }  // A_k = scale() * I
  std::size_t filled() const { return buf_.size(); }

 private:
  struct Entry {
    double nu_sq;    // ||nu||^2, the trace contribution of nu nu^T
    double s_trace;  // tr(S)
  };
  AdaptationConfig cfg_;
  std::deque<Entry> buf_;
  double scale_ = 1.0;
};

struct SupervisorConfig {
  std::size_t window = 20;  // N_f, measurement history length
  // Thresholds on the noise-normalized mean absolute first difference. The
  // noise floor of that statistic is ~1.13 (mean |N(0,1) - N(0,1)'|), so the
  // low threshold sits just above it.
  double low = 1.2;
  double high = 2.5;
  // Normalization scales (the measurement noise standard deviations).
  double omega_scale = 0.05;
  double v_scale = 0.03;
  // Output blend bounds.
  double lambda_min = 0.0;
  double lambda_max = 1.0;
};

// Mean absolute first differences of omega (averaged over the four wheels)
// and v, normalized by the configured scales, pushed through a 3-label
// triangular Mamdani system (max-min inference, centroid defuzzification).
// Returns the dynamics intensity in [0, 1]. Sequences must have length >= 2.
double dynamics_intensity(const std::vector<std::array<double, 4>>& omega,
                          const std::vector<double>& v,
                          const SupervisorConfig& cfg);

class FuzzySupervisor {
 public:
  explicit FuzzySupervisor(SupervisorConfig cfg = {});

  void observe(const std::array<double, 4>& omega, double v);
  double intensity() const;  // 0 until two samples are available
  double blend() const;      // lambda in [lambda_min, lambda_max]

 private:
  SupervisorConfig cfg_;
  std::deque<std::array<double, 4>> omega_;
  std::deque<double> v_;
};

// (lambda*A + (1-lambda)*I) * Q, symmetrized. lambda = 1 applies the full
// adaptation A*Q, lambda = 0 returns the nominal Q.
Mat effective_process_noise(const Mat& q, const Mat& a, double lambda);

// Fast path for the scalar adaptation A = a*I used by the estimator.
Mat effective_process_noise(const Mat& q, double a, double lambda);

}  // namespace traction::aukf
