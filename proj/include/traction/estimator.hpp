// The traction-specific adaptive UKF: wires the 10-state longitudinal model
// (4 wheel speeds, body speed, 4 adhesion coefficients, rho_s) into the UKF
// core with RK4 propagation, innovation-driven process-noise adaptation and
// the fuzzy dynamics supervisor.
//
// One estimator instance per log stream; steps are strictly sequential
// within an instance, distinct instances are independent.
#pragma once

#include <cstddef>

#include "traction/aukf.hpp"
#include "traction/dynamics.hpp"
#include "traction/records.hpp"
#include "traction/ukf.hpp"

namespace traction {

struct EstimatorConfig {
  dynamics::VehicleParams vehicle;

  ukf::UtParams ut;  // alpha 1e-3, beta 2, kappa 0

  // Process noise diagonal, per step. Nonzero entries on the parameter
  // states let the filter track soil changes even though the transition
  // freezes them within a step.
  double q_speed = 1e-4;
  double q_mu = 1e-3;
  double q_rho = 1e-4;

  // Measurement noise standard deviations (R is diagonal of the squares).
  double sigma_omega = 0.05;  // rad/s
  double sigma_v = 0.03;      // m/s

  // Initial parameter guesses and covariance; speeds initialize from the
  // first measurement. Zero initial speed variances mean "use the
  // measurement variances".
  double init_mu = 0.3;
  double init_rho_s = 0.05;
  double init_var_mu = 1.0;
  double init_var_rho_s = 0.1;
  double init_var_omega = 0.0;
  double init_var_v = 0.0;

  bool adaptation_enabled = true;
  aukf::AdaptationConfig adaptation;
  bool supervisor_enabled = true;
  aukf::SupervisorConfig supervisor;

  void validate() const;
};

// State transition over one sensor period: integrates the wheel torque
// balances (with F_h,i = mu_i * F_z,i) and the body force balance with RK4;
// mu_1..4 and rho_s are held constant across the step. Vertical loads come
// from the F_zf input: front wheels carry F_zf each, the rear wheels split
// m*g - 2*F_zf equally.
Vec transition(const Vec& x, const Vec& u, double dt,
               const dynamics::VehicleParams& params);

// Output projection: the five measured states (omega_1..4, v).
Vec measure(const Vec& x);

// Input vector layout: M_d1..4, F_zf, F_dx.
Vec input_vector(const SensorRecord& rec);

class TractionEstimator {
 public:
  explicit TractionEstimator(EstimatorConfig cfg);

  // Runs one predict/update cycle on a sensor record. The first record
  // initializes the state from its measurements and applies one measurement
  // update. On error the filter is left at its last valid estimate and the
  // exception propagates.
  EstimateRecord step(const SensorRecord& rec);

  bool initialized() const { return initialized_; }
  const ukf::GaussianEstimate& estimate() const { return est_; }
  double last_lambda() const { return lambda_; }
  double adaptation_scale() const { return adaptation_.scale(); }

 private:
  EstimateRecord emit(double timestamp) const;

  EstimatorConfig cfg_;
  ukf::UkfConfig ukf_;
  ukf::GaussianEstimate est_;
  aukf::InnovationAdaptation adaptation_;
  aukf::FuzzySupervisor supervisor_;
  Vec prev_input_;
  double prev_time_ = 0.0;
  double lambda_ = 0.0;
  bool initialized_ = false;
};

}  // namespace traction
