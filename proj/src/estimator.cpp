#include "traction/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace traction {

namespace si = state_index;

void EstimatorConfig::validate() const {
  vehicle.validate();
  if (!(ut.alpha > 0.0 && ut.alpha <= 1.0))
    throw std::invalid_argument("filter.alpha must be in (0,1]");
  if (!(q_speed >= 0.0 && q_mu >= 0.0 && q_rho >= 0.0))
    throw std::invalid_argument("filter.q_* must be >= 0");
  if (!(sigma_omega > 0.0 && sigma_v > 0.0))
    throw std::invalid_argument("filter.sigma_* must be > 0");
  if (!(init_var_mu > 0.0 && init_var_rho_s > 0.0))
    throw std::invalid_argument("filter.init_var_* must be > 0");
}

Vec transition(const Vec& x, const Vec& u, double dt,
               const dynamics::VehicleParams& params) {
  if (!(dt > 0.0)) throw std::invalid_argument("transition: dt must be > 0");

  auto deriv = [&params](const Vec& state, const Vec& input) {
    const double m = params.mass;
    const double g = params.gravity;
    const double f_zf = input[4];
    const double f_zr = (m * g - 2.0 * f_zf) / 2.0;

    Vec dx(si::count);
    double f_h_sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double f_z = i < 2 ? f_zf : f_zr;
      dynamics::WheelDynState w;
      w.omega = state[si::omega0 + i];
      w.torque = input[i];
      w.f_z = f_z;
      w.f_h = state[si::mu0 + i] * f_z;
      dx[si::omega0 + i] = dynamics::wheel_angular_accel(w, params.wheels[i]);
      f_h_sum += w.f_h;
    }
    dx[si::v] = dynamics::body_accel(f_h_sum, input[5], state[si::rho_s], m, g);
    // mu_1..4 and rho_s are frozen within the step.
    return dx;
  };

  return dynamics::rk4_step(x, u, deriv, dt);
}

Vec measure(const Vec& x) {
  Vec y(5);
  for (std::size_t i = 0; i < 5; ++i) y[i] = x[i];
  return y;
}

Vec input_vector(const SensorRecord& rec) {
  Vec u(6);
  for (std::size_t i = 0; i < 4; ++i) u[i] = rec.torque[i];
  u[4] = rec.f_zf;
  u[5] = rec.f_dx;
  return u;
}

namespace {

Vec measurement_vector(const SensorRecord& rec) {
  Vec y(5);
  for (std::size_t i = 0; i < 4; ++i) y[i] = rec.omega[i];
  y[4] = rec.v;
  return y;
}

}  // namespace

TractionEstimator::TractionEstimator(EstimatorConfig cfg)
    : cfg_(std::move(cfg)),
      adaptation_(cfg_.adaptation),
      supervisor_(cfg_.supervisor) {
  cfg_.validate();

  ukf_.ut = cfg_.ut;
  Vec q_diag(si::count);
  for (std::size_t i = 0; i < 4; ++i) q_diag[si::omega0 + i] = cfg_.q_speed;
  q_diag[si::v] = cfg_.q_speed;
  for (std::size_t i = 0; i < 4; ++i) q_diag[si::mu0 + i] = cfg_.q_mu;
  q_diag[si::rho_s] = cfg_.q_rho;
  ukf_.q = Mat::diagonal(q_diag);

  Vec r_diag(5);
  for (std::size_t i = 0; i < 4; ++i) r_diag[i] = cfg_.sigma_omega * cfg_.sigma_omega;
  r_diag[4] = cfg_.sigma_v * cfg_.sigma_v;
  ukf_.r = Mat::diagonal(r_diag);
}

EstimateRecord TractionEstimator::emit(double timestamp) const {
  EstimateRecord rec;
  rec.timestamp = timestamp;
  for (std::size_t i = 0; i < si::count; ++i) {
    rec.state[i] = est_.mean[i];
    rec.variance[i] = est_.cov(i, i);
  }
  for (std::size_t i = 0; i < 4; ++i)
    rec.slip[i] = dynamics::slip_ratio(est_.mean[si::v],
                                       est_.mean[si::omega0 + i],
                                       cfg_.vehicle.wheels[i].rolling_radius);
  rec.lambda = lambda_;
  rec.adaptation = adaptation_.scale();
  return rec;
}

EstimateRecord TractionEstimator::step(const SensorRecord& rec) {
  if (initialized_ && !(rec.timestamp > prev_time_))
    throw std::invalid_argument("estimator: timestamps must be strictly increasing");

  supervisor_.observe(rec.omega, rec.v);
  const Vec y = measurement_vector(rec);

  if (!initialized_) {
    est_.mean = Vec(si::count);
    for (std::size_t i = 0; i < 4; ++i) est_.mean[si::omega0 + i] = rec.omega[i];
    est_.mean[si::v] = rec.v;
    for (std::size_t i = 0; i < 4; ++i) est_.mean[si::mu0 + i] = cfg_.init_mu;
    est_.mean[si::rho_s] = cfg_.init_rho_s;

    const double var_omega = cfg_.init_var_omega > 0.0
                                 ? cfg_.init_var_omega
                                 : cfg_.sigma_omega * cfg_.sigma_omega;
    const double var_v =
        cfg_.init_var_v > 0.0 ? cfg_.init_var_v : cfg_.sigma_v * cfg_.sigma_v;
    Vec p_diag(si::count);
    for (std::size_t i = 0; i < 4; ++i) p_diag[si::omega0 + i] = var_omega;
    p_diag[si::v] = var_v;
    for (std::size_t i = 0; i < 4; ++i) p_diag[si::mu0 + i] = cfg_.init_var_mu;
    p_diag[si::rho_s] = cfg_.init_var_rho_s;
    est_.cov = Mat::diagonal(p_diag);

    const auto points = ukf::generate_sigma_points(est_, ukf_.ut);
    const auto res = ukf::update(est_, points, measure, y, ukf_.r);
    est_ = res.posterior;
    if (est_.mean[si::rho_s] < 0.0) est_.mean[si::rho_s] = 0.0;
    if (cfg_.adaptation_enabled)
      adaptation_.observe(res.innovation, res.innovation_cov);

    prev_input_ = input_vector(rec);
    prev_time_ = rec.timestamp;
    initialized_ = true;
    return emit(rec.timestamp);
  }

  const ukf::GaussianEstimate saved = est_;
  try {
    const double dt = rec.timestamp - prev_time_;
    const double a = cfg_.adaptation_enabled ? adaptation_.scale() : 1.0;
    lambda_ = cfg_.supervisor_enabled ? supervisor_.blend()
                                      : cfg_.supervisor.lambda_max;
    const Mat q_eff = aukf::effective_process_noise(ukf_.q, a, lambda_);

    const Vec u = prev_input_;
    const auto f = [this, dt](const Vec& x, const Vec& uu) {
      return transition(x, uu, dt, cfg_.vehicle);
    };

    const auto points = ukf::generate_sigma_points(est_, ukf_.ut);
    const ukf::GaussianEstimate prior = ukf::predict(points, f, u, q_eff);
    const auto prior_points = ukf::generate_sigma_points(prior, ukf_.ut);
    const auto res = ukf::update(prior, prior_points, measure, y, ukf_.r);

    if (cfg_.adaptation_enabled)
      adaptation_.observe(res.innovation, res.innovation_cov);

    est_ = res.posterior;
    if (est_.mean[si::rho_s] < 0.0) est_.mean[si::rho_s] = 0.0;
  } catch (...) {
    est_ = saved;
    throw;
  }

  prev_input_ = input_vector(rec);
  prev_time_ = rec.timestamp;
  return emit(rec.timestamp);
}

}  // namespace traction
