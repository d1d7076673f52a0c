#include "traction/aukf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "traction/kernels.hpp"

namespace traction::aukf {

InnovationAdaptation::InnovationAdaptation(AdaptationConfig cfg)
    : cfg_(cfg) {
  if (cfg_.window < 1) throw std::invalid_argument("adaptation.window must be >= 1");
  if (!(cfg_.a_min <= cfg_.a_max))
    throw std::invalid_argument("adaptation: a_min must be <= a_max");
}

void InnovationAdaptation::observe(const Vec& innovation,
                                   const Mat& innovation_cov) {
  Entry e;
  e.nu_sq = kernels::dot(innovation.data(), innovation.data(),
                         innovation.size());
  e.s_trace = innovation_cov.trace();
  buf_.push_back(e);
  while (buf_.size() > cfg_.window) buf_.pop_front();

  double nu_sum = 0.0, s_sum = 0.0;
  for (const Entry& b : buf_) {
    nu_sum += b.nu_sq;
    s_sum += b.s_trace;
  }
  if (s_sum <= 0.0) {
    scale_ = 1.0;
    return;
  }
  scale_ = std::clamp(nu_sum / s_sum, cfg_.a_min, cfg_.a_max);
}

namespace {

// Triangular memberships over the normalized intensity u in [0, 1]:
// low peaks at 0, medium at 1/2, high at 1.
struct Labels {
  double low, med, high;
};

Labels fuzzify(double u) {
  Labels l{};
  l.low = std::max(0.0, 1.0 - 2.0 * u);
  l.med = std::max(0.0, 1.0 - std::fabs(2.0 * u - 1.0));
  l.high = std::max(0.0, 2.0 * u - 1.0);
  return l;
}

double normalize(double mean_abs_diff, double scale,
                 const SupervisorConfig& cfg) {
  const double z = mean_abs_diff / std::max(scale, 1e-300);
  const double span = cfg.high - cfg.low;
  return std::clamp((z - cfg.low) / span, 0.0, 1.0);
}

// Max-min rule base: the output label is the stronger of the two input
// labels (the more active channel dominates).
double infer(const Labels& a, const Labels& b) {
  const double s_low = std::min(a.low, b.low);
  double s_med = std::min(a.low, b.med);
  s_med = std::max(s_med, std::min(a.med, b.low));
  s_med = std::max(s_med, std::min(a.med, b.med));
  double s_high = std::min(a.high, b.high);
  s_high = std::max(s_high, std::min(a.high, b.med));
  s_high = std::max(s_high, std::min(a.high, b.low));
  s_high = std::max(s_high, std::min(a.med, b.high));
  s_high = std::max(s_high, std::min(a.low, b.high));

  const double denom = s_low + s_med + s_high;
  if (denom <= 0.0) return 0.0;
  // Centroid over the output-label centers {0, 1/2, 1}.
  return (0.5 * s_med + 1.0 * s_high) / denom;
}

}  // namespace

double dynamics_intensity(const std::vector<std::array<double, 4>>& omega,
                          const std::vector<double>& v,
                          const SupervisorConfig& cfg) {
  if (omega.size() < 2 || v.size() < 2)
    throw std::invalid_argument("dynamics_intensity: need at least 2 samples");
  if (!(cfg.low < cfg.high))
    throw std::invalid_argument("supervisor: low threshold must be < high");

  double omega_acc = 0.0;
  for (std::size_t i = 1; i < omega.size(); ++i)
    for (std::size_t w = 0; w < 4; ++w)
      omega_acc += std::fabs(omega[i][w] - omega[i - 1][w]);
  const double omega_mad =
      omega_acc / (4.0 * static_cast<double>(omega.size() - 1));

  double v_acc = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) v_acc += std::fabs(v[i] - v[i - 1]);
  const double v_mad = v_acc / static_cast<double>(v.size() - 1);

  const Labels a = fuzzify(normalize(omega_mad, cfg.omega_scale, cfg));
  const Labels b = fuzzify(normalize(v_mad, cfg.v_scale, cfg));
  return infer(a, b);
}

FuzzySupervisor::FuzzySupervisor(SupervisorConfig cfg) : cfg_(cfg) {
  if (cfg_.window < 2) throw std::invalid_argument("supervisor.window must be >= 2");
  if (!(cfg_.low < cfg_.high))
    throw std::invalid_argument("supervisor: low threshold must be < high");
  if (!(0.0 <= cfg_.lambda_min && cfg_.lambda_min <= cfg_.lambda_max &&
        cfg_.lambda_max <= 1.0))
    throw std::invalid_argument("supervisor: need 0 <= lambda_min <= lambda_max <= 1");
}

void FuzzySupervisor::observe(const std::array<double, 4>& omega, double v) {
  omega_.push_back(omega);
  v_.push_back(v);
  while (omega_.size() > cfg_.window) omega_.pop_front();
  while (v_.size() > cfg_.window) v_.pop_front();
}

double FuzzySupervisor::intensity() const {
  if (omega_.size() < 2) return 0.0;
  return dynamics_intensity({omega_.begin(), omega_.end()},
                            {v_.begin(), v_.end()}, cfg_);
}

double FuzzySupervisor::blend() const {
  return cfg_.lambda_min + (cfg_.lambda_max - cfg_.lambda_min) * intensity();
}

Mat effective_process_noise(const Mat& q, const Mat& a, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("effective_process_noise: lambda must be in [0,1]");
  Mat blend = a;
  blend *= lambda;
  for (std::size_t i = 0; i < blend.rows(); ++i) blend(i, i) += 1.0 - lambda;
  Mat out = blend * q;
  out.symmetrize();
  return out;
}

Mat effective_process_noise(const Mat& q, double a, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("effective_process_noise: lambda must be in [0,1]");
  Mat out = q;
  out *= lambda * a + (1.0 - lambda);
  return out;
}

}  // namespace traction::aukf
