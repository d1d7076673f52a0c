// Generic unscented Kalman filter core: scaled sigma-point generation,
// unscented transform based predict, and measurement update for arbitrary
// transition/measurement functions. No state is kept between calls; distinct
// filter instances can live on distinct threads.
#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

#include "traction/linalg.hpp"

namespace traction::ukf {

struct GaussianEstimate {
  Vec mean;
  Mat cov;
};

// 2n+1 points stored one per row (feeds the kernels layer directly), plus
// the mean and covariance recombination weights.
struct SigmaPointSet {
  Mat points;  // (2n+1) x n
  Vec wm;
  Vec wc;

  std::size_t count() const { return points.rows(); }
  std::size_t dim() const { return points.cols(); }
};

// Scaled unscented transform parameters. Defaults follow the standard
// Gaussian-optimal choice (alpha small, beta = 2, kappa = 0).
struct UtParams {
  double alpha = 1e-3;  // spread, in (0, 1]
  double beta = 2.0;    // prior-distribution weighting
  double kappa = 0.0;   // secondary scaling

  double lambda(std::size_t n) const {
    return alpha * alpha * (static_cast<double>(n) + kappa) -
           static_cast<double>(n);
  }
};

struct UkfConfig {
  UtParams ut;
  Mat q;  // process noise, n x n
  Mat r;  // measurement noise, m x m
};

struct CovarianceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PropagationError : std::runtime_error {
  PropagationError(const char* what, std::size_t index)
      : std::runtime_error(what), point_index(index) {}
  std::size_t point_index;
};

struct InnovationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using TransitionFn = std::function<Vec(const Vec& state, const Vec& input)>;
using MeasurementFn = std::function<Vec(const Vec& state)>;

// Cholesky with the conditioning policy used throughout the filter: try the
// matrix as-is, then with jitter 1e-9*trace(P)/n*I escalating x10 for up to
// three attempts, then raise CovarianceError.
Mat robust_cholesky(const Mat& p);

// chi_0 = mean, chi_i = mean +/- sqrt(n+lambda) * L_col_i. The weighted mean
// of the returned points reconstructs the input mean exactly.
SigmaPointSet generate_sigma_points(const GaussianEstimate& est,
                                    const UtParams& ut);

// Propagates every sigma point through f (with the input held), recombines,
// and adds q_eff. The returned covariance is symmetrized.
GaussianEstimate predict(const SigmaPointSet& points, const TransitionFn& f,
                         const Vec& input, const Mat& q_eff);

struct UpdateResult {
  GaussianEstimate posterior;
  Vec innovation;      // y - y_hat
  Mat innovation_cov;  // S = cov(y_hat) + R
};

// Measurement update. `points` must be freshly generated from `prior` (the
// sigma points are recalculated after prediction rather than reused).
UpdateResult update(const GaussianEstimate& prior, const SigmaPointSet& points,
                    const MeasurementFn& h, const Vec& y, const Mat& r);

}  // namespace traction::ukf
