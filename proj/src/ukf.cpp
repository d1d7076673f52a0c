#include "traction/ukf.hpp"

#include <cmath>

#include "traction/kernels.hpp"

namespace traction::ukf {

Mat robust_cholesky(const Mat& p) {
  try {
    return cholesky(p);
  } catch (const CholeskyError&) {
  }
  const std::size_t n = p.rows();
  double jitter = 1e-9 * std::max(p.trace(), 0.0) / static_cast<double>(n);
  if (jitter <= 0.0) jitter = 1e-15;
  for (int attempt = 0; attempt < 3; ++attempt) {
    Mat padded = p;
    for (std::size_t i = 0; i < n; ++i) padded(i, i) += jitter;
    try {
      return cholesky(padded);
    } catch (const CholeskyError&) {
    }
    jitter *= 10.0;
  }
  throw CovarianceError("covariance not factorizable after maximum jitter");
}

SigmaPointSet generate_sigma_points(const GaussianEstimate& est,
                                    const UtParams& ut) {
  const std::size_t n = est.mean.size();
  const double lambda = ut.lambda(n);
  const double scale = std::sqrt(static_cast<double>(n) + lambda);
  const Mat l = robust_cholesky(est.cov);

  SigmaPointSet set;
  set.points = Mat(2 * n + 1, n);
  set.wm = Vec(2 * n + 1);
  set.wc = Vec(2 * n + 1);

  const double denom = static_cast<double>(n) + lambda;
  set.wm[0] = lambda / denom;
  set.wc[0] = lambda / denom + (1.0 - ut.alpha * ut.alpha + ut.beta);
  for (std::size_t i = 1; i <= 2 * n; ++i) {
    set.wm[i] = 1.0 / (2.0 * denom);
    set.wc[i] = set.wm[i];
  }

  for (std::size_t j = 0; j < n; ++j) set.points(0, j) = est.mean[j];
  for (std::size_t i = 0; i < n; ++i) {
    double* plus = set.points.row(1 + i);
    double* minus = set.points.row(1 + n + i);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = scale * l(j, i);  // i-th column of L
      plus[j] = est.mean[j] + d;
      minus[j] = est.mean[j] - d;
    }
  }
  return set;
}

GaussianEstimate predict(const SigmaPointSet& points, const TransitionFn& f,
                         const Vec& input, const Mat& q_eff) {
  const std::size_t count = points.count();
  const std::size_t n = points.dim();

  Mat propagated(count, n);
  Vec x(n);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < n; ++j) x[j] = points.points(i, j);
    const Vec fx = f(x, input);
    if (fx.size() != n)
      throw PropagationError("predict: transition changed dimension", i);
    if (!fx.all_finite())
      throw PropagationError("predict: non-finite propagated point", i);
    for (std::size_t j = 0; j < n; ++j) propagated(i, j) = fx[j];
  }

  GaussianEstimate out;
  out.mean = Vec(n);
  kernels::weighted_sum(propagated.data(), points.wm.data(), count, n,
                        out.mean.data());
  out.cov = q_eff;
  kernels::weighted_outer_acc(propagated.data(), points.wc.data(),
                              out.mean.data(), count, n, out.cov.data());
  out.cov.symmetrize();
  return out;
}

UpdateResult update(const GaussianEstimate& prior, const SigmaPointSet& points,
                    const MeasurementFn& h, const Vec& y, const Mat& r) {
  const std::size_t count = points.count();
  const std::size_t n = points.dim();
  const std::size_t m = y.size();

  Mat observed(count, m);
  Vec x(n);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < n; ++j) x[j] = points.points(i, j);
    const Vec hx = h(x);
    if (hx.size() != m)
      throw PropagationError("update: measurement dimension mismatch", i);
    if (!hx.all_finite())
      throw PropagationError("update: non-finite measurement point", i);
    for (std::size_t j = 0; j < m; ++j) observed(i, j) = hx[j];
  }

  Vec y_hat(m);
  kernels::weighted_sum(observed.data(), points.wm.data(), count, m,
                        y_hat.data());

  Mat s = r;
  kernels::weighted_outer_acc(observed.data(), points.wc.data(), y_hat.data(),
                              count, m, s.data());
  s.symmetrize();

  Mat c(n, m);
  kernels::weighted_cross_acc(points.points.data(), prior.mean.data(), n,
                              observed.data(), y_hat.data(), m,
                              points.wc.data(), count, c.data());

  Mat ls;
  try {
    ls = cholesky(s);
  } catch (const CholeskyError&) {
    throw InnovationError("update: innovation covariance not invertible");
  }
  // K = C S^-1  via  S K^T = C^T (S symmetric).
  Mat k;
  try {
    k = chol_solve(ls, c.transposed()).transposed();
  } catch (const CholeskyError&) {
    throw InnovationError("update: innovation covariance singular");
  }

  Vec innovation = y;
  innovation -= y_hat;

  UpdateResult out;
  out.posterior.mean = prior.mean + k * innovation;
  out.posterior.cov = prior.cov - k * s * k.transposed();
  out.posterior.cov.symmetrize();
  out.innovation = std::move(innovation);
  out.innovation_cov = std::move(s);
  return out;
}

}  // namespace traction::ukf
