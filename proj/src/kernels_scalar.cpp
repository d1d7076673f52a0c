// Scalar reference kernels. These define the semantics the SIMD variants are
// equivalence-tested against.
#include "kernels_table.hpp"

#include <cstddef>
#include <stdexcept>

#include "traction/kernels.hpp"

namespace traction::kernels::detail {
namespace {

void weighted_sum_scalar(const double* pts, const double* w, std::size_t count,
                         std::size_t dim, double* out) {
  for (std::size_t j = 0; j < dim; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double wi = w[i];
    const double* row = pts + i * dim;
    for (std::size_t j = 0; j < dim; ++j) out[j] += wi * row[j];
  }
}

void weighted_outer_acc_scalar(const double* pts, const double* w,
                               const double* mean, std::size_t count,
                               std::size_t dim, double* dst) {
  if (dim > max_dim) throw std::invalid_argument("weighted_outer_acc: dim too large");
  double d[max_dim];
  for (std::size_t i = 0; i < count; ++i) {
    const double* row = pts + i * dim;
    for (std::size_t j = 0; j < dim; ++j) d[j] = row[j] - mean[j];
    const double wi = w[i];
    for (std::size_t r = 0; r < dim; ++r) {
      const double f = wi * d[r];
      double* out_row = dst + r * dim;
      for (std::size_t c = 0; c < dim; ++c) out_row[c] += f * d[c];
    }
  }
}

void weighted_cross_acc_scalar(const double* a, const double* a_mean,
                               std::size_t adim, const double* b,
                               const double* b_mean, std::size_t bdim,
                               const double* w, std::size_t count,
                               double* dst) {
  if (adim > max_dim || bdim > max_dim)
    throw std::invalid_argument("weighted_cross_acc: dim too large");
  double da[max_dim];
  double db[max_dim];
  for (std::size_t i = 0; i < count; ++i) {
    const double* arow = a + i * adim;
    const double* brow = b + i * bdim;
    for (std::size_t j = 0; j < adim; ++j) da[j] = arow[j] - a_mean[j];
    for (std::size_t j = 0; j < bdim; ++j) db[j] = brow[j] - b_mean[j];
    const double wi = w[i];
    for (std::size_t r = 0; r < adim; ++r) {
      const double f = wi * da[r];
      double* out_row = dst + r * bdim;
      for (std::size_t c = 0; c < bdim; ++c) out_row[c] += f * db[c];
    }
  }
}

void scaled_add_scalar(const double* x, const double* k, double alpha,
                       std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + alpha * k[i];
}

void rk4_combine_scalar(const double* x0, const double* k1, const double* k2,
                        const double* k3, const double* k4, double dt,
                        std::size_t n, double* out) {
  const double h = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i)
    out[i] = x0[i] + h * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      weighted_sum_scalar,      weighted_outer_acc_scalar,
      weighted_cross_acc_scalar, scaled_add_scalar,
      rk4_combine_scalar,       dot_scalar,
      sum_scalar,
  };
  return table;
}

}  // namespace traction::kernels::detail
