// AVX2+FMA kernel variants. Compiled only on x86-64 with -mavx2 -mfma; the
// dispatcher guards entry with a cpuid check, so nothing here runs on CPUs
// without the extensions.
#include "kernels_table.hpp"

#if defined(TRACTION_HAVE_AVX2)

#include <immintrin.h>

#include <cstddef>
#include <stdexcept>

#include "traction/kernels.hpp"

namespace traction::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

void weighted_sum_avx2(const double* pts, const double* w, std::size_t count,
                       std::size_t dim, double* out) {
  for (std::size_t j = 0; j < dim; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const __m256d wv = _mm256_set1_pd(w[i]);
    const double* row = pts + i * dim;
    std::size_t j = 0;
    for (; j + 4 <= dim; j += 4) {
      __m256d acc = _mm256_loadu_pd(out + j);
      acc = _mm256_fmadd_pd(wv, _mm256_loadu_pd(row + j), acc);
      _mm256_storeu_pd(out + j, acc);
    }
    for (; j < dim; ++j) out[j] += w[i] * row[j];
  }
}

void weighted_outer_acc_avx2(const double* pts, const double* w,
                             const double* mean, std::size_t count,
                             std::size_t dim, double* dst) {
  if (dim > max_dim) throw std::invalid_argument("weighted_outer_acc: dim too large");
  double d[max_dim];
  for (std::size_t i = 0; i < count; ++i) {
    const double* row = pts + i * dim;
    std::size_t j = 0;
    for (; j + 4 <= dim; j += 4)
      _mm256_storeu_pd(d + j, _mm256_sub_pd(_mm256_loadu_pd(row + j),
                                            _mm256_loadu_pd(mean + j)));
    for (; j < dim; ++j) d[j] = row[j] - mean[j];

    const double wi = w[i];
    for (std::size_t r = 0; r < dim; ++r) {
      const double f = wi * d[r];
      const __m256d fv = _mm256_set1_pd(f);
      double* out_row = dst + r * dim;
      std::size_t c = 0;
      for (; c + 4 <= dim; c += 4) {
        __m256d acc = _mm256_loadu_pd(out_row + c);
        acc = _mm256_fmadd_pd(fv, _mm256_loadu_pd(d + c), acc);
        _mm256_storeu_pd(out_row + c, acc);
      }
      for (; c < dim; ++c) out_row[c] += f * d[c];
    }
  }
}

void weighted_cross_acc_avx2(const double* a, const double* a_mean,
                             std::size_t adim, const double* b,
                             const double* b_mean, std::size_t bdim,
                             const double* w, std::size_t count, double* dst) {
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
      const __m256d fv = _mm256_set1_pd(wi * da[r]);
      double* out_row = dst + r * bdim;
      std::size_t c = 0;
      for (; c + 4 <= bdim; c += 4) {
        __m256d acc = _mm256_loadu_pd(out_row + c);
        acc = _mm256_fmadd_pd(fv, _mm256_loadu_pd(db + c), acc);
        _mm256_storeu_pd(out_row + c, acc);
      }
      for (; c < bdim; ++c) out_row[c] += wi * da[r] * db[c];
    }
  }
}

void scaled_add_avx2(const double* x, const double* k, double alpha,
                     std::size_t n, double* out) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_fmadd_pd(av, _mm256_loadu_pd(k + i),
                                _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = x[i] + alpha * k[i];
}

void rk4_combine_avx2(const double* x0, const double* k1, const double* k2,
                      const double* k3, const double* k4, double dt,
                      std::size_t n, double* out) {
  const double h = dt / 6.0;
  const __m256d hv = _mm256_set1_pd(h);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_loadu_pd(k1 + i);
    s = _mm256_fmadd_pd(two, _mm256_loadu_pd(k2 + i), s);
    s = _mm256_fmadd_pd(two, _mm256_loadu_pd(k3 + i), s);
    s = _mm256_add_pd(s, _mm256_loadu_pd(k4 + i));
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(hv, s, _mm256_loadu_pd(x0 + i)));
  }
  for (; i < n; ++i)
    out[i] = x0[i] + h * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4),
                           acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double r = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double r = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) r += x[i];
  return r;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      weighted_sum_avx2,      weighted_outer_acc_avx2,
      weighted_cross_acc_avx2, scaled_add_avx2,
      rk4_combine_avx2,       dot_avx2,
      sum_avx2,
  };
  return table;
}

}  // namespace traction::kernels::detail

#endif  // TRACTION_HAVE_AVX2
