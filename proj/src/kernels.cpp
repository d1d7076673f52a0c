// Backend selection and the public kernel entry points.
#include "traction/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_table.hpp"

namespace traction::kernels {
namespace {

using detail::KernelTable;

bool cpu_has_avx2() {
#if defined(TRACTION_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &detail::scalar_table();
    case Backend::avx2:
#if defined(TRACTION_HAVE_AVX2)
      return &detail::avx2_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend pick_default() {
  if (const char* env = std::getenv("TRACTION_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Backend::avx2;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

struct Active {
  Backend backend;
  const KernelTable* table;
};

Active& active() {
  static Active a = [] {
    Backend b = pick_default();
    return Active{b, table_for(b)};
  }();
  return a;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "?";
}

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return cpu_has_avx2();
}

Backend active_backend() { return active().backend; }

void force_backend(Backend b) {
  if (!backend_available(b))
    throw std::invalid_argument(std::string("kernel backend unavailable: ") +
                                backend_name(b));
  active() = Active{b, table_for(b)};
}

void weighted_sum(const double* pts, const double* w, std::size_t count,
                  std::size_t dim, double* out) {
  active().table->weighted_sum(pts, w, count, dim, out);
}

void weighted_outer_acc(const double* pts, const double* w, const double* mean,
                        std::size_t count, std::size_t dim, double* dst) {
  active().table->weighted_outer_acc(pts, w, mean, count, dim, dst);
}

void weighted_cross_acc(const double* a, const double* a_mean, std::size_t adim,
                        const double* b, const double* b_mean, std::size_t bdim,
                        const double* w, std::size_t count, double* dst) {
  active().table->weighted_cross_acc(a, a_mean, adim, b, b_mean, bdim, w, count,
                                     dst);
}

void scaled_add(const double* x, const double* k, double alpha, std::size_t n,
                double* out) {
  active().table->scaled_add(x, k, alpha, n, out);
}

void rk4_combine(const double* x0, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt, std::size_t n,
                 double* out) {
  active().table->rk4_combine(x0, k1, k2, k3, k4, dt, n, out);
}

double dot(const double* a, const double* b, std::size_t n) {
  return active().table->dot(a, b, n);
}

double sum(const double* x, std::size_t n) {
  return active().table->sum(x, n);
}

}  // namespace traction::kernels
