// Internal dispatch table shared by the kernel backends.
#pragma once

#include <cstddef>

namespace traction::kernels::detail {

struct KernelTable {
  void (*weighted_sum)(const double*, const double*, std::size_t, std::size_t,
                       double*);
  void (*weighted_outer_acc)(const double*, const double*, const double*,
                             std::size_t, std::size_t, double*);
  void (*weighted_cross_acc)(const double*, const double*, std::size_t,
                             const double*, const double*, std::size_t,
                             const double*, std::size_t, double*);
  void (*scaled_add)(const double*, const double*, double, std::size_t,
                     double*);
  void (*rk4_combine)(const double*, const double*, const double*,
                      const double*, const double*, double, std::size_t,
                      double*);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
};

const KernelTable& scalar_table();

#if defined(TRACTION_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace traction::kernels::detail
