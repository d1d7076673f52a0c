// Data-parallel inner-loop kernels with runtime backend selection.
//
// Every operation has a scalar reference implementation and, on x86-64
// hardware with AVX2+FMA, a vectorized variant. The active backend is picked
// once at startup (cpuid, overridable via the TRACTION_KERNELS environment
// variable or force_backend()) and stays fixed for the process, so repeated
// runs on one machine are bit-reproducible.
#pragma once

#include <cstddef>

namespace traction::kernels {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();

// Selects a backend explicitly (tests use this to compare variants).
// Throws std::invalid_argument if the backend is unavailable on this CPU.
void force_backend(Backend b);

// out[j] = sum_i w[i] * pts[i*dim + j]          (pts is count x dim, row-major)
void weighted_sum(const double* pts, const double* w, std::size_t count,
                  std::size_t dim, double* out);

// dst += sum_i w[i] * (pts_i - mean) (pts_i - mean)^T   (dst is dim x dim)
void weighted_outer_acc(const double* pts, const double* w, const double* mean,
                        std::size_t count, std::size_t dim, double* dst);

// dst += sum_i w[i] * (a_i - a_mean) (b_i - b_mean)^T   (dst is adim x bdim)
void weighted_cross_acc(const double* a, const double* a_mean, std::size_t adim,
                        const double* b, const double* b_mean, std::size_t bdim,
                        const double* w, std::size_t count, double* dst);

// out = x + alpha * k
void scaled_add(const double* x, const double* k, double alpha, std::size_t n,
                double* out);

// out = x0 + (dt/6) * (k1 + 2*k2 + 2*k3 + k4)
void rk4_combine(const double* x0, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt, std::size_t n,
                 double* out);

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);

// Maximum state dimension accepted by the outer/cross kernels (they stage
// centered deviations in fixed stack buffers).
inline constexpr std::size_t max_dim = 64;

}  // namespace traction::kernels
