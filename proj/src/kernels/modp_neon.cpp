#include "realcech/kernels/modp.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace realcech::kernels {

void axpy_mod_neon(std::span<double> dst, std::span<const double> src, double factor, const Modulus& m) {
  const float64x2_t P = vdupq_n_f64(m.pd);
  const float64x2_t INV = vdupq_n_f64(m.inv);
  const float64x2_t F = vdupq_n_f64(factor);
  const float64x2_t ZERO = vdupq_n_f64(0.0);
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t s = vld1q_f64(src.data() + i);
    float64x2_t d = vld1q_f64(dst.data() + i);
    float64x2_t prod = vmulq_f64(F, s);
    float64x2_t q = vrndmq_f64(vmulq_f64(prod, INV));
    float64x2_t r = vfmsq_f64(prod, q, P);
    r = vbslq_f64(vcltq_f64(r, ZERO), vaddq_f64(r, P), r);
    r = vbslq_f64(vcgeq_f64(r, P), vsubq_f64(r, P), r);
    d = vsubq_f64(d, r);
    d = vbslq_f64(vcltq_f64(d, ZERO), vaddq_f64(d, P), d);
    vst1q_f64(dst.data() + i, d);
  }
  if (i < n) axpy_mod_scalar(dst.subspan(i), src.subspan(i), factor, m);
}

}  // namespace realcech::kernels

#endif
