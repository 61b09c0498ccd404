#include "realcech/kernels/modp.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace realcech::kernels {

namespace {

// Same reduction as the vector lanes, used for the tail.
__attribute__((target("avx2,fma"))) inline double reduce_lane(double d, double s, double factor, const Modulus& m) {
  double prod = factor * s;
  double q = std::floor(prod * m.inv);
  double r = std::fma(-q, m.pd, prod);
  if (r < 0) r += m.pd;
  if (r >= m.pd) r -= m.pd;
  d -= r;
  if (d < 0) d += m.pd;
  return d;
}

}  // namespace

__attribute__((target("avx2,fma"))) void axpy_mod_avx2(std::span<double> dst, std::span<const double> src,
                                                        double factor, const Modulus& m) {
  const __m256d P = _mm256_set1_pd(m.pd);
  const __m256d INV = _mm256_set1_pd(m.inv);
  const __m256d F = _mm256_set1_pd(factor);
  const __m256d ZERO = _mm256_setzero_pd();
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_loadu_pd(src.data() + i);
    __m256d d = _mm256_loadu_pd(dst.data() + i);
    __m256d prod = _mm256_mul_pd(F, s);
    __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, INV));
    __m256d r = _mm256_fnmadd_pd(q, P, prod);
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, ZERO, _CMP_LT_OQ), P));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, P, _CMP_GE_OQ), P));
    d = _mm256_sub_pd(d, r);
    d = _mm256_add_pd(d, _mm256_and_pd(_mm256_cmp_pd(d, ZERO, _CMP_LT_OQ), P));
    _mm256_storeu_pd(dst.data() + i, d);
  }
  for (; i < n; ++i) dst[i] = reduce_lane(dst[i], src[i], factor, m);
}

}  // namespace realcech::kernels

#endif
