// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

// Compiled with -mavx2 -mfma -ffp-contract=off. Only reached through the
// dispatcher after a CPUID check.

#include <immintrin.h>

#include <cmath>

#include "wrconv/simd/kernels.hpp"

namespace wrconv::simd {
namespace {

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  const __m128d lo = _mm256_castpd256_pd128(acc0);
  const __m128d hi = _mm256_extractf128_pd(acc0, 1);
  __m128d s = _mm_add_pd(lo, hi);
  s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
  double total = _mm_cvtsd_f64(s);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void sub_avx2(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) out[i] = x[i] - y[i];
}

void soft_threshold_avx2(const double* x, double t, double* out, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d sign = _mm256_and_pd(v, sign_mask);
    const __m256d mag = _mm256_sub_pd(_mm256_andnot_pd(sign_mask, v), vt);
    const __m256d keep = _mm256_cmp_pd(mag, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(out + i, _mm256_and_pd(keep, _mm256_or_pd(mag, sign)));
  }
  for (; i < n; ++i) {
    const double mag = std::fabs(x[i]) - t;
    out[i] = mag > 0.0 ? std::copysign(mag, x[i]) : 0.0;
  }
}

// Two complex numbers per register: [re0 im0 re1 im1].
inline __m256d cmul_pd(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);         // br br
  const __m256d b_im = _mm256_permute_pd(b, 0xF);    // bi bi
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);    // ai ar
  // [ar*br - ai*bi, ai*br + ar*bi]
  return _mm256_addsub_pd(_mm256_mul_pd(a, b_re), _mm256_mul_pd(a_sw, b_im));
}

void cmul_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(po + 2 * i, cmul_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void cmul_conj_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d a_re = _mm256_movedup_pd(va);       // ar ar
    const __m256d a_im = _mm256_permute_pd(va, 0xF);  // ai ai
    const __m256d b_sw = _mm256_permute_pd(vb, 0x5);  // bi br
    // t1 = [ar*br, ar*bi], t2 = [ai*bi, ai*br]; want [t1.re + t2.re, t1.im - t2.im]
    const __m256d t1 = _mm256_mul_pd(a_re, vb);
    const __m256d t2 = _mm256_mul_pd(a_im, b_sw);
    const __m256d flip = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(t1, _mm256_xor_pd(t2, flip)));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br + ai * bi, ar * bi - ai * br);
  }
}

void cdiv_real_avx2(const cplx* a, const double* d, cplx* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vd = _mm256_set_pd(d[i + 1], d[i + 1], d[i], d[i]);
    _mm256_storeu_pd(po + 2 * i, _mm256_div_pd(_mm256_loadu_pd(pa + 2 * i), vd));
  }
  for (; i < n; ++i) out[i] = cplx(a[i].real() / d[i], a[i].imag() / d[i]);
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{dot_avx2,  axpy_avx2,      sub_avx2,      soft_threshold_avx2,
                                 cmul_avx2, cmul_conj_avx2, cdiv_real_avx2};
  return table;
}

}  // namespace wrconv::simd
