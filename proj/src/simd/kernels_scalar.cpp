// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/simd/kernels.hpp"

#include <cmath>

namespace wrconv::simd {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void sub_scalar(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

void soft_threshold_scalar(const double* x, double t, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::fabs(x[i]) - t;
    out[i] = mag > 0.0 ? std::copysign(mag, x[i]) : 0.0;
  }
}

// Written out rather than via std::complex operator* so the rounding matches
// the vector variant (no Annex G inf/nan recovery).
void cmul_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void cmul_conj_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br + ai * bi, ar * bi - ai * br);
  }
}

void cdiv_real_scalar(const cplx* a, const double* d, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = cplx(a[i].real() / d[i], a[i].imag() / d[i]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{dot_scalar,   axpy_scalar,      sub_scalar,      soft_threshold_scalar,
                                 cmul_scalar, cmul_conj_scalar, cdiv_real_scalar};
  return table;
}

}  // namespace wrconv::simd
