// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>

// Data-parallel inner loops of the solver and the FFT-based operators.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2 variant. The variant is chosen once at startup from CPUID; the
// WRCONV_ISA environment variable ("scalar" or "avx2") overrides the
// choice. Elementwise kernels are bit-identical across variants; the
// reductions (dot, nrm2) reassociate and agree to rounding.

namespace wrconv::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);

/// Function table for one instruction set.
struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out = x - y
  void (*sub)(const double* x, const double* y, double* out, std::size_t n);
  // out = sign(x) * max(|x| - t, 0)
  void (*soft_threshold)(const double* x, double t, double* out, std::size_t n);
  // out = a * b (complex, elementwise)
  void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out = conj(a) * b
  void (*cmul_conj)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out = a / d for real positive d (elementwise complex by real)
  void (*cdiv_real)(const cplx* a, const double* d, cplx* out, std::size_t n);
};

const KernelTable& scalar_kernels();
/// Null when the AVX2 translation unit was not built.
const KernelTable* avx2_kernels();

bool cpu_has_avx2();

/// Currently dispatched instruction set.
Isa active_isa();

/// Forces a variant (tests and benchmarking). Throws InvalidParameter when
/// the variant is not available on this machine.
void set_isa(Isa isa);

const KernelTable& kernels();

// Span front-ends. Length mismatches throw InvalidDimension.
double dot(std::span<const double> x, std::span<const double> y);
double nrm2(std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
void sub(std::span<const double> x, std::span<const double> y, std::span<double> out);
void soft_threshold(std::span<const double> x, double t, std::span<double> out);
void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void cmul_conj(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void cdiv_real(std::span<const cplx> a, std::span<const double> d, std::span<cplx> out);

}  // namespace wrconv::simd
