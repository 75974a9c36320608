// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "wrconv/errors.hpp"
#include "wrconv/simd/kernels.hpp"

namespace wrconv::simd {

#if defined(WRCONV_HAVE_AVX2_TU)
const KernelTable& avx2_kernel_table();
#endif

namespace {

Isa detect_isa() {
  if (const char* env = std::getenv("WRCONV_ISA")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && cpu_has_avx2()) return Isa::Avx2;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current_isa() {
  static std::atomic<Isa> isa{detect_isa()};
  return isa;
}

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidDimension("kernel operands differ in length");
}

}  // namespace

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const KernelTable* avx2_kernels() {
#if defined(WRCONV_HAVE_AVX2_TU)
  return &avx2_kernel_table();
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(WRCONV_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current_isa().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) throw InvalidParameter("AVX2 kernels unavailable on this CPU");
  current_isa().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels() {
  if (active_isa() == Isa::Avx2) return *avx2_kernels();
  return scalar_kernels();
}

double dot(std::span<const double> x, std::span<const double> y) {
  check_same(x.size(), y.size());
  return kernels().dot(x.data(), y.data(), x.size());
}

double nrm2(std::span<const double> x) { return std::sqrt(kernels().dot(x.data(), x.data(), x.size())); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_same(x.size(), y.size());
  kernels().axpy(a, x.data(), y.data(), x.size());
}

void sub(std::span<const double> x, std::span<const double> y, std::span<double> out) {
  check_same(x.size(), y.size());
  check_same(x.size(), out.size());
  kernels().sub(x.data(), y.data(), out.data(), x.size());
}

void soft_threshold(std::span<const double> x, double t, std::span<double> out) {
  check_same(x.size(), out.size());
  kernels().soft_threshold(x.data(), t, out.data(), x.size());
}

void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  check_same(a.size(), b.size());
  check_same(a.size(), out.size());
  kernels().cmul(a.data(), b.data(), out.data(), a.size());
}

void cmul_conj(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  check_same(a.size(), b.size());
  check_same(a.size(), out.size());
  kernels().cmul_conj(a.data(), b.data(), out.data(), a.size());
}

void cdiv_real(std::span<const cplx> a, std::span<const double> d, std::span<cplx> out) {
  check_same(a.size(), d.size());
  check_same(a.size(), out.size());
  kernels().cdiv_real(a.data(), d.data(), out.data(), a.size());
}

}  // namespace wrconv::simd
