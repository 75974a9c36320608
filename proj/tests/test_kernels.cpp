// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "wrconv/errors.hpp"
#include "wrconv/simd/kernels.hpp"

namespace {

using wrconv::simd::cplx;
using wrconv::simd::KernelTable;

std::vector<double> randv(std::size_t n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

std::vector<cplx> randc(std::size_t n, unsigned seed) {
  auto re = randv(n, seed), im = randv(n, seed + 1000);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

bool same_bits(const double* a, const double* b, std::size_t n) { return std::memcmp(a, b, n * sizeof(double)) == 0; }

class Avx2Equivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (wrconv::simd::avx2_kernels() == nullptr || !wrconv::simd::cpu_has_avx2()) GTEST_SKIP() << "no AVX2";
  }
  const KernelTable& s = wrconv::simd::scalar_kernels();
  const KernelTable& v = *wrconv::simd::avx2_kernels();
};

// Lengths straddle the vector width so tails are exercised.
const std::size_t kLengths[] = {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 63, 64, 65, 1000, 4097};

TEST_F(Avx2Equivalence, ElementwiseKernelsAreBitIdentical) {
  for (std::size_t n : kLengths) {
    const auto x = randv(n, 1), y = randv(n, 2);
    std::vector<double> a(n), b(n);

    a = y;
    b = y;
    s.axpy(0.37, x.data(), a.data(), n);
    v.axpy(0.37, x.data(), b.data(), n);
    EXPECT_TRUE(same_bits(a.data(), b.data(), n)) << "axpy n=" << n;

    s.sub(x.data(), y.data(), a.data(), n);
    v.sub(x.data(), y.data(), b.data(), n);
    EXPECT_TRUE(same_bits(a.data(), b.data(), n)) << "sub n=" << n;

    s.soft_threshold(x.data(), 0.5, a.data(), n);
    v.soft_threshold(x.data(), 0.5, b.data(), n);
    EXPECT_TRUE(same_bits(a.data(), b.data(), n)) << "soft n=" << n;

    const auto p = randc(n, 3), q = randc(n, 4);
    std::vector<cplx> c1(n), c2(n);
    s.cmul(p.data(), q.data(), c1.data(), n);
    v.cmul(p.data(), q.data(), c2.data(), n);
    EXPECT_TRUE(same_bits(reinterpret_cast<double*>(c1.data()), reinterpret_cast<double*>(c2.data()), 2 * n));

    s.cmul_conj(p.data(), q.data(), c1.data(), n);
    v.cmul_conj(p.data(), q.data(), c2.data(), n);
    EXPECT_TRUE(same_bits(reinterpret_cast<double*>(c1.data()), reinterpret_cast<double*>(c2.data()), 2 * n));

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = 0.5 + std::fabs(x[i]);
    s.cdiv_real(p.data(), d.data(), c1.data(), n);
    v.cdiv_real(p.data(), d.data(), c2.data(), n);
    EXPECT_TRUE(same_bits(reinterpret_cast<double*>(c1.data()), reinterpret_cast<double*>(c2.data()), 2 * n));
  }
}

TEST_F(Avx2Equivalence, DotAgreesToRounding) {
  for (std::size_t n : kLengths) {
    const auto x = randv(n, 5), y = randv(n, 6);
    const double a = s.dot(x.data(), y.data(), n);
    const double b = v.dot(x.data(), y.data(), n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::fabs(x[i] * y[i]);
    EXPECT_LE(std::fabs(a - b), 1e-13 * std::max(scale, 1.0)) << "n=" << n;
  }
}

TEST_F(Avx2Equivalence, SoftThresholdHandlesBoundaryAndSignedZero) {
  const std::vector<double> x{0.5, -0.5, 0.0, -0.0, 0.5000001, -2.0, 1e300, -1e-300};
  std::vector<double> a(x.size()), b(x.size());
  s.soft_threshold(x.data(), 0.5, a.data(), x.size());
  v.soft_threshold(x.data(), 0.5, b.data(), x.size());
  EXPECT_TRUE(same_bits(a.data(), b.data(), x.size()));
}

TEST(Kernels, SoftThresholdReference) {
  const std::vector<double> x{2.0, -2.0, 0.3, -0.3};
  std::vector<double> out(4);
  wrconv::simd::soft_threshold(x, 0.5, out);
  EXPECT_DOUBLE_EQ(out[0], 1.5);
  EXPECT_DOUBLE_EQ(out[1], -1.5);
  EXPECT_EQ(out[2], 0.0);
  EXPECT_EQ(out[3], 0.0);
}

TEST(Kernels, SpanFrontEndsRejectLengthMismatch) {
  std::vector<double> a(3), b(4);
  EXPECT_THROW(wrconv::simd::dot(a, b), wrconv::InvalidDimension);
  EXPECT_THROW(wrconv::simd::axpy(1.0, a, b), wrconv::InvalidDimension);
  EXPECT_THROW(wrconv::simd::sub(a, a, b), wrconv::InvalidDimension);
}

TEST(Kernels, IsaOverrideRoundTrips) {
  const auto before = wrconv::simd::active_isa();
  wrconv::simd::set_isa(wrconv::simd::Isa::Scalar);
  EXPECT_EQ(wrconv::simd::active_isa(), wrconv::simd::Isa::Scalar);
  if (wrconv::simd::avx2_kernels() != nullptr && wrconv::simd::cpu_has_avx2()) {
    wrconv::simd::set_isa(wrconv::simd::Isa::Avx2);
    EXPECT_EQ(wrconv::simd::active_isa(), wrconv::simd::Isa::Avx2);
  } else {
    EXPECT_THROW(wrconv::simd::set_isa(wrconv::simd::Isa::Avx2), wrconv::InvalidParameter);
  }
  wrconv::simd::set_isa(before);
}

TEST(Kernels, Nrm2MatchesDefinition) {
  const auto x = randv(257, 9);
  double ss = 0.0;
  for (double v : x) ss += v * v;
  EXPECT_NEAR(wrconv::simd::nrm2(x), std::sqrt(ss), 1e-12 * std::sqrt(ss));
}

}  // namespace
