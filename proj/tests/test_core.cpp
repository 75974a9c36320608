// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numeric>

#include "wrconv/core.hpp"
#include "wrconv/errors.hpp"
#include "wrconv/rng.hpp"
#include "wrconv/types.hpp"

namespace {

using namespace wrconv;

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

TEST(ProblemDims, Validates) {
  EXPECT_NO_THROW(ProblemDims::make(64, 16, 4, 0.1));
  EXPECT_THROW(ProblemDims::make(64, 16, 0, 0.1), InvalidDimension);
  EXPECT_THROW(ProblemDims::make(64, 65, 4, 0.1), InvalidDimension);
  EXPECT_THROW(ProblemDims::make(64, 16, 4, 1.0), InvalidParameter);
}

TEST(GaussianWaveform, SingleDrawIsDeterministic) {
  const auto a = gen_gaussian_waveform(1, 42);
  const auto b = gen_gaussian_waveform(1, 42);
  ASSERT_EQ(a.samples.size(), 1u);
  EXPECT_EQ(a.samples[0], b.samples[0]);
  EXPECT_EQ(a.distribution, Distribution::Gaussian);
  EXPECT_NE(gen_gaussian_waveform(1, 43).samples[0], a.samples[0]);
}

TEST(GaussianWaveform, Moments) {
  const auto w = gen_gaussian_waveform(10000, 7);
  EXPECT_LT(std::fabs(mean(w.samples)), 4.0 / 100.0);
  EXPECT_NEAR(sample_autocovariance(w.samples, 0), 1.0, 0.1);
  EXPECT_LT(std::fabs(sample_autocovariance(w.samples, 1)), 0.05);
}

TEST(GaussianWaveform, RejectsEmpty) { EXPECT_THROW(gen_gaussian_waveform(0, 1), InvalidDimension); }

TEST(BernoulliWaveform, SupportAndMoments) {
  const auto w = gen_bernoulli_waveform(10000, 3);
  double second = 0.0;
  for (double e : w.samples) {
    ASSERT_TRUE(e == 1.0 || e == -1.0);
    second += e * e;
  }
  EXPECT_EQ(second / 10000.0, 1.0);
  EXPECT_LT(std::fabs(mean(w.samples)), 0.04);
  EXPECT_THROW(gen_bernoulli_waveform(0, 1), InvalidDimension);
}

TEST(Waveforms, WhitenessAtLagsOneToTen) {
  for (auto w : {gen_gaussian_waveform(10000, 11), gen_bernoulli_waveform(10000, 12)}) {
    EXPECT_NEAR(sample_autocovariance(w.samples, 0), 1.0, 0.05);
    for (std::size_t lag = 1; lag <= 10; ++lag) EXPECT_LT(std::fabs(sample_autocovariance(w.samples, lag)), 0.05);
  }
}

// Ensemble autocovariance over independent draws, a single fixed pair of
// sample positions per draw.
void check_bandlimited(std::size_t n, int oversample) {
  const std::size_t draws = 10000;
  double c0 = 0.0, c3 = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    const auto w = gen_bandlimited_waveform(n, oversample, derive_seed(99, {static_cast<std::uint64_t>(oversample), d}));
    c0 += w.samples[5] * w.samples[5];
    c3 += w.samples[5] * w.samples[8];
  }
  EXPECT_NEAR(c0 / draws, 1.0, 0.05) << "oversample " << oversample;
  EXPECT_NEAR(c3 / draws, 0.0, 0.05) << "oversample " << oversample;
}

TEST(BandlimitedWaveform, DecorrelatesAtIntegerLags) {
  check_bandlimited(16, 2);
  check_bandlimited(16, 8);
  check_bandlimited(80, 2);
}

TEST(BandlimitedWaveform, Validates) {
  EXPECT_THROW(gen_bandlimited_waveform(16, 1, 1), InvalidParameter);
  EXPECT_THROW(gen_bandlimited_waveform(0, 4, 1), InvalidDimension);
  const auto w = gen_bandlimited_waveform(32, 4, 5);
  EXPECT_EQ(w.distribution, Distribution::BandlimitedGaussian);
  EXPECT_EQ(w.samples, gen_bandlimited_waveform(32, 4, 5).samples);
}

TEST(SparseInstance, SaturatedSupport) {
  const auto inst = gen_sparse_instance(8, 8, MagnitudeLaw::unit(), 1, BasisId::Spikes);
  const auto dense = densify(inst);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(std::fabs(dense[i]), 1.0);
}

TEST(SparseInstance, UnitMagnitudes) {
  const auto inst = gen_sparse_instance(64, 4, MagnitudeLaw::unit(), 2, BasisId::Spikes);
  const auto dense = densify(inst);
  int nnz = 0;
  for (double v : dense) {
    if (v != 0.0) {
      ++nnz;
      EXPECT_EQ(std::fabs(v), 1.0);
    }
  }
  EXPECT_EQ(nnz, 4);
}

TEST(SparseInstance, SignFrequency) {
  std::size_t plus = 0, total = 0;
  for (std::uint64_t d = 0; d < 10000; ++d) {
    const auto inst = gen_sparse_instance(16, 1, MagnitudeLaw::unit(), derive_seed(5, {d}), BasisId::Spikes);
    plus += inst.signs.signs()[0] > 0 ? 1 : 0;
    ++total;
  }
  EXPECT_NEAR(static_cast<double>(plus) / static_cast<double>(total), 0.5, 0.02);
}

TEST(SparseInstance, RoundTripAndErrors) {
  const auto inst = gen_sparse_instance(64, 5, MagnitudeLaw::uniform(0.5, 2.0), 8, BasisId::Haar);
  const auto dense = densify(inst);
  EXPECT_EQ(std::count_if(dense.begin(), dense.end(), [](double v) { return v != 0.0; }), 5);
  const auto back = sparsify(dense, BasisId::Haar);
  EXPECT_EQ(back.support.indices().size(), 5u);
  EXPECT_TRUE(std::equal(back.support.indices().begin(), back.support.indices().end(), inst.support.indices().begin()));
  EXPECT_TRUE(std::ranges::equal(back.signs.signs(), inst.signs.signs()));
  EXPECT_EQ(back.coefficients, inst.coefficients);
  EXPECT_EQ(back.basis_id, inst.basis_id);
  EXPECT_THROW(gen_sparse_instance(4, 5, MagnitudeLaw::unit(), 1, BasisId::Spikes), InvalidParameter);
}

TEST(SupportSet, Validates) {
  EXPECT_THROW(SupportSet({1, 1}, 4), InvalidParameter);
  EXPECT_THROW(SupportSet({4}, 4), InvalidParameter);
  EXPECT_THROW(SupportSet({3, 0}, 4), InvalidParameter);
  SupportSet t({0, 3}, 4);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_TRUE(t.contains(3));
  EXPECT_FALSE(t.contains(2));
  EXPECT_THROW(SignPattern({1, 0}), InvalidParameter);
}

TEST(Serialization, JsonRoundTrip) {
  const auto w = gen_gaussian_waveform(16, 3);
  nlohmann::json j = w;
  const auto w2 = j.get<Waveform>();
  EXPECT_EQ(w2.samples, w.samples);
  EXPECT_EQ(w2.seed, w.seed);
  EXPECT_EQ(j.at("n").get<std::size_t>(), 16u);

  const auto inst = gen_sparse_instance(32, 3, MagnitudeLaw::unit(), 4, BasisId::DCT);
  nlohmann::json ji = inst;
  const auto inst2 = ji.get<SparseInstance>();
  EXPECT_EQ(densify(inst2), densify(inst));
  EXPECT_EQ(inst2.basis_id, BasisId::DCT);
}

TEST(Rng, DerivedSeedsDifferByPath) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {2}));
}

TEST(Names, ParseAndPrint) {
  EXPECT_EQ(parse_basis_id("fourier-real"), BasisId::FourierReal);
  EXPECT_EQ(parse_basis_id(to_string(BasisId::Haar)), BasisId::Haar);
  EXPECT_EQ(parse_ensemble("bernoulli"), Ensemble::Bernoulli);
  EXPECT_THROW(parse_basis_id("wavelet"), InvalidParameter);
}

}  // namespace
