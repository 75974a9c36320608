// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "wrconv/bases.hpp"
#include "wrconv/errors.hpp"
#include "wrconv/rng.hpp"

namespace {

using namespace wrconv;
using std::numbers::pi;

const BasisId kAll[] = {BasisId::Spikes, BasisId::Haar, BasisId::DCT, BasisId::FourierReal};

std::vector<double> randv(std::size_t n, std::uint64_t seed) {
  auto g = make_engine(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

// Independent atom constructions, columns in the library's coefficient order.
Eigen::MatrixXd oracle_basis(BasisId id, std::size_t n) {
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
  const double nd = static_cast<double>(n);
  switch (id) {
    case BasisId::Spikes:
      P.setIdentity();
      break;
    case BasisId::DCT:
      for (Eigen::Index k = 0; k < N; ++k)
        for (Eigen::Index j = 0; j < N; ++j)
          P(j, k) = (k == 0 ? std::sqrt(1.0 / nd) : std::sqrt(2.0 / nd)) * std::cos(pi * k * (2.0 * j + 1) / (2.0 * nd));
      break;
    case BasisId::FourierReal: {
      P.col(0).setConstant(1.0 / std::sqrt(nd));
      Eigen::Index c = 1;
      for (Eigen::Index k = 1; 2 * k < N; ++k) {
        for (Eigen::Index j = 0; j < N; ++j) {
          P(j, c) = std::sqrt(2.0 / nd) * std::cos(2.0 * pi * k * j / nd);
          P(j, c + 1) = std::sqrt(2.0 / nd) * std::sin(2.0 * pi * k * j / nd);
        }
        c += 2;
      }
      if (n % 2 == 0)
        for (Eigen::Index j = 0; j < N; ++j) P(j, N - 1) = (j % 2 == 0 ? 1.0 : -1.0) / std::sqrt(nd);
      break;
    }
    case BasisId::Haar: {
      P.col(0).setConstant(1.0 / std::sqrt(nd));
      Eigen::Index c = 1;
      for (std::size_t blocks = 1; blocks < n; blocks *= 2) {
        const auto len = static_cast<Eigen::Index>(n / blocks);
        const double a = 1.0 / std::sqrt(static_cast<double>(len));
        for (std::size_t b = 0; b < blocks; ++b, ++c) {
          const Eigen::Index start = static_cast<Eigen::Index>(b) * len;
          P.block(start, c, len / 2, 1).setConstant(a);
          P.block(start + len / 2, c, len / 2, 1).setConstant(-a);
        }
      }
      break;
    }
  }
  return P;
}

// max |F Psi| with the unnormalized DFT built densely.
double oracle_coherence(const Eigen::MatrixXd& P) {
  const auto n = P.rows();
  Eigen::MatrixXcd F(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) F(j, k) = std::polar(1.0, -2.0 * pi * static_cast<double>(j * k) / static_cast<double>(n));
  return (F * P.cast<std::complex<double>>()).cwiseAbs().maxCoeff();
}

TEST(Orthobasis, OrthonormalDense) {
  for (std::size_t n : {8u, 64u, 256u}) {
    for (BasisId id : kAll) {
      const Eigen::MatrixXd P = dense_basis(Orthobasis(id, n));
      const double dev = (P.transpose() * P - Eigen::MatrixXd::Identity(P.rows(), P.cols())).cwiseAbs().maxCoeff();
      EXPECT_LT(dev, 1e-10) << to_string(id) << " n=" << n;
    }
  }
}

TEST(Orthobasis, AtomsMatchIndependentConstruction) {
  for (std::size_t n : {8u, 16u, 64u}) {
    for (BasisId id : kAll) {
      const Eigen::MatrixXd P = dense_basis(Orthobasis(id, n));
      const Eigen::MatrixXd Q = oracle_basis(id, n);
      for (Eigen::Index c = 0; c < P.cols(); ++c) {
        const double same = (P.col(c) - Q.col(c)).cwiseAbs().maxCoeff();
        const double flip = (P.col(c) + Q.col(c)).cwiseAbs().maxCoeff();
        EXPECT_LT(std::min(same, flip), 1e-12) << to_string(id) << " n=" << n << " atom " << c;
      }
    }
  }
}

TEST(Orthobasis, SynthesisExamples) {
  const auto x = randv(8, 1);
  EXPECT_EQ(synthesize(Orthobasis(BasisId::Spikes, 8), x), x);
  EXPECT_EQ(analyze(Orthobasis(BasisId::Spikes, 8), x), x);
  for (BasisId id : kAll)
    for (double v : synthesize(Orthobasis(id, 8), std::vector<double>(8, 0.0))) EXPECT_EQ(v, 0.0);
  std::vector<double> e0(8, 0.0);
  e0[0] = 1.0;
  for (double v : synthesize(Orthobasis(BasisId::Haar, 8), e0)) EXPECT_NEAR(v, 1.0 / std::sqrt(8.0), 1e-15);
}

TEST(Orthobasis, RoundTripAndParseval) {
  for (BasisId id : kAll) {
    Orthobasis b(id, 64);
    for (std::uint64_t t = 0; t < 100; ++t) {
      const auto x = randv(64, derive_seed(2, {t}));
      const auto a = analyze(b, x);
      const auto back = synthesize(b, a);
      double err = 0.0, nx = 0.0, na = 0.0;
      for (std::size_t i = 0; i < 64; ++i) {
        err = std::max(err, std::fabs(back[i] - x[i]));
        nx += x[i] * x[i];
        na += a[i] * a[i];
      }
      EXPECT_LT(err, 1e-10);
      EXPECT_NEAR(std::sqrt(na), std::sqrt(nx), 1e-10);
    }
  }
}

TEST(Orthobasis, OddLengthsAndErrors) {
  for (BasisId id : {BasisId::DCT, BasisId::FourierReal}) {
    const Eigen::MatrixXd P = dense_basis(Orthobasis(id, 15));
    EXPECT_LT((P.transpose() * P - Eigen::MatrixXd::Identity(15, 15)).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_THROW(Orthobasis(BasisId::Haar, 12), InvalidParameter);
  Orthobasis b(BasisId::DCT, 8);
  std::vector<double> a(8), x(7);
  EXPECT_THROW(b.synthesize(a, x), InvalidDimension);
}

TEST(HaarBasis2D, OrthonormalAndTensorProduct) {
  HaarBasis2D b(8);
  const Eigen::MatrixXd P = dense_basis(b);
  EXPECT_LT((P.transpose() * P - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-12);
  // A separable image u v^T has coefficients (H u)(H v)^T.
  const auto u = randv(8, 3), v = randv(8, 4);
  std::vector<double> img(64);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) img[r * 8 + c] = u[r] * v[c];
  const auto coef = analyze(b, img);
  Orthobasis h(BasisId::Haar, 8);
  const auto hu = analyze(h, u), hv = analyze(h, v);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) EXPECT_NEAR(coef[r * 8 + c], hu[r] * hv[c], 1e-12);
}

TEST(Coherence, SpikesIsExactlyOne) {
  for (std::size_t n : {8u, 64u, 256u, 1000u}) EXPECT_EQ(coherence(Orthobasis(BasisId::Spikes, n)).mu, 1.0);
}

TEST(Coherence, MatchesDenseOracle) {
  for (std::size_t n : {8u, 16u, 64u}) {
    for (BasisId id : kAll) {
      const double mu = coherence(Orthobasis(id, n)).mu;
      const double ref = oracle_coherence(oracle_basis(id, n));
      EXPECT_NEAR(mu, ref, 1e-12 * std::sqrt(static_cast<double>(n))) << to_string(id) << " n=" << n;
    }
  }
}

TEST(Coherence, BoundsAndOrdering) {
  for (std::size_t n : {8u, 64u, 256u}) {
    const double root = std::sqrt(static_cast<double>(n));
    const double tol = 1e-12 * root;
    double mu_of[4];
    for (BasisId id : kAll) {
      const double mu = coherence(Orthobasis(id, n)).mu;
      mu_of[static_cast<int>(id)] = mu;
      EXPECT_GE(mu, 1.0 - tol);
      EXPECT_LE(mu, root + tol);
    }
    EXPECT_LE(mu_of[0], mu_of[1] + tol);
    EXPECT_LE(mu_of[1], mu_of[3] + tol);
  }
}

// The constant scaling atom puts all of its energy in bin 0, so the full
// Haar system is maximally coherent; its wavelets alone lie strictly inside.
TEST(Coherence, HaarScalingAtomSaturatesWaveletsDoNot) {
  for (std::size_t n : {8u, 64u, 256u}) {
    const double root = std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(coherence(Orthobasis(BasisId::Haar, n)).mu, root, 1e-12 * root);
    const Eigen::MatrixXd P = oracle_basis(BasisId::Haar, n);
    const double wavelets = oracle_coherence(P.rightCols(P.cols() - 1));
    EXPECT_GT(wavelets, 1.0 + 1e-9);
    EXPECT_LT(wavelets, root - 1e-9);
  }
}

TEST(Coherence, FourierRealIsMaximal) {
  const double mu = coherence(Orthobasis(BasisId::FourierReal, 16)).mu;
  EXPECT_NEAR(mu, 4.0, 1e-12);
  EXPECT_THROW(coherence(Orthobasis(BasisId::DCT, kCoherenceLimit * 2)), InvalidParameter);
}

}  // namespace
