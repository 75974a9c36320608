// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "wrconv/bases.hpp"
#include "wrconv/errors.hpp"
#include "wrconv/operators.hpp"
#include "wrconv/recovery.hpp"
#include "wrconv/rng.hpp"
#include "wrconv/simd/kernels.hpp"

namespace {

using namespace wrconv;

double l1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

struct Trial {
  SparseInstance inst;
  SensingOperator op;
  std::vector<double> y;
};

Trial make_trial(std::size_t n, std::size_t m, std::size_t s, const Orthobasis& basis, std::uint64_t seed,
                 MagnitudeLaw law = MagnitudeLaw::unit()) {
  auto inst = gen_sparse_instance(n, s, law, derive_seed(seed, {1}), basis.id());
  SensingOperator op(gen_gaussian_waveform(n, derive_seed(seed, {0})), make_subsample_set(n, m, SubsampleScheme::EqualInterval));
  auto y = apply_sensing(op, synthesize(basis, densify(inst)));
  return Trial{std::move(inst), std::move(op), std::move(y)};
}

std::size_t success_count(BasisId id, std::size_t n, std::size_t m, std::size_t s, std::size_t trials, std::uint64_t seed) {
  const Orthobasis basis(id, n);
  std::size_t ok = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto tr = make_trial(n, m, s, basis, derive_seed(seed, {t}));
    ok += adjudicate(basis_pursuit(tr.y, tr.op, basis).alpha_hat, tr.inst).exact ? 1 : 0;
  }
  return ok;
}

TEST(SolverConfig, Validates) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.max_iterations = 0;
  EXPECT_THROW(c.validate(), InvalidParameter);
  c = {};
  c.primal_tolerance = 0.0;
  EXPECT_THROW(c.validate(), InvalidParameter);
  c = {};
  c.penalty = -1.0;
  EXPECT_THROW(c.validate(), InvalidParameter);
}

TEST(BasisPursuit, ZeroMeasurementsGiveZero) {
  const Orthobasis basis(BasisId::Spikes, 32);
  SensingOperator op(gen_gaussian_waveform(32, 1), make_subsample_set(32, 8, SubsampleScheme::EqualInterval));
  const auto r = basis_pursuit(std::vector<double>(8, 0.0), op, basis);
  EXPECT_LE(r.iterations, 1);
  EXPECT_TRUE(r.converged);
  for (double v : r.alpha_hat) EXPECT_EQ(v, 0.0);
}

TEST(BasisPursuit, DimensionChecks) {
  const Orthobasis basis(BasisId::Spikes, 32);
  SensingOperator op(gen_gaussian_waveform(32, 1), make_subsample_set(32, 8, SubsampleScheme::EqualInterval));
  EXPECT_THROW(basis_pursuit(std::vector<double>(7, 1.0), op, basis), InvalidDimension);
  EXPECT_THROW(basis_pursuit(std::vector<double>(8, 1.0), op, Orthobasis(BasisId::Spikes, 16)), InvalidDimension);
}

TEST(BasisPursuit, SingleSpikeRecoveredAtRateOneQuarter) {
  EXPECT_GE(success_count(BasisId::Spikes, 64, 16, 1, 100, 2), 95u);
}

TEST(BasisPursuit, FrequencySparseSignalsRecoverWorse) {
  const auto spikes = success_count(BasisId::Spikes, 64, 16, 4, 100, 3);
  const auto fourier = success_count(BasisId::FourierReal, 64, 16, 4, 100, 3);
  EXPECT_LT(fourier, spikes);
}

TEST(BasisPursuit, NonConvergenceIsReportedNotThrown) {
  const Orthobasis basis(BasisId::Spikes, 64);
  const auto tr = make_trial(64, 16, 4, basis, 4);
  SolverConfig cfg;
  cfg.max_iterations = 2;
  const auto r = basis_pursuit(tr.y, tr.op, basis, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2);
}

TEST(BasisPursuit, NonFiniteMeasurementsThrow) {
  const Orthobasis basis(BasisId::Spikes, 32);
  SensingOperator op(gen_gaussian_waveform(32, 1), make_subsample_set(32, 8, SubsampleScheme::EqualInterval));
  std::vector<double> y(8, 1.0);
  y[3] = std::nan("");
  EXPECT_THROW(basis_pursuit(y, op, basis), NumericalError);
}

TEST(BasisPursuit, ConvergedResultsAreFeasible) {
  for (BasisId id : {BasisId::Spikes, BasisId::Haar, BasisId::DCT}) {
    const Orthobasis basis(id, 128);
    for (std::uint64_t t = 0; t < 10; ++t) {
      const auto tr = make_trial(128, 32, 5, basis, derive_seed(5, {t}), MagnitudeLaw::uniform(0.5, 2.0));
      const SolverConfig cfg;
      const auto r = basis_pursuit(tr.y, tr.op, basis, cfg);
      if (!r.converged) continue;
      EXPECT_LE(r.residual_norm, cfg.primal_tolerance * std::max(simd::nrm2(tr.y), 1.0));
    }
  }
}

TEST(BasisPursuit, ExplicitSamplingRecovers) {
  const std::size_t n = 64;
  const Orthobasis basis(BasisId::Spikes, n);
  const std::vector<std::size_t> pick{0, 1, 5, 9, 12, 20, 21, 30, 33, 38, 41, 47, 50, 55, 58, 62, 63, 2, 7, 44};
  std::size_t ok = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto inst = gen_sparse_instance(n, 2, MagnitudeLaw::unit(), derive_seed(6, {t, 1}), BasisId::Spikes);
    SensingOperator op(gen_gaussian_waveform(n, derive_seed(6, {t, 0})),
                       make_subsample_set(n, pick.size(), SubsampleScheme::ExplicitFixed, pick));
    const auto y = apply_sensing(op, densify(inst));
    ok += adjudicate(basis_pursuit(y, op, basis).alpha_hat, inst).exact ? 1 : 0;
  }
  EXPECT_GE(ok, 18u);
}

TEST(BasisPursuit, ResultIndependentOfKernelVariant) {
  if (simd::avx2_kernels() == nullptr || !simd::cpu_has_avx2()) GTEST_SKIP() << "no AVX2";
  const Orthobasis basis(BasisId::Spikes, 128);
  const auto tr = make_trial(128, 32, 4, basis, 7);
  const auto before = simd::active_isa();
  simd::set_isa(simd::Isa::Scalar);
  const auto a = basis_pursuit(tr.y, tr.op, basis);
  simd::set_isa(simd::Isa::Avx2);
  const auto b = basis_pursuit(tr.y, tr.op, basis);
  simd::set_isa(before);
  EXPECT_TRUE(adjudicate(a.alpha_hat, tr.inst).exact);
  EXPECT_TRUE(adjudicate(b.alpha_hat, tr.inst).exact);
  for (std::size_t i = 0; i < 128; ++i) EXPECT_NEAR(a.alpha_hat[i], b.alpha_hat[i], 1e-6);
}

// Perturbing an exact solution along the null space of A Psi never lowers
// its l1 norm.
TEST(BasisPursuit, L1OptimalityAgainstNullSpacePerturbations) {
  const std::size_t n = 32, m = 16;
  for (BasisId id : {BasisId::Spikes, BasisId::DCT}) {
    const Orthobasis basis(id, n);
    const Eigen::MatrixXd Psi = dense_basis(basis);
    std::size_t checked = 0;
    for (std::uint64_t t = 0; t < 10 && checked < 3; ++t) {
      const auto tr = make_trial(n, m, 2, basis, derive_seed(8, {t}), MagnitudeLaw::uniform(0.5, 2.0));
      const auto r = basis_pursuit(tr.y, tr.op, basis);
      if (!adjudicate(r.alpha_hat, tr.inst).exact) continue;
      ++checked;
      const Eigen::MatrixXd U = tr.op.dense() * Psi;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(U, Eigen::ComputeFullV);
      const Eigen::MatrixXd N = svd.matrixV().rightCols(static_cast<Eigen::Index>(n - m));
      ASSERT_LT((U * N).cwiseAbs().maxCoeff(), 1e-10);
      auto g = make_engine(derive_seed(9, {t}));
      std::normal_distribution<double> d;
      const Eigen::Map<const Eigen::VectorXd> ah(r.alpha_hat.data(), static_cast<Eigen::Index>(n));
      for (int k = 0; k < 50; ++k) {
        Eigen::VectorXd c(n - m);
        for (auto& v : c) v = d(g);
        const double scale = std::pow(10.0, -3.0 + 3.0 * k / 49.0);
        const Eigen::VectorXd alt = ah + scale * N * c;
        EXPECT_LE(ah.lpNorm<1>(), alt.lpNorm<1>() + 1e-6);
      }
    }
    EXPECT_GE(checked, 1u);
  }
}

TEST(Adjudicate, Examples) {
  const auto inst = gen_sparse_instance(32, 3, MagnitudeLaw::unit(), 10, BasisId::Spikes);
  auto a = densify(inst);
  EXPECT_TRUE(adjudicate(a, inst, 1e-4).exact);

  auto p = a;
  for (auto& v : p) v += 1e-9;
  EXPECT_TRUE(adjudicate(p, inst, 1e-4).exact);

  auto neg = a;
  for (auto& v : neg) v = -v;
  const auto f = adjudicate(neg, inst, 1e-4);
  EXPECT_TRUE(f.support_recovered);
  EXPECT_FALSE(f.signs_recovered);
  EXPECT_FALSE(f.exact);

  auto extra = a;
  std::size_t off = 0;
  while (inst.support.contains(off)) ++off;
  extra[off] = 0.5;
  EXPECT_FALSE(adjudicate(extra, inst, 1e-4).exact);

  EXPECT_THROW(adjudicate(std::vector<double>(31, 0.0), inst), InvalidDimension);
  const SparseInstance zero{SupportSet({0}, 4), SignPattern({1}), {0.0}, BasisId::Spikes};
  EXPECT_THROW(adjudicate(std::vector<double>(4, 0.0), zero), InvalidParameter);
}

TEST(DualCertificate, SingleAtomReproducesSign) {
  const Orthobasis basis(BasisId::Spikes, 32);
  SensingOperator op(gen_gaussian_waveform(32, 11), make_subsample_set(32, 8, SubsampleScheme::EqualInterval));
  const SupportSet T({5}, 32);
  for (int z : {1, -1}) {
    const auto c = dual_certificate(op, basis, T, SignPattern({z}));
    ASSERT_TRUE(c.gram_condition_ok);
    EXPECT_EQ(c.pi[5], z);
    EXPECT_LT(c.on_support_residual, 1e-12);
  }
}

TEST(DualCertificate, RankDeficient) {
  const Orthobasis basis(BasisId::Spikes, 32);
  SensingOperator op(gen_gaussian_waveform(32, 12), make_subsample_set(32, 2, SubsampleScheme::EqualInterval));
  const auto c = dual_certificate(op, basis, SupportSet({1, 2, 3}, 32), SignPattern({1, -1, 1}));
  EXPECT_FALSE(c.gram_condition_ok);
  EXPECT_THROW(dual_certificate(op, basis, SupportSet({1, 2}, 32), SignPattern({1})), InvalidDimension);
}

TEST(DualCertificate, MatchesDenseFormula) {
  const std::size_t n = 32;
  const Orthobasis basis(BasisId::DCT, n);
  SensingOperator op(gen_gaussian_waveform(n, 13), make_subsample_set(n, 16, SubsampleScheme::EqualInterval));
  const SupportSet T({2, 9, 20}, n);
  const SignPattern z({1, -1, -1});
  const auto c = dual_certificate(op, basis, T, z);
  ASSERT_TRUE(c.gram_condition_ok);
  const Eigen::MatrixXd U = op.dense() * dense_basis(basis);
  const Eigen::MatrixXd UT = U(Eigen::all, std::vector<Eigen::Index>{2, 9, 20});
  const Eigen::Vector3d zv(1, -1, -1);
  const Eigen::VectorXd pi = U.transpose() * UT * (UT.transpose() * UT).inverse() * zv;
  double sup = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    EXPECT_NEAR(c.pi[t], pi(static_cast<Eigen::Index>(t)), 1e-10);
    if (!T.contains(t)) sup = std::max(sup, std::fabs(pi(static_cast<Eigen::Index>(t))));
  }
  EXPECT_NEAR(c.sup_offsupport, sup, 1e-10);
}

TEST(DualCertificate, CertifiedTrialsAreRecoveredN32) {
  const std::size_t n = 32, m = 16, s = 2;
  const Orthobasis basis(BasisId::Spikes, n);
  std::size_t certified = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto tr = make_trial(n, m, s, basis, derive_seed(14, {t}));
    const auto c = dual_certificate(tr.op, basis, tr.inst.support, tr.inst.signs);
    if (!(c.gram_condition_ok && c.sup_offsupport < 1.0 - 1e-6)) continue;
    ++certified;
    EXPECT_TRUE(adjudicate(basis_pursuit(tr.y, tr.op, basis).alpha_hat, tr.inst).exact) << "trial " << t;
  }
  EXPECT_GT(certified, 50u);
}

// Soundness holds for every magnitude profile on a certified (T, z).
TEST(DualCertificate, SoundAcrossMagnitudeDraws) {
  const std::size_t n = 64, m = 32, s = 3;
  const Orthobasis basis(BasisId::Spikes, n);
  std::size_t certified = 0;
  for (std::uint64_t t = 0; t < 20 && certified < 5; ++t) {
    const auto base = make_trial(n, m, s, basis, derive_seed(15, {t}));
    const auto c = dual_certificate(base.op, basis, base.inst.support, base.inst.signs);
    if (!(c.gram_condition_ok && c.sup_offsupport < 1.0 - 1e-6)) continue;
    ++certified;
    auto g = make_engine(derive_seed(16, {t}));
    std::uniform_real_distribution<double> mag(0.1, 10.0);
    for (int draw = 0; draw < 20; ++draw) {
      SparseInstance inst = base.inst;
      for (auto& a : inst.coefficients) a = mag(g);
      const auto y = apply_sensing(base.op, densify(inst));
      EXPECT_TRUE(adjudicate(basis_pursuit(y, base.op, basis).alpha_hat, inst).exact) << "trial " << t << " draw " << draw;
    }
  }
  EXPECT_GE(certified, 5u);
}

}  // namespace
