// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "wrconv/errors.hpp"
#include "wrconv/parallel.hpp"
#include "wrconv/recovery.hpp"
#include "wrconv/rng.hpp"
#include "wrconv/simd/kernels.hpp"

namespace wrconv {

std::string to_string(BoundVariant v) {
  switch (v) {
    case BoundVariant::FixedVector: return "fixed-vector";
    case BoundVariant::FixedSupport: return "fixed-support";
    case BoundVariant::AnySupport: return "any-support";
  }
  return "unknown";
}

BoundVariant parse_bound_variant(std::string_view s) {
  if (s == "fixed-vector") return BoundVariant::FixedVector;
  if (s == "fixed-support") return BoundVariant::FixedSupport;
  if (s == "any-support") return BoundVariant::AnySupport;
  throw InvalidParameter("unknown bound variant '" + std::string(s) + "'");
}

namespace {

double log_binomial(std::size_t n, std::size_t k) {
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

}  // namespace

BoundEvaluation tail_bound(const TailBoundQuery& q) {
  if (q.m == 0 || q.s == 0) throw InvalidDimension("tail_bound: m and S must be positive");
  if (!(q.mu >= 1.0)) throw InvalidParameter("tail_bound: mu must be at least 1");
  if (q.variant == BoundVariant::AnySupport && q.s > q.n) throw InvalidDimension("tail_bound: S exceeds n");

  const double m = static_cast<double>(q.m);
  const double s = static_cast<double>(q.s);
  const double mu2s = q.mu * q.mu * s;

  double log_prefactor = 2.0;  // log e^2
  double denom = 0.0;
  double threshold_factor = 0.0;
  const bool gaussian = q.ensemble == Ensemble::Gaussian;
  switch (q.variant) {
    case BoundVariant::FixedVector:
      denom = gaussian ? 2.0 : 16.0;
      threshold_factor = gaussian ? 2.0 : 32.0;
      break;
    case BoundVariant::FixedSupport:
    case BoundVariant::AnySupport:
      denom = gaussian ? 4.0 : 32.0;
      threshold_factor = gaussian ? 4.0 : 64.0;
      log_prefactor += 2.0 * std::log(s);
      break;
  }
  if (!gaussian) log_prefactor += std::log(2.0);
  if (q.variant == BoundVariant::AnySupport) log_prefactor += log_binomial(q.n, q.s);

  const double log_bound = log_prefactor - m * q.r / (denom * mu2s);
  BoundEvaluation out;
  out.validity_threshold = threshold_factor * mu2s / m;
  out.valid = q.r > out.validity_threshold;
  out.probability_bound = std::clamp(std::exp(std::min(log_bound, 0.0)), 0.0, 1.0);
  return out;
}

double measurement_bound_shape(std::size_t n, std::size_t s, double mu, double delta, Ensemble ensemble) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
  if (s < 1) throw InvalidParameter("S must be at least 1");
  if (!(mu >= 1.0)) throw InvalidParameter("mu must be at least 1");
  if (n < 1) throw InvalidDimension("n must be at least 1");
  const double sd = static_cast<double>(s);
  const double lnd = std::log(static_cast<double>(n) / delta);
  const double lead = ensemble == Ensemble::Gaussian ? 2.0 : 4.0;
  const double support_term = std::log(lead * std::exp(2.0) * (sd + 1.0) * (sd + 1.0));
  const double power = ensemble == Ensemble::Gaussian ? 0.5 : 1.5;
  return mu * mu * sd * std::pow(lnd, power) * std::max(support_term, lnd);
}

MeasurementBound measurement_bound(std::size_t n, std::size_t s, double mu, double delta, Ensemble ensemble,
                                   double k) {
  if (!(k > 0.0)) throw InvalidParameter("K must be positive");
  MeasurementBound out;
  out.theorem_value = k * measurement_bound_shape(n, s, mu, delta, ensemble);
  out.theorem_m = static_cast<std::size_t>(std::ceil(out.theorem_value));
  if (ensemble == Ensemble::Gaussian) {
    const double nd = static_cast<double>(n);
    const double s1 = static_cast<double>(s) + 1.0;
    const double v = 4.0 * mu * mu * s1 * (1.0 + std::sqrt(2.0 * std::log(4.0 * nd / delta))) *
                     std::log(2.0 * std::exp(2.0) * s1 * s1 * nd / delta);
    out.sharp_value = v;
    out.sharp_m = static_cast<std::size_t>(std::ceil(v));
  }
  return out;
}

EigenvalueExtremes eigenvalue_extremes(const LinearOperator& op, const Basis& basis, const SupportSet& support) {
  const Eigen::MatrixXd block = restricted_sensing_block(op, basis, support);
  const Eigen::MatrixXd gram = (block.transpose() * block) / static_cast<double>(op.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  EigenvalueExtremes out;
  out.lambda_max = eig.eigenvalues().maxCoeff();
  out.lambda_min = support.size() > op.rows() ? 0.0 : std::max(0.0, eig.eigenvalues().minCoeff());
  return out;
}

namespace {

struct Sampling {
  SubsampleSet omega;
  Orthobasis basis;
  SparseInstance instance;
  std::vector<double> x0;  // unit-norm signal Psi alpha0
  double mu;
};

Sampling prepare(const ConcentrationSetup& setup) {
  if (setup.trials < kMinConcentrationTrials) throw InvalidParameter("concentration needs at least 100 trials");
  if (setup.r_grid.empty()) throw InvalidParameter("r grid must not be empty");
  auto omega = make_subsample_set(setup.n, setup.m, setup.omega_scheme, setup.explicit_omega);
  Orthobasis basis(setup.basis, setup.n);
  auto inst = gen_sparse_instance(setup.n, setup.s, MagnitudeLaw::unit(), derive_seed(setup.seed, {0}), setup.basis);
  auto alpha = densify(inst);
  const double norm = simd::nrm2(alpha);
  for (auto& a : alpha) a /= norm;
  auto x0 = synthesize(basis, alpha);
  const double mu = coherence(basis).mu;
  return Sampling{std::move(omega), basis, std::move(inst), std::move(x0), mu};
}

ConcentrationTable tabulate(const ConcentrationSetup& setup, const Sampling& smp, BoundVariant variant,
                            std::span<const double> deviation, double mean) {
  ConcentrationTable table;
  table.variant = variant;
  table.ensemble = setup.ensemble;
  table.n = setup.n;
  table.m = setup.m;
  table.s = setup.s;
  table.mu = smp.mu;
  table.trials = setup.trials;
  table.mean_statistic = mean;
  const double t = static_cast<double>(setup.trials);
  for (double r : setup.r_grid) {
    std::size_t hits = 0;
    for (double d : deviation) hits += d > r ? 1 : 0;
    ConcentrationRow row;
    row.r = r;
    row.empirical = static_cast<double>(hits) / t;
    row.stderr_mc = std::sqrt(row.empirical * (1.0 - row.empirical) / t);
    const auto b = tail_bound(TailBoundQuery{setup.m, setup.s, setup.n, smp.mu, r, setup.ensemble, variant});
    row.bound = b.probability_bound;
    row.valid = b.valid;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace

ConcentrationTable empirical_concentration(const ConcentrationSetup& setup) {
  const Sampling smp = prepare(setup);
  std::vector<double> stat(setup.trials), deviation(setup.trials);
  parallel_for(setup.trials, setup.workers, [&](std::size_t t) {
    SensingOperator op(gen_waveform(setup.ensemble, setup.n, derive_seed(setup.seed, {1, t})), smp.omega);
    const auto y = apply_sensing(op, smp.x0);
    const double r = simd::dot(y, y) / static_cast<double>(setup.m);
    stat[t] = r;
    deviation[t] = std::fabs(r - 1.0);
  });
  double mean = 0.0;
  for (double v : stat) mean += v;
  mean /= static_cast<double>(setup.trials);
  return tabulate(setup, smp, BoundVariant::FixedVector, deviation, mean);
}

ConcentrationTable empirical_eigenvalue_concentration(const ConcentrationSetup& setup) {
  const Sampling smp = prepare(setup);
  std::vector<double> stat(setup.trials), deviation(setup.trials);
  parallel_for(setup.trials, setup.workers, [&](std::size_t t) {
    SensingOperator op(gen_waveform(setup.ensemble, setup.n, derive_seed(setup.seed, {1, t})), smp.omega);
    const auto ext = eigenvalue_extremes(op, smp.basis, smp.instance.support);
    stat[t] = 0.5 * (ext.lambda_min + ext.lambda_max);
    deviation[t] = std::max(1.0 - ext.lambda_min, ext.lambda_max - 1.0);
  });
  double mean = 0.0;
  for (double v : stat) mean += v;
  mean /= static_cast<double>(setup.trials);
  return tabulate(setup, smp, BoundVariant::FixedSupport, deviation, mean);
}

KFit fit_k(std::span<const ContourPoint> contour, std::size_t n, double mu, double delta, Ensemble ensemble) {
  if (contour.empty()) throw InvalidParameter("fit_k: no contour points");
  double num = 0.0, den = 0.0;
  std::vector<double> shape(contour.size());
  for (std::size_t i = 0; i < contour.size(); ++i) {
    shape[i] = measurement_bound_shape(n, contour[i].s, mu, delta, ensemble);
    num += contour[i].m * shape[i];
    den += shape[i] * shape[i];
  }
  KFit fit;
  fit.k = num / den;
  double ss = 0.0;
  for (std::size_t i = 0; i < contour.size(); ++i) {
    const double e = contour[i].m - fit.k * shape[i];
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(contour.size()));
  fit.points = contour.size();
  return fit;
}

}  // namespace wrconv
