// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wrconv/bases.hpp"
#include "wrconv/core.hpp"
#include "wrconv/operators.hpp"
#include "wrconv/types.hpp"

namespace wrconv {

// ---- closed-form bounds ------------------------------------------------------

/// FixedVector: one fixed signal. FixedSupport: every signal on a fixed
/// support of size S. AnySupport: every S-sparse signal.
enum class BoundVariant { FixedVector, FixedSupport, AnySupport };

std::string to_string(BoundVariant v);
BoundVariant parse_bound_variant(std::string_view s);

struct TailBoundQuery {
  std::size_t m = 0;
  std::size_t s = 0;
  std::size_t n = 0;
  double mu = 1.0;
  double r = 0.0;
  Ensemble ensemble = Ensemble::Gaussian;
  BoundVariant variant = BoundVariant::FixedVector;
};

struct BoundEvaluation {
  double probability_bound = 1.0;  // clamped to [0, 1]
  double validity_threshold = 0.0;
  bool valid = false;              // r > validity_threshold
};

/// Upper bound on Pr(| ||m^{-1/2} U^Omega x0||^2 - ||x0||^2 | > r ||x0||^2).
///
///   ensemble   variant       bound                                 valid for r >
///   Gaussian   FixedVector   e^2 exp(-m r / (2 mu^2 S))             2 mu^2 S / m
///   Gaussian   FixedSupport  e^2 S^2 exp(-m r / (4 mu^2 S))         4 mu^2 S / m
///   Gaussian   AnySupport    C(n,S) * FixedSupport                  4 mu^2 S / m
///   Bernoulli  FixedVector   2 e^2 exp(-m r / (16 mu^2 S))          32 mu^2 S / m
///   Bernoulli  FixedSupport  2 e^2 S^2 exp(-m r / (32 mu^2 S))      64 mu^2 S / m
///   Bernoulli  AnySupport    C(n,S) * FixedSupport                  64 mu^2 S / m
///
/// The Bernoulli FixedVector row uses the single-vector Bernoulli tail with
/// sigma^2 replaced by its mu^2 S upper bound. Products are formed in log
/// space. When r is at or below the threshold the bound is still returned,
/// flagged invalid.
BoundEvaluation tail_bound(const TailBoundQuery& q);

struct MeasurementBound {
  double theorem_value = 0.0;        // K times the requirement shape
  std::size_t theorem_m = 0;         // ceil(theorem_value)
  std::optional<double> sharp_value;  // Gaussian only: the explicit-constant form
  std::optional<std::size_t> sharp_m;
};

/// Measurement-count requirements.
///
/// Gaussian:  m > K mu^2 S log(n/delta)^{1/2} max(log(2 e^2 (S+1)^2), log(n/delta))
/// Bernoulli: m > K mu^2 S log(n/delta)^{3/2} max(log(4 e^2 (S+1)^2), log(n/delta))
/// Gaussian explicit form:
///            m > 4 mu^2 (S+1) (1 + sqrt(2 log(4n/delta))) log(2 e^2 (S+1)^2 n / delta)
///
/// log(.)^{p} is read as (log .)^p.
MeasurementBound measurement_bound(std::size_t n, std::size_t s, double mu, double delta, Ensemble ensemble,
                                   double k = 1.0);

/// K-independent factor of the measurement requirement (its value at K = 1).
double measurement_bound_shape(std::size_t n, std::size_t s, double mu, double delta, Ensemble ensemble);

// ---- Monte Carlo -------------------------------------------------------------

struct ConcentrationRow {
  double r = 0.0;
  double empirical = 0.0;
  double bound = 1.0;
  double stderr_mc = 0.0;
  bool valid = false;
};

struct ConcentrationTable {
  BoundVariant variant = BoundVariant::FixedVector;
  Ensemble ensemble = Ensemble::Gaussian;
  std::size_t n = 0, m = 0, s = 0;
  double mu = 1.0;
  std::size_t trials = 0;
  double mean_statistic = 0.0;  // sample mean of R (FixedVector) or of (lmin+lmax)/2
  std::vector<ConcentrationRow> rows;
};

constexpr std::size_t kMinConcentrationTrials = 100;

struct ConcentrationSetup {
  std::size_t n = 256;
  std::size_t s = 4;
  std::size_t m = 64;
  BasisId basis = BasisId::Spikes;
  Ensemble ensemble = Ensemble::Gaussian;
  SubsampleScheme omega_scheme = SubsampleScheme::EqualInterval;
  std::vector<std::size_t> explicit_omega;  // ExplicitFixed only
  std::vector<double> r_grid;
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Fixed x0 (one support/sign draw scaled to unit norm, drawn from the
/// master seed), fresh waveform per trial from (seed, trial). R =
/// ||m^{-1/2} H^Omega Psi x0||^2. For each r: fraction of trials with
/// |R - 1| > r against the FixedVector bound.
ConcentrationTable empirical_concentration(const ConcentrationSetup& setup);

/// Same sampling but the statistic is the extreme eigenvalues of the S x S
/// Gram (1/m) U_T^T U_T; a trial exceeds r when lmin < 1 - r or lmax > 1 + r,
/// compared with the FixedSupport bound.
ConcentrationTable empirical_eigenvalue_concentration(const ConcentrationSetup& setup);

struct EigenvalueExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Extreme eigenvalues of (1/m) U_T^T U_T, computed densely. Rank-deficient
/// Gram (S > m) reports lambda_min = 0.
EigenvalueExtremes eigenvalue_extremes(const LinearOperator& op, const Basis& basis, const SupportSet& support);

// ---- fitting the numerical constant ------------------------------------------

struct ContourPoint {
  std::size_t s = 0;
  double m = 0.0;  // measurement count where the success rate crosses the level
};

struct KFit {
  double k = 0.0;
  double residual = 0.0;  // root-mean-square of m - K * shape
  std::size_t points = 0;
};

/// Least-squares K in m = K * shape(S) through the origin. Throws
/// InvalidParameter when no points are given.
KFit fit_k(std::span<const ContourPoint> contour, std::size_t n, double mu, double delta, Ensemble ensemble);

}  // namespace wrconv
