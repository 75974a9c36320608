// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "wrconv/types.hpp"

namespace wrconv {

/// A white random waveform h of length n, tagged with how it was drawn.
struct Waveform {
  std::vector<double> samples;
  Distribution distribution = Distribution::Gaussian;
  std::uint64_t seed = 0;
  int oversample = 0;  // only meaningful for BandlimitedGaussian

  std::size_t size() const { return samples.size(); }
  bool operator==(const Waveform&) const = default;
};

Waveform gen_gaussian_waveform(std::size_t n, std::uint64_t seed);
Waveform gen_bernoulli_waveform(std::size_t n, std::uint64_t seed);

/// Gaussian noise on a grid of spacing 1/oversample, filtered by a sinc
/// kernel truncated at +-32 lobes and sampled at integer lags. The kernel
/// is scaled to unit energy so every sample has unit variance. The fine
/// grid wraps around (length n * oversample), so the output is circularly
/// stationary.
Waveform gen_bandlimited_waveform(std::size_t n, int oversample, std::uint64_t seed);

/// Dispatches on the ensemble (Gaussian or Bernoulli).
Waveform gen_waveform(Ensemble ensemble, std::size_t n, std::uint64_t seed);

/// Non-circular sample autocovariance (1/(n-lag)) sum x_i x_{i+lag}; the
/// waveform mean is zero by construction so it is not subtracted.
double sample_autocovariance(std::span<const double> x, std::size_t lag);

/// Strictly increasing positions in [0, n).
class SupportSet {
 public:
  SupportSet() = default;
  /// Throws InvalidParameter unless `indices` are strictly increasing and < n.
  SupportSet(std::vector<std::size_t> indices, std::size_t n);

  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  std::size_t dimension() const { return n_; }
  bool contains(std::size_t i) const;

  bool operator==(const SupportSet&) const = default;

 private:
  std::vector<std::size_t> indices_;
  std::size_t n_ = 0;
};

/// Signs (+1 / -1) attached to the entries of a SupportSet.
class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::vector<int> signs);

  std::span<const int> signs() const { return signs_; }
  std::size_t size() const { return signs_.size(); }
  bool operator==(const SignPattern&) const = default;

 private:
  std::vector<int> signs_;
};

struct MagnitudeLaw {
  enum class Kind { Unit, Uniform };
  Kind kind = Kind::Unit;
  double a = 1.0;
  double b = 1.0;

  static MagnitudeLaw unit() { return {}; }
  static MagnitudeLaw uniform(double a, double b);
};

/// Test signal x0 = Psi * alpha0 with alpha0 supported on `support`.
/// `coefficients` holds positive magnitudes; signs live in `signs`.
struct SparseInstance {
  SupportSet support;
  SignPattern signs;
  std::vector<double> coefficients;
  BasisId basis_id = BasisId::Spikes;

  std::size_t dimension() const { return support.dimension(); }
  std::size_t sparsity() const { return support.size(); }
  bool operator==(const SparseInstance&) const = default;
};

SparseInstance gen_sparse_instance(std::size_t n, std::size_t s, MagnitudeLaw law, std::uint64_t seed,
                                   BasisId basis_id = BasisId::Spikes);

/// Dense coefficient vector alpha0.
std::vector<double> densify(const SparseInstance& inst);

/// Inverse of densify: nonzero entries become the support.
SparseInstance sparsify(std::span<const double> alpha, BasisId basis_id);

void to_json(nlohmann::json& j, const Waveform& w);
void from_json(const nlohmann::json& j, Waveform& w);
void to_json(nlohmann::json& j, const SparseInstance& inst);
void from_json(const nlohmann::json& j, SparseInstance& inst);

}  // namespace wrconv
