// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace wrconv {

enum class Distribution { Gaussian, Bernoulli, BandlimitedGaussian };

/// Waveform ensembles covered by the concentration bounds.
enum class Ensemble { Gaussian, Bernoulli };

enum class BasisId { Spikes, Haar, DCT, FourierReal };

std::string to_string(Distribution d);
std::string to_string(Ensemble e);
std::string to_string(BasisId b);

// Parsers throw InvalidParameter on unknown names.
Distribution parse_distribution(std::string_view s);
Ensemble parse_ensemble(std::string_view s);
BasisId parse_basis_id(std::string_view s);

Distribution to_distribution(Ensemble e);

/// Problem size (n, m, S) and failure probability delta.
///
/// Invariants: 1 <= S <= n, 1 <= m <= n, 0 < delta < 1.
struct ProblemDims {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  double delta = 0.1;

  /// Validating constructor; throws InvalidDimension / InvalidParameter.
  static ProblemDims make(std::size_t n, std::size_t m, std::size_t s, double delta = 0.1);
};

}  // namespace wrconv
