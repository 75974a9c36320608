// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "wrconv/core.hpp"
#include "wrconv/operators.hpp"

namespace wrconv {

/// Coded-aperture style sensing of a side x side image (row-major): full 2D
/// circular convolution with a white mask, then equal-interval subsampling
/// with the same stride along both axes.
///
/// The 2D layout mirrors the 1D one:
///   y[k1, k2] = sum_{j1, j2} mask[j1 - k1, j2 - k2] x[j1, j2]   (indices mod side)
class SensingOperator2D final : public LinearOperator {
 public:
  /// `mask.samples` must hold side * side entries; `stride` must divide side.
  SensingOperator2D(Waveform mask, std::size_t side, std::size_t stride);

  std::size_t rows() const override { return (side_ / stride_) * (side_ / stride_); }
  std::size_t cols() const override { return side_ * side_; }

  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;

  /// Exact inverse of the block-circulant Gram of the retained rows.
  void gram_precondition(std::span<const double> r, std::span<double> out) const override;

  std::size_t side() const { return side_; }
  std::size_t stride() const { return stride_; }
  const Waveform& mask() const { return mask_; }

 private:
  Waveform mask_;
  std::size_t side_;
  std::size_t stride_;
  std::vector<std::complex<double>> spectrum_;
  std::vector<double> gram_eigenvalues_;
  double row_energy_ = 1.0;
};

}  // namespace wrconv
