// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wrconv/core.hpp"
#include "wrconv/types.hpp"

namespace wrconv {

// Convolution matrix layout used throughout: row k of H is h circularly
// shifted right by k, i.e. H[k][j] = h[(j - k) mod n]. The first row is h
// itself and row k+1 is row k times the cyclic shift D.

/// A matrix-free linear map A : R^cols -> R^rows with its transpose.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;

  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  virtual void apply_adjoint(std::span<const double> y, std::span<double> x) const = 0;

  /// Approximates (A A^T)^{-1} r. The default is the identity; operators
  /// with exploitable structure override it.
  virtual void gram_precondition(std::span<const double> r, std::span<double> out) const;
};

enum class SubsampleScheme { EqualInterval, ExplicitFixed };

/// Retained measurement rows Omega, strictly increasing, in [0, n).
class SubsampleSet {
 public:
  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  std::size_t dimension() const { return n_; }
  SubsampleScheme scheme() const { return scheme_; }
  /// Row spacing n/m for EqualInterval, 0 otherwise.
  std::size_t stride() const { return scheme_ == SubsampleScheme::EqualInterval ? n_ / indices_.size() : 0; }

 private:
  friend SubsampleSet make_subsample_set(std::size_t, std::size_t, SubsampleScheme, std::span<const std::size_t>);
  std::vector<std::size_t> indices_;
  std::size_t n_ = 0;
  SubsampleScheme scheme_ = SubsampleScheme::EqualInterval;
};

/// EqualInterval requires n mod m == 0 and yields {0, n/m, 2n/m, ...}.
/// ExplicitFixed takes `explicit_indices` (any order, no duplicates).
SubsampleSet make_subsample_set(std::size_t n, std::size_t m, SubsampleScheme scheme,
                                std::span<const std::size_t> explicit_indices = {});

/// The cyclic shift D (x -> x shifted right by one). Never stored densely.
class ShiftMatrix {
 public:
  explicit ShiftMatrix(std::size_t n);
  std::size_t size() const { return n_; }
  /// Row vector times D^power: returns v shifted right by `power`.
  std::vector<double> shift_row(std::span<const double> v, std::size_t power = 1) const;
  Eigen::MatrixXd dense() const;

 private:
  std::size_t n_;
};

/// H x for the layout above, via DFT in O(n log n).
std::vector<double> circular_convolve(std::span<const double> h, std::span<const double> x);

constexpr std::size_t kDenseOracleLimit = 4096;

/// Dense H (test and small-n verification only; refuses n > 4096).
Eigen::MatrixXd build_dense_H(std::span<const double> h);

/// ||F l||_inf, the spectral norm of the circulant generated by l.
double circulant_operator_norm(std::span<const double> l);

/// H^Omega: circular convolution with a waveform followed by row selection.
/// Immutable after construction; apply/adjoint are reentrant.
class SensingOperator final : public LinearOperator {
 public:
  SensingOperator(Waveform waveform, SubsampleSet omega);

  std::size_t rows() const override { return omega_.size(); }
  std::size_t cols() const override { return waveform_.size(); }

  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;

  /// Exact inverse of H^Omega (H^Omega)^T for equal-interval Omega, whose
  /// Gram is an m x m circulant; identity scaled by 1/||h||^2 otherwise.
  void gram_precondition(std::span<const double> r, std::span<double> out) const override;

  const Waveform& waveform() const { return waveform_; }
  const SubsampleSet& omega() const { return omega_; }
  std::span<const std::complex<double>> spectrum() const { return spectrum_; }

  /// Dense H^Omega (oracle use only).
  Eigen::MatrixXd dense() const;

 private:
  Waveform waveform_;
  SubsampleSet omega_;
  std::vector<std::complex<double>> spectrum_;
  std::vector<double> gram_eigenvalues_;  // empty unless equal-interval and well conditioned
  double row_energy_ = 1.0;
};

std::vector<double> apply_sensing(const LinearOperator& op, std::span<const double> x);
std::vector<double> apply_adjoint(const LinearOperator& op, std::span<const double> y);

}  // namespace wrconv
