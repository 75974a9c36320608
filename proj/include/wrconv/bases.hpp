// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wrconv/types.hpp"

namespace wrconv {

/// An orthonormal synthesis transform Psi with fast application.
class Basis {
 public:
  virtual ~Basis() = default;
  virtual std::size_t size() const = 0;
  /// x = Psi alpha
  virtual void synthesize(std::span<const double> alpha, std::span<double> x) const = 0;
  /// alpha = Psi^T x
  virtual void analyze(std::span<const double> x, std::span<double> alpha) const = 0;
  virtual std::string name() const = 0;
};

/// One-dimensional orthobases.
///
///   Spikes       identity
///   Haar         dyadic Haar, n a power of two; coefficient layout
///                [scaling, coarsest detail, ..., finest details]
///   DCT          orthonormal DCT-II atoms
///   FourierReal  orthonormal real DFT atoms ordered
///                [const, cos 1, sin 1, cos 2, sin 2, ..., (Nyquist if n even)]
class Orthobasis final : public Basis {
 public:
  Orthobasis(BasisId id, std::size_t n);

  std::size_t size() const override { return n_; }
  BasisId id() const { return id_; }
  std::string name() const override { return to_string(id_); }

  void synthesize(std::span<const double> alpha, std::span<double> x) const override;
  void analyze(std::span<const double> x, std::span<double> alpha) const override;

 private:
  BasisId id_;
  std::size_t n_;
};

/// Tensor-product Haar basis on side x side images (row-major), side a
/// power of two: full 1D Haar along every row, then along every column.
class HaarBasis2D final : public Basis {
 public:
  explicit HaarBasis2D(std::size_t side);

  std::size_t size() const override { return side_ * side_; }
  std::size_t side() const { return side_; }
  std::string name() const override { return "haar-2d"; }

  void synthesize(std::span<const double> alpha, std::span<double> x) const override;
  void analyze(std::span<const double> x, std::span<double> alpha) const override;

 private:
  std::size_t side_;
};

std::vector<double> synthesize(const Basis& basis, std::span<const double> alpha);
std::vector<double> analyze(const Basis& basis, std::span<const double> x);

/// Dense Psi whose columns are the atoms (oracle use, n <= 4096).
Eigen::MatrixXd dense_basis(const Basis& basis);

struct CoherenceValue {
  double mu = 0.0;
  BasisId basis_id = BasisId::Spikes;
  std::size_t n = 0;
};

constexpr std::size_t kCoherenceLimit = 65536;

/// mu(F, Psi) = max_{j,k} |(F Psi)_{jk}| with F the unnormalized DFT.
/// Exact scan over all atoms; an atom with a single nonzero entry v has
/// |F psi| = |v| in every bin and is evaluated without a transform.
CoherenceValue coherence(const Orthobasis& basis);

bool is_power_of_two(std::size_t n);

}  // namespace wrconv
