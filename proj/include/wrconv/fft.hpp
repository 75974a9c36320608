// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wrconv::fft {

using cplx = std::complex<double>;

// Unnormalized forward transform, X_k = sum_j x_j exp(-2 pi i jk/n); the
// inverse carries the 1/n. Plans are cached per size and shared between
// threads; execution is reentrant.

void forward(std::span<const cplx> in, std::span<cplx> out);
void inverse(std::span<const cplx> in, std::span<cplx> out);

std::vector<cplx> forward_real(std::span<const double> x);
/// Real part of the inverse transform.
std::vector<double> inverse_to_real(std::span<const cplx> spectrum);

/// Row-major rows x cols 2D transforms with the same conventions.
void forward_2d(std::size_t rows, std::size_t cols, std::span<const cplx> in, std::span<cplx> out);
void inverse_2d(std::size_t rows, std::size_t cols, std::span<const cplx> in, std::span<cplx> out);

/// Orthonormal DCT-II (analysis) and its inverse DCT-III (synthesis).
void dct2_orthonormal(std::span<const double> in, std::span<double> out);
void dct3_orthonormal(std::span<const double> in, std::span<double> out);

}  // namespace wrconv::fft
