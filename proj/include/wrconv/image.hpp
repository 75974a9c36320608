// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wrconv {

/// Row-major grayscale image with intensities in [0, 1].
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;
};

/// Binary portable graymap (P5), maxval up to 65535. Throws InvalidParameter
/// on malformed input and Error when the file cannot be opened.
GrayImage read_pgm(const std::string& path);

/// Writes 8-bit P5; values are clamped to [0, 1] and rounded.
void write_pgm(const std::string& path, const GrayImage& image);

/// Piecewise-constant test scene: grey background (0.5), a bright object
/// (1.0) and its dark shadow (0.0). `side` must be a multiple of 8.
GrayImage synthetic_scene(std::size_t side);

}  // namespace wrconv
