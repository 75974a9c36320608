// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <stdexcept>
#include <string>

namespace wrconv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector or matrix has the wrong length, or a length is zero.
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside its admissible range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// NaN iterates, non-real convolution output and similar breakdowns.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace wrconv
