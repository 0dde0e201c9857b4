// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace bstft {

/// Precondition on an argument violated (non-positive rates, mismatched grids, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested content would fold over the Nyquist frequency of the grid.
class AliasingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A spectral feature lies outside the complex-envelope frame.
class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pulse-width or crossing measurement could not be completed.
class MeasurementFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration document failed schema or cross-module validation.
/// `line` is 1-based, 0 when no location is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace bstft
