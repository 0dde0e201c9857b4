// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "bstft/sigkit.hpp"

namespace bstft {

// BSTF trace container, version 1, all multi-byte fields little-endian:
//
//   0..3    magic "BSTF"
//   4       version (1)
//   5       kind: 0 = real, 1 = complex
//   6..13   sample_rate, float64
//   14..21  n_samples, uint64
//   22..29  frame_offset, float64 (0 for real traces)
//   30..    samples, float64; complex traces interleave re, im
//
// t0 is not stored; traces read back start at t = 0.

inline constexpr std::size_t kBstfHeaderSize = 30;

using AnyTrace = std::variant<RealTrace, ComplexTrace>;

void write_trace(std::ostream& out, const RealTrace& trace);
void write_trace(std::ostream& out, const ComplexTrace& trace);
void write_trace(const std::filesystem::path& path, const AnyTrace& trace);

/// Throws InvalidArgument on bad magic, version, kind or truncated data.
AnyTrace read_trace(std::istream& in);
AnyTrace read_trace(const std::filesystem::path& path);

}  // namespace bstft
