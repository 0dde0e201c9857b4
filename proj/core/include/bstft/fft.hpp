// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bstft::fft {

using cplx = std::complex<double>;

/// In-place forward DFT, X[k] = sum x[n] exp(-2 pi i k n / N). Unnormalized.
void forward(std::span<cplx> data);

/// In-place inverse DFT, x[n] = sum X[k] exp(+2 pi i k n / N). Unnormalized.
void inverse(std::span<cplx> data);

/// Full-length complex DFT of a real sequence zero-padded to `size`.
std::vector<cplx> forward_real(std::span<const double> x, std::size_t size);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace bstft::fft
