// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bstft/frontend.hpp"
#include "bstft/sigkit.hpp"

namespace bstft {

enum class GainShape {
  linear_lorentzian,         // real Lorentzian amplitude response, zero phase
  exponential_small_signal,  // exp(complex Brillouin susceptibility)
};

/// Brillouin gain line created by an undepleted CW pump.
struct SbsGainSpec {
  double brillouin_shift = 10.8e9;  // Hz
  double fwhm = 30e6;               // Hz
  double peak_gain = 1.0;
  double pump_offset = 0.0;  // pump frequency relative to the optical carrier
  GainShape shape = GainShape::linear_lorentzian;

  /// Gain line relative to the carrier: pump_offset - brillouin_shift.
  double center() const { return pump_offset - brillouin_shift; }
};

enum class FidelityMode { full_field, lorentzian_analytic, dirac };

/// Complex gain at optical frequency f (relative to the carrier).
std::complex<double> gain_profile(const SbsGainSpec& g, double f);

/// Block-processing parameters of the gain filter; exposed for tests and benchmarks.
struct GainFilterLayout {
  std::size_t taps = 0;          // odd, centered impulse response
  std::size_t block_length = 0;  // FFT size of one overlap-save block
};

/// Tap count truncates the impulse response at -80 dB; the block length is
/// the next power of two >= 64 * sample_rate / fwhm (and >= 2 * taps).
GainFilterLayout gain_filter_layout(const SbsGainSpec& g, double sample_rate);

/// Zero-phase LTI filtering of the whole probe record by the gain line,
/// translated into the probe frame; overlap-save, blocks run in parallel.
/// Throws FrameError when the gain line falls outside the frame.
ComplexTrace apply_gain_filter(const ComplexTrace& probe, const SbsGainSpec& g);

/// Oversampling factor of the per-window spectra behind the analytic modes.
inline constexpr std::size_t kWindowSpectrumOversample = 4;

/// Energy per DFT bin of one window: one-sided, bins k = 0..M/2 of an
/// M = oversample * N point zero-padded transform, summing to the window
/// energy dt * sum x^2.
struct WindowSpectrum {
  double bin_width = 0.0;  // Hz
  std::vector<double> energy;

  /// Linear interpolation at |f|; zero beyond the last bin.
  double at(double f) const;
};

WindowSpectrum window_energy_spectrum(std::span<const double> x, double sample_rate,
                                      std::size_t oversample = kWindowSpectrumOversample);

/// Smooths the spectrum with a Lorentzian of the given FWHM, discretized on
/// the bin grid and normalized to unit sum.
WindowSpectrum lorentzian_smooth(const WindowSpectrum& s, double fwhm);

/// Photocurrent of one sweep period predicted without field propagation:
/// dirac gives the windowed-signal spectrum read along the frequency-to-time
/// line f_min + K t; lorentzian_analytic reads the Lorentzian-smoothed
/// spectrum instead. Output sampled at output_rate over one period, starting
/// at the window's t0. Throws InvalidArgument for full_field or when the
/// window duration differs from the period.
RealTrace analytic_window_response(const RealTrace& windowed_drive, const SweepPlan& plan,
                                   const SbsGainSpec& g, FidelityMode mode, double output_rate);

}  // namespace bstft
