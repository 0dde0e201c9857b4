// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bstft/frontend.hpp"
#include "bstft/receiver.hpp"
#include "bstft/sbs.hpp"
#include "bstft/sigkit.hpp"
#include "bstft/spectrogram.hpp"

namespace bstft {

/// Non-overlapping rectangular-window digital STFT.
struct DigitalStftSpec {
  double window_len = 0.0;  // s
  double hop = 0.0;         // s; 0 means window_len
  double t_start = 0.0;     // s, start of the first window
  std::size_t oversample = kWindowSpectrumOversample;  // zero-padding factor
};

/// One column per hop: energy per DFT bin of the rectangular-windowed
/// signal on the positive-frequency grid k * fs / (oversample * N). Columns
/// sum to the window energy dt * sum s^2. Throws InvalidArgument when the
/// record is shorter than one window.
Spectrogram digital_stft(const RealTrace& s, const DigitalStftSpec& spec);

/// Windowed energy spectrum |A|^2 convolved with a unit-area Lorentzian of
/// the gain FWHM on a dense grid of spacing fwhm / 20. Values are energy
/// densities (per Hz), linearly interpolated at |f|.
class SmoothedSpectrum {
 public:
  SmoothedSpectrum(double bin_width, std::vector<double> density);
  double operator()(double f) const;
  double bin_width() const { return bin_width_; }
  const std::vector<double>& density() const { return density_; }

 private:
  double bin_width_;
  std::vector<double> density_;
};

SmoothedSpectrum smoothed_power_spectrum(const RealTrace& windowed_m, const SbsGainSpec& g);

/// Reads each digital STFT column along the frequency-to-time line the way
/// the photonic receiver sees it, then decodes it with the receiver's
/// reference location and resampling.
Spectrogram fttm_resample(const Spectrogram& stft, const SweepPlan& plan,
                          const ReferenceSpec& ref, const SbsGainSpec& g,
                          const ReceiverSpec& rx);

struct CompareOptions {
  std::size_t top_k = 8;
  double lobe_threshold = 0.5;     // lobes are regions above this fraction of the column max
  double silence_threshold = 0.05; // columns below this fraction of the global max are empty
  double merge_distance = 0.0;     // Hz; weaker peaks closer than this to a kept one are dropped
  std::optional<double> band_low;  // peaks outside [band_low, band_high] are ignored
  std::optional<double> band_high;
};

struct CompareReport {
  double matched_peak_fraction = 1.0;
  double max_ridge_deviation = 0.0;  // Hz, over matched peaks
  std::size_t peaks_a = 0;
  std::size_t peaks_b = 0;
  std::size_t matched = 0;
};

/// Lobe centroids of one column, strongest first. Only in-band bins count,
/// both for the lobes and for the column maximum; lobes crossing a band edge
/// are dropped.
std::vector<Peak> lobe_peaks(const std::vector<double>& freq_grid, const std::vector<double>& power,
                             const CompareOptions& options, double global_max);

/// Largest in-band value over all columns.
double band_max(const Spectrogram& s, const CompareOptions& options);

/// Greedy nearest-first matching of per-column lobe centroids within
/// freq_tol, after merging peaks closer than 2 freq_tol. Peaks count when their centroid lies in the band; partners may
/// sit up to freq_tol outside it. The fraction is matched / sum over columns
/// of max(n_a, n_b). Throws InvalidArgument when column counts differ.
CompareReport compare_spectrograms(const Spectrogram& a, const Spectrogram& b, double freq_tol,
                                   const CompareOptions& options = {});

}  // namespace bstft
