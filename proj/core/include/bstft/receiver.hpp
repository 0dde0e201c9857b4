// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bstft/frontend.hpp"
#include "bstft/sbs.hpp"
#include "bstft/sigkit.hpp"

namespace bstft {

/// Where each window's time/frequency anchor comes from.
enum class CalibrationMode {
  inline_reference,  // locate the reference pulse in the measured window
  calibration_pass,  // locate it in a reference-only run, then decode the real run
  nominal,           // use the analytic reference position
};

struct ReceiverSpec {
  double pd_bandwidth = 500e6;     // Hz, photodiode low-pass cutoff
  double osc_sample_rate = 2e9;    // Hz
  double noise_sigma = 0.0;        // additive white Gaussian, photocurrent units
  std::uint64_t seed = 0;
  std::size_t n_bins = 1024;
  CalibrationMode calibration = CalibrationMode::inline_reference;
  bool reference_fallback = true;     // use the nominal anchor when no pulse is found
  double reference_threshold = 0.05;  // pulse must exceed this fraction of the window max
};

/// Throws InvalidArgument unless pd_bandwidth <= osc/2 <= field_rate/2 and
/// field_rate is an integer multiple of osc_sample_rate.
void validate_receiver(const ReceiverSpec& rx, double field_rate);

/// Decoded power spectrum of one sweep period.
struct SpectrumColumn {
  std::size_t window_index = 0;
  double t_center = 0.0;
  std::vector<double> freq_grid;
  std::vector<double> power;
  double t_ref_found = 0.0;
  bool reference_found = false;
  bool edge_split = false;  // strongest sample within two samples of a window edge
};

/// |field|^2 through a linear-phase low-pass at pd_bandwidth, decimated to
/// osc_sample_rate, plus optional Gaussian noise.
RealTrace photodetect(const ComplexTrace& field, const ReceiverSpec& rx);

/// Adds white Gaussian noise with the receiver's sigma, seeded by `seed`.
RealTrace add_receiver_noise(const RealTrace& current, double sigma, std::uint64_t seed);

/// Consecutive one-period slices starting at t_start; partial tail dropped.
std::vector<RealTrace> segment_periods(const RealTrace& current, const SweepPlan& plan,
                                       double t_start);

struct ReferenceFix {
  double t_ref = 0.0;  // s, relative to the window start
  bool found = false;
  bool truncated = false;  // half-max region reached the window start
};

/// Analytic position of the reference pulse inside each window.
double nominal_reference_time(const SweepPlan& plan, const ReferenceSpec& ref,
                              const SbsGainSpec& g);

/// Finds the strongest pulse in the guard interval and returns its centroid
/// over the contiguous half-maximum region. Falls back to the nominal
/// position with found = false when nothing clears the threshold.
ReferenceFix locate_reference(const RealTrace& window, const SweepPlan& plan,
                              const ReferenceSpec& ref, const SbsGainSpec& g,
                              double threshold = 0.05);

/// Frequency-to-time line anchored on the reference: f_r + K (t_local - t_ref).
double fttm_map(const SweepPlan& plan, const ReferenceSpec& ref, double t_local, double t_ref);

/// Uniform output grid [f_min, f_min + K T] with n_bins points.
std::vector<double> analysis_grid(const SweepPlan& plan, const SbsGainSpec& g, std::size_t n_bins);

/// Maps window samples through fttm_map with the given anchor and resamples
/// them onto analysis_grid by linear interpolation.
SpectrumColumn decode_window(const RealTrace& window, const SweepPlan& plan,
                             const ReferenceSpec& ref, const SbsGainSpec& g, std::size_t n_bins,
                             std::size_t window_index, const ReferenceFix& fix,
                             bool reference_fallback = true);

/// Same, locating the reference in the window itself.
SpectrumColumn decode_window(const RealTrace& window, const SweepPlan& plan,
                             const ReferenceSpec& ref, const SbsGainSpec& g, std::size_t n_bins,
                             std::size_t window_index = 0);

}  // namespace bstft
