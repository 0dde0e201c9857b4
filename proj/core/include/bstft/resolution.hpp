// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "bstft/config.hpp"

namespace bstft {

struct ResolutionOptions {
  double dip_db = 3.0;
  double column_fraction = 0.9;  // share of columns that must resolve the pair
};

struct ResolutionReport {
  double chirp_rate = 0.0;  // Hz/s
  double period = 0.0;      // s
  double fwhm = 0.0;        // gain linewidth, Hz
  double min_resolvable_sep = 0.0;  // Hz; +infinity when unresolved at the largest separation
  bool resolved = false;
  double pulse_fwhm_time = 0.0;  // s, median over windows
  double pulse_fwhm_freq = 0.0;  // Hz, chirp_rate * pulse_fwhm_time
};

/// Column search half-width used for each tone: max(fwhm, 2 grid bins).
double resolution_search_halfwidth(const ExperimentConfig& cfg);

/// Share of columns of a simulated two-tone pair (f_center, f_center + sep)
/// that pass two_tone_resolved.
double resolved_fraction(const ExperimentConfig& cfg, double f_center, double sep,
                         const ResolutionOptions& options = {});

/// Bisects the tone separation over [grid bin, K T / 4] down to one grid bin.
/// The config's SUT is replaced by the test tones.
ResolutionReport measure_resolution(const ExperimentConfig& cfg, double f_center,
                                    const ResolutionOptions& options = {});

struct GainCalibration {
  double fwhm = 0.0;      // chosen gain linewidth, Hz
  double achieved = 0.0;  // min_resolvable_sep at that linewidth, Hz
};

/// Picks the candidate linewidth whose measured resolution is closest to
/// target_sep; ties go to the earlier candidate.
GainCalibration calibrate_gain_fwhm(const ExperimentConfig& cfg, double f_center, double target_sep,
                                    const std::vector<double>& candidates,
                                    const ResolutionOptions& options = {});

enum class ScanAxis { period, chirp_rate };

struct ScanPoint {
  double value = 0.0;  // period (s) or chirp rate (Hz/s)
  ResolutionReport report;
};

struct ScanResult {
  ScanAxis axis = ScanAxis::period;
  std::vector<ScanPoint> points;  // in the order given
  /// Resolution non-increasing in period, or non-decreasing in chirp rate.
  bool monotonic = true;
};

/// Config with the sweep period (bandwidth fixed) or chirp rate (bandwidth
/// fixed, period = bandwidth / rate) replaced.
ExperimentConfig with_axis_value(const ExperimentConfig& base, ScanAxis axis, double value);

ScanResult resolution_scan(const ExperimentConfig& base, ScanAxis axis,
                           const std::vector<double>& values, double f_center,
                           const ResolutionOptions& options = {});

}  // namespace bstft
