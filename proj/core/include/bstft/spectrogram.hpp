// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bstft/receiver.hpp"
#include "bstft/sigkit.hpp"

namespace bstft {

/// Columns in time order on one shared frequency grid.
struct Spectrogram {
  std::vector<double> freq_grid;
  double period = 0.0;  // column spacing, s
  std::vector<SpectrumColumn> columns;
  std::string digest;  // identifies the producing configuration

  std::size_t n_columns() const { return columns.size(); }
  std::size_t n_bins() const { return freq_grid.size(); }
  /// Windows decoded without a located reference pulse.
  std::vector<std::size_t> uncalibrated_windows() const;
  double max_power() const;
};

/// Validates grid consistency and ordering (t_center increasing by `period`).
/// Throws InvalidArgument.
Spectrogram assemble(std::vector<SpectrumColumn> columns, double period);

struct Peak {
  double frequency = 0.0;
  double power = 0.0;
};

/// Local maxima of one column above `min_power`, strongest first, at most
/// n_peaks. Frequencies are refined by three-point parabolic interpolation;
/// power is the sample maximum.
std::vector<Peak> column_peaks(const std::vector<double>& freq_grid,
                               const std::vector<double>& power, std::size_t n_peaks,
                               double min_power);

/// Per column, the frequencies of the n_peaks strongest local maxima above
/// rel_threshold times the spectrogram maximum.
std::vector<std::vector<double>> extract_ridge(const Spectrogram& spec, std::size_t n_peaks,
                                               double rel_threshold = 0.1);

/// True when distinct local maxima lie within search_halfwidth of f_a and
/// f_b and the minimum between them is at least dip_db below the lower one.
/// Throws InvalidArgument when f_a == f_b or either lies off the grid.
bool two_tone_resolved(const SpectrumColumn& column, double f_a, double f_b,
                       double search_halfwidth, double dip_db = 3.0);

/// Full width at half maximum of the pulse whose peak is nearest `around`
/// (seconds from the trace start), with linearly interpolated crossings.
/// Throws MeasurementFailed when a crossing is missing.
double pulse_fwhm(const RealTrace& window, double around);

}  // namespace bstft
