// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>

#include "bstft/sigkit.hpp"

namespace bstft {

/// Periodic electrical sweep f1 -> f2 over each period, driving the
/// lower-sideband optical sweep carrier. Frequencies in Hz, period in s.
struct SweepPlan {
  double f1 = 0.0;
  double f2 = 0.0;
  double period = 0.0;
  double chirp_rate = 0.0;  // Hz/s, (f2 - f1) / period
  std::size_t n_periods = 1;

  double bandwidth() const { return f2 - f1; }
  double record_duration() const { return period * static_cast<double>(n_periods); }
};

/// Validates ordering and computes the chirp rate. Throws InvalidArgument.
SweepPlan make_sweep_plan(double f1, double f2, double period, std::size_t n_periods);

/// Known CW tone injected alongside the signal under test. Its pulse must
/// land within the first guard_fraction of every window.
struct ReferenceSpec {
  double frequency = 10e6;
  double amplitude = 1.0;
  double guard_fraction = 0.1;

  /// f1 - f_r; sits just below the Brillouin shift.
  double constant_c(const SweepPlan& plan) const { return plan.f1 - frequency; }
};

/// Lowest RF frequency the gain selects during a period (start of the
/// analysis range). `gain_center` is the gain line relative to the carrier.
double analysis_start(const SweepPlan& plan, double gain_center);

/// Checks 0 < f_r - analysis_start < K * guard_fraction * T. Throws InvalidArgument.
void validate_reference(const ReferenceSpec& ref, const SweepPlan& plan, double gain_center);

/// Optical frequency, relative to the carrier, represented by envelope DC.
struct FrameSpec {
  double center = 0.0;

  /// -(f1 + f2) / 2: centers the swept lower sideband.
  static FrameSpec centered_on(const SweepPlan& plan);
};

/// Minimum field sample rate for a sweep plus an RF signal reaching f_max_rf.
double required_sample_rate(const SweepPlan& plan, double f_max_rf);

/// Unit-magnitude sweep carrier: instantaneous frequency relative to the
/// carrier is -(f1 + K * t_local); phase restarts at every period.
/// Throws AliasingError when the sweep does not fit the frame.
ComplexTrace gen_sweep_envelope(const SweepPlan& plan, const TimeGrid& grid,
                                const FrameSpec& frame);

/// sut + amplitude * cos(2 pi f_r t) on the sut grid.
RealTrace combine_with_reference(const RealTrace& sut, const ReferenceSpec& ref);

struct ModulatorSpec {
  /// Finite carrier suppression of the null-biased modulator; unset = ideal.
  std::optional<double> carrier_suppression_db;
};

/// Null-biased intensity modulator in the small-signal limit: the sweep is
/// multiplied by the drive signal. Throws InvalidArgument on grid mismatch.
ComplexTrace modulate_dsb(const ComplexTrace& sweep, const RealTrace& drive,
                          const ModulatorSpec& modulator = {});

struct WindowPosition {
  std::size_t window = 0;
  double t_local = 0.0;
};

/// Period containing t; a period boundary belongs to the later window.
WindowPosition window_index(const SweepPlan& plan, double t);

}  // namespace bstft
