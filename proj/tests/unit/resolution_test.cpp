// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bstft/errors.hpp"
#include "bstft/presets.hpp"
#include "bstft/resolution.hpp"

namespace bstft {
namespace {

constexpr double kGHz = 1e9;
constexpr double kMHz = 1e6;
constexpr double kUs = 1e-6;

// fig6a geometry (4 GHz span) with a short record.
ExperimentConfig base(double period, std::size_t periods = 5) {
  ExperimentConfig cfg = preset("fig6a");
  cfg.sweep = make_sweep_plan(cfg.sweep.f1, cfg.sweep.f1 + 4 * kGHz, period, periods);
  return cfg;
}

TEST(Resolution, SearchHalfWidthNeverDropsBelowTwoBins) {
  ExperimentConfig cfg = base(4 * kUs);
  EXPECT_DOUBLE_EQ(resolution_search_halfwidth(cfg), cfg.gain.fwhm);
  cfg.gain.fwhm = 1 * kMHz;
  EXPECT_NEAR(resolution_search_halfwidth(cfg), 2 * 4 * kGHz / 1023, 1.0);
}

TEST(Resolution, OneGhzPerUsResolvesAboutSixtyMegahertz) {
  const ResolutionReport r = measure_resolution(base(4 * kUs), 2 * kGHz);
  EXPECT_TRUE(r.resolved);
  EXPECT_NEAR(r.min_resolvable_sep, 60 * kMHz, 10 * kMHz);
  EXPECT_NEAR(r.chirp_rate, 1e15, 1.0);
  EXPECT_DOUBLE_EQ(r.period, 4 * kUs);
  EXPECT_DOUBLE_EQ(r.fwhm, kCalibratedGainFwhm);
  EXPECT_DOUBLE_EQ(r.pulse_fwhm_freq, r.chirp_rate * r.pulse_fwhm_time);
  EXPECT_GT(r.pulse_fwhm_time, 0.0);
}

TEST(Resolution, DoublingTheChirpRateCoarsensResolution) {
  const double k1 = measure_resolution(base(4 * kUs), 2 * kGHz).min_resolvable_sep;
  const double k2 = measure_resolution(base(2 * kUs), 2 * kGHz).min_resolvable_sep;
  EXPECT_GT(k2, k1);
}

TEST(Resolution, DiracRegimeApproachesTheFourierLimit) {
  // 0.1 GHz over 1 us (0.1 GHz/us); the window limit 1 / T equals the
  // 1 MHz linewidth, so the tone search windows do not mask it.
  ExperimentConfig cfg = preset("fig6a");
  cfg.sweep = make_sweep_plan(cfg.sweep.f1, cfg.sweep.f1 + 0.1 * kGHz, 1 * kUs, 6);
  cfg.reference.frequency = 5 * kMHz;
  cfg.gain.fwhm = 1 * kMHz;
  cfg.fidelity = FidelityMode::dirac;
  const ResolutionReport r = measure_resolution(cfg, 50 * kMHz);
  ASSERT_TRUE(r.resolved);
  const double limit = 1.0 / cfg.sweep.period;
  EXPECT_LT(r.min_resolvable_sep, 2 * limit);
  EXPECT_GT(r.min_resolvable_sep, 0.5 * limit);
}

TEST(Resolution, SaturatesNearTheLinewidthAtLongPeriods) {
  const ResolutionReport r = measure_resolution(base(8 * kUs, 4), 2 * kGHz);
  EXPECT_GT(r.min_resolvable_sep, 0.8 * kCalibratedGainFwhm);
}

TEST(Resolution, UnreachableDipReportsInfinity) {
  ResolutionOptions opts;
  opts.dip_db = 200.0;
  const ResolutionReport r = measure_resolution(base(4 * kUs, 3), 2 * kGHz, opts);
  EXPECT_FALSE(r.resolved);
  EXPECT_EQ(r.min_resolvable_sep, std::numeric_limits<double>::infinity());
}

TEST(Resolution, ResolvedFractionBrackets) {
  const ExperimentConfig cfg = base(4 * kUs, 4);
  EXPECT_GE(resolved_fraction(cfg, 2 * kGHz, 120 * kMHz), 0.9);
  EXPECT_LT(resolved_fraction(cfg, 2 * kGHz, 15 * kMHz), 0.9);
}

TEST(Calibration, PicksTheClosestCandidate) {
  const ExperimentConfig cfg = base(4 * kUs, 3);
  const GainCalibration cal = calibrate_gain_fwhm(cfg, 2 * kGHz, 60 * kMHz, {5 * kMHz, 17.5 * kMHz});
  EXPECT_DOUBLE_EQ(cal.fwhm, 17.5 * kMHz);
  EXPECT_NEAR(cal.achieved, 60 * kMHz, 10 * kMHz);
  EXPECT_THROW(calibrate_gain_fwhm(cfg, 2 * kGHz, 60 * kMHz, {}), InvalidArgument);
}

TEST(Scan, AxisSubstitution) {
  const ExperimentConfig cfg = base(4 * kUs);
  const ExperimentConfig p = with_axis_value(cfg, ScanAxis::period, 2 * kUs);
  EXPECT_DOUBLE_EQ(p.sweep.period, 2 * kUs);
  EXPECT_NEAR(p.sweep.chirp_rate, 2e15, 1.0);
  EXPECT_DOUBLE_EQ(p.sweep.bandwidth(), 4 * kGHz);
  const ExperimentConfig k = with_axis_value(cfg, ScanAxis::chirp_rate, 8e15);
  EXPECT_NEAR(k.sweep.period, 0.5 * kUs, 1e-18);
  EXPECT_DOUBLE_EQ(k.sweep.bandwidth(), 4 * kGHz);
}

TEST(Scan, PeriodScanIsMonotone) {
  const ScanResult s =
      resolution_scan(base(4 * kUs, 4), ScanAxis::period, {1 * kUs, 2 * kUs, 4 * kUs}, 2 * kGHz);
  ASSERT_EQ(s.points.size(), 3u);
  EXPECT_EQ(s.axis, ScanAxis::period);
  EXPECT_DOUBLE_EQ(s.points[1].value, 2 * kUs);
  EXPECT_TRUE(s.monotonic);
  EXPECT_GE(s.points[0].report.min_resolvable_sep, s.points[2].report.min_resolvable_sep);
}

}  // namespace
}  // namespace bstft
