// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bstft/errors.hpp"
#include "bstft/oracle.hpp"
#include "bstft/pipeline.hpp"
#include "bstft/presets.hpp"
#include "bstft/receiver.hpp"
#include "bstft/spectrogram.hpp"

namespace bstft {
namespace {

constexpr double kGHz = 1e9;
constexpr double kMHz = 1e6;
constexpr double kUs = 1e-6;

// Sweep 10.8 -> 14.8 GHz, gain line at -10.8 GHz, analysis range 0..4 GHz.
ExperimentConfig tone_config(double period, std::size_t n_periods, SutDescriptor sut) {
  ExperimentConfig cfg;
  cfg.sweep = make_sweep_plan(10.8 * kGHz, 14.8 * kGHz, period, n_periods);
  cfg.gain.fwhm = kCalibratedGainFwhm;
  cfg.sut = std::move(sut);
  return cfg;
}

SutDescriptor tone(double f) { return SutDescriptor{Tone{{f, 1.0, 0.0}, {}}}; }

TEST(Photodetect, ConstantFieldGivesUnitCurrent) {
  const TimeGrid grid = make_time_grid(16 * kGHz, 1 * kUs);
  const ComplexTrace field(grid, std::vector<std::complex<double>>(grid.n_samples, {0.6, 0.8}));
  ReceiverSpec rx;
  const RealTrace i = photodetect(field, rx);
  EXPECT_EQ(i.grid().sample_rate, rx.osc_sample_rate);
  EXPECT_EQ(i.size(), 2000u);
  for (std::size_t n = 100; n + 100 < i.size(); ++n) ASSERT_NEAR(i[n], 1.0, 1e-6) << n;
}

TEST(Photodetect, ZeroFieldGivesZeroCurrent) {
  const TimeGrid grid = make_time_grid(16 * kGHz, 0.5 * kUs);
  const ComplexTrace field(grid, std::vector<std::complex<double>>(grid.n_samples));
  for (double v : photodetect(field, ReceiverSpec{}).samples()) ASSERT_EQ(v, 0.0);
}

TEST(Photodetect, TwoToneBeatHasFullModulationDepth) {
  // |e^{i a t} + e^{i b t}|^2 = 2 + 2 cos((b - a) t), swinging 0..4.
  const double df = 50 * kMHz;
  const TimeGrid grid = make_time_grid(16 * kGHz, 2 * kUs);
  std::vector<std::complex<double>> x(grid.n_samples);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double t = grid.time(n);
    x[n] = std::polar(1.0, 2 * std::numbers::pi * 1 * kGHz * t) +
           std::polar(1.0, 2 * std::numbers::pi * (1 * kGHz + df) * t);
  }
  const RealTrace i = photodetect(ComplexTrace(grid, x), ReceiverSpec{});
  double lo = 1e9, hi = -1e9;
  for (std::size_t n = 200; n + 200 < i.size(); ++n) {
    lo = std::min(lo, i[n]);
    hi = std::max(hi, i[n]);
    const double expected = 2 + 2 * std::cos(2 * std::numbers::pi * df * i.grid().time(n));
    ASSERT_NEAR(i[n], expected, 1e-3) << n;
  }
  EXPECT_NEAR(lo, 0.0, 1e-3);
  EXPECT_NEAR(hi, 4.0, 1e-3);
}

TEST(Photodetect, NoiseIsSeededAndHasRequestedSigma) {
  const TimeGrid grid = make_time_grid(2 * kGHz, 50 * kUs);
  const RealTrace zero(grid, std::vector<double>(grid.n_samples, 0.0));
  const RealTrace a = add_receiver_noise(zero, 0.1, 7);
  const RealTrace b = add_receiver_noise(zero, 0.1, 7);
  const RealTrace c = add_receiver_noise(zero, 0.1, 8);
  double ss = 0.0;
  bool differs = false;
  for (std::size_t n = 0; n < a.size(); ++n) {
    ASSERT_EQ(a[n], b[n]);
    differs = differs || a[n] != c[n];
    ss += a[n] * a[n];
  }
  EXPECT_TRUE(differs);
  EXPECT_NEAR(std::sqrt(ss / double(a.size())), 0.1, 0.005);
}

TEST(Receiver, ValidatesRateChain) {
  ReceiverSpec rx;
  EXPECT_NO_THROW(validate_receiver(rx, 16 * kGHz));
  EXPECT_THROW(validate_receiver(rx, 15 * kGHz), InvalidArgument);  // not a multiple
  EXPECT_THROW(validate_receiver(rx, 1 * kGHz), InvalidArgument);
  rx.pd_bandwidth = 1.5 * kGHz;
  EXPECT_THROW(validate_receiver(rx, 16 * kGHz), InvalidArgument);
}

TEST(SegmentPeriods, Examples) {
  const SweepPlan one_us = make_sweep_plan(10.8 * kGHz, 14.8 * kGHz, 1 * kUs, 40);
  const RealTrace forty(make_time_grid(2 * kGHz, 40 * kUs), std::vector<double>(80000, 1.0));
  const auto w = segment_periods(forty, one_us, 0.0);
  ASSERT_EQ(w.size(), 40u);
  EXPECT_EQ(w[0].size(), 2000u);
  EXPECT_NEAR(w[7].grid().t0, 7 * kUs, 1e-15);

  const SweepPlan two_us = make_sweep_plan(10.8 * kGHz, 14.8 * kGHz, 2 * kUs, 2);
  const RealTrace five(make_time_grid(2 * kGHz, 5 * kUs), std::vector<double>(10000, 1.0));
  EXPECT_EQ(segment_periods(five, two_us, 0.0).size(), 2u);

  const RealTrace one(make_time_grid(2 * kGHz, 1 * kUs), std::vector<double>(2000, 1.0));
  EXPECT_THROW(segment_periods(one, two_us, 0.0), InvalidArgument);
}

TEST(FttmMap, Examples) {
  const SweepPlan plan = make_sweep_plan(10.8 * kGHz, 14.8 * kGHz, 2 * kUs, 1);
  const ReferenceSpec ref;
  EXPECT_DOUBLE_EQ(fttm_map(plan, ref, 37e-9, 37e-9), 10 * kMHz);
  EXPECT_NEAR(fttm_map(plan, ref, 1 * kUs + 5e-9, 5e-9), 2.01 * kGHz, 1e-3);
  EXPECT_NEAR(fttm_map(plan, ref, plan.period, 5e-9), 4 * kGHz, 1e-3);
}

TEST(AnalysisGrid, SpansTheAnalysisRange) {
  const SweepPlan plan = make_sweep_plan(10.8 * kGHz, 14.8 * kGHz, 2 * kUs, 1);
  SbsGainSpec g;
  const auto grid = analysis_grid(plan, g, 1024);
  ASSERT_EQ(grid.size(), 1024u);
  EXPECT_DOUBLE_EQ(grid.front(), 0.0);
  EXPECT_NEAR(grid.back(), 4 * kGHz, 1e-3);
  EXPECT_NEAR(nominal_reference_time(plan, ReferenceSpec{}, g), 5e-9, 1e-15);
}

TEST(LocateReference, ReferenceOnlyRunAtTwoGhzPerUs) {
  const ExperimentConfig cfg = tone_config(2 * kUs, 6, tone(2 * kGHz));
  const auto windows = photocurrent_windows(cfg, false);
  ASSERT_EQ(windows.size(), 6u);
  const double sample = 1.0 / cfg.receiver.osc_sample_rate;
  // Anchor error in frequency stays within half a gain linewidth.
  const double tol = 0.5 * cfg.gain.fwhm / cfg.sweep.chirp_rate;
  std::vector<double> t;
  for (const auto& w : windows) {
    const ReferenceFix fix = locate_reference(w, cfg.sweep, cfg.reference, cfg.gain);
    EXPECT_TRUE(fix.found);
    EXPECT_NEAR(fix.t_ref, 5e-9, tol);
    t.push_back(fix.t_ref);
  }
  // Interior windows share one anchor; window 0 carries the filter start-up.
  const auto [lo, hi] = std::minmax_element(t.begin() + 1, t.end());
  EXPECT_LT(*hi - *lo, sample);
}

TEST(LocateReference, ExactlyOnePulsePerReferenceOnlyWindow) {
  const ExperimentConfig cfg = tone_config(2 * kUs, 3, tone(2 * kGHz));
  for (const auto& w : photocurrent_windows(cfg, false)) {
    const double peak = *std::max_element(w.samples().begin(), w.samples().end());
    // A lobe still above half-max at the last sample is the next window's
    // pulse split across the boundary.
    int pulses = 0;
    bool above = false;
    for (double v : w.samples()) {
      if (!above && v > 0.5 * peak) ++pulses;
      above = v > 0.5 * peak;
    }
    if (above && w.samples().back() > 0.5 * peak) --pulses;
    EXPECT_EQ(pulses, 1);
  }
}

TEST(LocateReference, ZeroAmplitudeIsNotFound) {
  ExperimentConfig cfg = tone_config(2 * kUs, 2, tone(2 * kGHz));
  cfg.reference.amplitude = 0.0;
  cfg.sut = SutDescriptor{Multitone{{{0.0, 0.0, 0.0}}, {}}};
  const auto windows = photocurrent_windows(cfg, true);
  const ReferenceFix fix = locate_reference(windows[1], cfg.sweep, cfg.reference, cfg.gain);
  EXPECT_FALSE(fix.found);
  EXPECT_DOUBLE_EQ(fix.t_ref, nominal_reference_time(cfg.sweep, cfg.reference, cfg.gain));
}

TEST(DecodeWindow, SingleToneLandsWithinHalfLinewidth) {
  ExperimentConfig cfg = tone_config(2 * kUs, 3, tone(2 * kGHz));
  const SimulationResult r = simulate(cfg);
  for (std::size_t w = 1; w < r.spectrogram.n_columns(); ++w) {
    const auto& col = r.spectrogram.columns[w];
    EXPECT_TRUE(col.reference_found);
    // Centroid over the half-max lobe around the strongest in-band peak.
    std::size_t p = col.power.size() / 4;  // above the reference guard band
    for (std::size_t k = p; k < col.power.size(); ++k) {
      if (col.power[k] > col.power[p]) p = k;
    }
    double num = 0, den = 0;
    for (std::size_t k = p; k < col.power.size() && col.power[k] >= 0.5 * col.power[p]; ++k) {
      num += col.freq_grid[k] * col.power[k];
      den += col.power[k];
    }
    for (std::size_t k = p; k-- > 0 && col.power[k] >= 0.5 * col.power[p];) {
      num += col.freq_grid[k] * col.power[k];
      den += col.power[k];
    }
    EXPECT_NEAR(num / den, 2 * kGHz, 0.5 * cfg.gain.fwhm) << w;
  }
}

TEST(DecodeWindow, SilentWindowGivesZeroColumn) {
  const SweepPlan plan = make_sweep_plan(10.8 * kGHz, 14.8 * kGHz, 2 * kUs, 1);
  const RealTrace silent(make_time_grid(2 * kGHz, 2 * kUs, 6 * kUs), std::vector<double>(4000, 0.0));
  const SpectrumColumn col = decode_window(silent, plan, ReferenceSpec{}, SbsGainSpec{}, 256, 3);
  EXPECT_EQ(col.window_index, 3u);
  EXPECT_FALSE(col.reference_found);
  EXPECT_EQ(col.power.size(), 256u);
  for (double v : col.power) ASSERT_EQ(v, 0.0);
  EXPECT_NEAR(col.t_center, 7 * kUs, 1e-15);
}

TEST(DecodeWindow, NegativeNoiseIsClipped) {
  const SweepPlan plan = make_sweep_plan(10.8 * kGHz, 14.8 * kGHz, 2 * kUs, 1);
  const RealTrace noisy =
      add_receiver_noise(RealTrace(make_time_grid(2 * kGHz, 2 * kUs), std::vector<double>(4000, 0.0)), 1.0, 3);
  const SpectrumColumn col = decode_window(noisy, plan, ReferenceSpec{}, SbsGainSpec{}, 512, 0);
  for (double v : col.power) ASSERT_GE(v, 0.0);
}

TEST(DecodeWindow, TwoTonesSixtyMegahertzApartShowADip) {
  const ExperimentConfig cfg = tone_config(
      4 * kUs, 3, SutDescriptor{Multitone{{{2.0 * kGHz, 1.0, 0.0}, {2.06 * kGHz, 1.0, 0.0}}, {}}});
  const SimulationResult r = simulate(cfg);
  for (std::size_t w = 1; w < r.spectrogram.n_columns(); ++w) {
    EXPECT_TRUE(two_tone_resolved(r.spectrogram.columns[w], 2.0 * kGHz, 2.06 * kGHz,
                                  cfg.gain.fwhm))
        << w;
  }
}

TEST(DecodeWindow, LorentzianColumnsSampleTheSmoothedSpectrum) {
  ExperimentConfig cfg = tone_config(
      2 * kUs, 3,
      SutDescriptor{Multitone{{{0.7 * kGHz, 1.0, 0.0}, {1.9 * kGHz, 0.6, 0.0}, {3.1 * kGHz, 0.8, 0.0}}, {}}});
  cfg.fidelity = FidelityMode::lorentzian_analytic;
  // Nominal anchoring isolates the mapping; the located anchor adds the
  // reference image offset checked above.
  cfg.receiver.calibration = CalibrationMode::nominal;
  const SimulationResult r = simulate(cfg);
  const RealTrace drive = drive_trace(cfg);
  const double bin = 1.0 / (kWindowSpectrumOversample * cfg.sweep.period);
  const auto per_window = static_cast<std::size_t>(std::llround(cfg.sweep.period * drive.grid().sample_rate));
  for (std::size_t w = 1; w < r.spectrogram.n_columns(); ++w) {
    const auto first = drive.samples().begin() + static_cast<std::ptrdiff_t>(w * per_window);
    const RealTrace windowed(
        TimeGrid{drive.grid().sample_rate, per_window, drive.grid().time(w * per_window)},
        std::vector<double>(first, first + static_cast<std::ptrdiff_t>(per_window)));
    const SmoothedSpectrum s = smoothed_power_spectrum(windowed, cfg.gain);
    const auto& col = r.spectrogram.columns[w];
    double err = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < col.power.size(); ++k) {
      const double expected = s(col.freq_grid[k]) * bin;
      err += (col.power[k] - expected) * (col.power[k] - expected);
      norm += expected * expected;
    }
    EXPECT_LT(std::sqrt(err / norm), 0.05) << w;
  }
}

}  // namespace
}  // namespace bstft
