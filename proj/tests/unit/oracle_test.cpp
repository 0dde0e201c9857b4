// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bstft/errors.hpp"
#include "bstft/oracle.hpp"
#include "bstft/pipeline.hpp"
#include "bstft/presets.hpp"
#include "support/properties.hpp"

namespace bstft {
namespace {

constexpr double kGHz = 1e9;
constexpr double kMHz = 1e6;
constexpr double kUs = 1e-6;

RealTrace tones(const TimeGrid& grid, const std::vector<double>& freqs) {
  std::vector<double> x(grid.n_samples, 0.0);
  for (double f : freqs) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += std::cos(2 * std::numbers::pi * f * grid.time(i));
  }
  return RealTrace(grid, std::move(x));
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

TEST(DigitalStft, ToneColumnsPeakAtTheNearestBin) {
  const TimeGrid grid = make_time_grid(8 * kGHz, 10 * kUs);
  const double f0 = 1.23456 * kGHz;
  const Spectrogram s = digital_stft(tones(grid, {f0}), {2 * kUs});
  ASSERT_EQ(s.n_columns(), 5u);
  const double bin = s.freq_grid[1];
  EXPECT_NEAR(bin, 8 * kGHz / (kWindowSpectrumOversample * 16000), 1e-6);
  for (const auto& c : s.columns) {
    EXPECT_NEAR(c.freq_grid[argmax(c.power)], f0, 0.5 * bin);
  }
  EXPECT_NEAR(s.columns[2].t_center, 5 * kUs, 1e-15);
}

TEST(DigitalStft, ColumnsSumToWindowEnergy) {
  const TimeGrid grid = make_time_grid(4 * kGHz, 3 * kUs);
  const RealTrace x = tones(grid, {0.3 * kGHz, 1.7 * kGHz});
  const Spectrogram s = digital_stft(x, {1 * kUs});
  for (std::size_t w = 0; w < s.n_columns(); ++w) {
    double e = 0.0;
    for (std::size_t i = w * 4000; i < (w + 1) * 4000; ++i) e += x[i] * x[i] / grid.sample_rate;
    double sum = 0.0;
    for (double p : s.columns[w].power) sum += p;
    EXPECT_NEAR(sum, e, 1e-9 * e);
  }
}

TEST(DigitalStft, LfmCentroidTracksTheChirpLine) {
  const SutDescriptor lfm{Lfm{10 * kMHz, 4 * kGHz, 0.0, 200 * kUs}};
  const TimeGrid grid = make_time_grid(10 * kGHz, 200 * kUs);
  const double T = 2 * kUs;
  const Spectrogram s = digital_stft(synthesize(lfm, grid), {T});
  const double bin = s.freq_grid[1];
  for (std::size_t w = 2; w + 2 < s.n_columns(); w += 7) {
    const auto& c = s.columns[w];
    const std::size_t p = argmax(c.power);
    double num = 0, den = 0;
    for (std::size_t k = 0; k < c.power.size(); ++k) {
      if (std::abs(c.freq_grid[k] - c.freq_grid[p]) > 100 * kMHz) continue;
      num += c.freq_grid[k] * c.power[k];
      den += c.power[k];
    }
    const double truth = true_instantaneous_frequency(lfm, grid, c.t_center).at(0);
    EXPECT_NEAR(num / den, truth, 1 / (2 * T) + 0.5 * bin) << w;
  }
}

TEST(DigitalStft, Preconditions) {
  const TimeGrid grid = make_time_grid(1 * kGHz, 1 * kUs);
  const RealTrace x = tones(grid, {0.1 * kGHz});
  EXPECT_THROW(digital_stft(x, {2 * kUs}), InvalidArgument);
  EXPECT_THROW(digital_stft(x, {0.0}), InvalidArgument);
  EXPECT_THROW(digital_stft(x, {0.5 * kUs, 0.0, -1 * kUs}), InvalidArgument);
}

TEST(DigitalStft, Deterministic) {
  const TimeGrid grid = make_time_grid(4 * kGHz, 8 * kUs);
  const RealTrace x = tones(grid, {0.31 * kGHz, 1.1 * kGHz});
  const Spectrogram a = digital_stft(x, {1 * kUs});
  const Spectrogram b = digital_stft(x, {1 * kUs});
  for (std::size_t w = 0; w < a.n_columns(); ++w) EXPECT_EQ(a.columns[w].power, b.columns[w].power);
}

TEST(SmoothedSpectrum, NarrowLineLimitEqualsWindowSpectrum) {
  // 32-sample window: 1/T = 31.25 MHz against a 6.25 kHz linewidth.
  const TimeGrid grid = make_time_grid(1 * kGHz, 32e-9);
  const RealTrace x = tones(grid, {0.2037 * kGHz});
  SbsGainSpec g;
  g.fwhm = 6.25e3;
  const SmoothedSpectrum s = smoothed_power_spectrum(x, g);
  const Spectrogram d = digital_stft(x, {32e-9});
  const auto& c = d.columns[0];
  const double bin = c.freq_grid[1];
  double peak = 0.0, worst = 0.0;
  for (double p : c.power) peak = std::max(peak, p / bin);
  for (std::size_t k = 1; k + 1 < c.power.size(); ++k) {
    worst = std::max(worst, std::abs(s(c.freq_grid[k]) - c.power[k] / bin) / peak);
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(SmoothedSpectrum, ToneBecomesALorentzian) {
  const TimeGrid grid = make_time_grid(1 * kGHz, 10 * kUs);
  const double f0 = 0.25 * kGHz;
  SbsGainSpec g;
  g.fwhm = 10 * kMHz;
  const SmoothedSpectrum s = smoothed_power_spectrum(tones(grid, {f0}), g);
  double f_peak = f0, peak = 0.0;
  for (double f = f0 - 2 * kMHz; f <= f0 + 2 * kMHz; f += 10e3) {
    if (s(f) > peak) {
      peak = s(f);
      f_peak = f;
    }
  }
  EXPECT_NEAR(f_peak, f0, 20e3);
  // Fit: peak * hw^2 / (hw^2 + df^2), hw from the half-max crossing.
  double f_half = f0;
  while (s(f_half) > 0.5 * peak) f_half += 1e3;
  const double hw = f_half - f0;
  EXPECT_NEAR(2 * hw, g.fwhm, 0.05 * g.fwhm);
  double ss_res = 0, ss_tot = 0, mean = 0;
  std::vector<double> ys, fs;
  for (double f = f0 - 5 * g.fwhm; f <= f0 + 5 * g.fwhm; f += 0.1 * kMHz) {
    ys.push_back(s(f));
    fs.push_back(f);
    mean += s(f);
  }
  mean /= double(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double model = peak * hw * hw / (hw * hw + (fs[i] - f0) * (fs[i] - f0));
    ss_res += (ys[i] - model) * (ys[i] - model);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  EXPECT_GT(1 - ss_res / ss_tot, 0.99);
}

TEST(SmoothedSpectrum, TonesFiveLinewidthsApartShowADeepDip) {
  const TimeGrid grid = make_time_grid(1 * kGHz, 10 * kUs);
  SbsGainSpec g;
  g.fwhm = 10 * kMHz;
  const SmoothedSpectrum s = smoothed_power_spectrum(tones(grid, {0.2 * kGHz, 0.25 * kGHz}), g);
  const double lower_peak = std::min(s(0.2 * kGHz), s(0.25 * kGHz));
  EXPECT_LT(s(0.225 * kGHz), 0.1 * lower_peak);
}

TEST(Compare, SelfComparisonIsPerfect) {
  const ExperimentConfig cfg = preset("fig8c");
  const Spectrogram s = simulate(cfg).spectrogram;
  const CompareReport r = compare_spectrograms(s, s, cfg.gain.fwhm);
  EXPECT_DOUBLE_EQ(r.matched_peak_fraction, 1.0);
  EXPECT_DOUBLE_EQ(r.max_ridge_deviation, 0.0);
  EXPECT_EQ(r.peaks_a, r.peaks_b);
  EXPECT_EQ(r.matched, r.peaks_a);
}

TEST(Compare, DisjointTonesDoNotMatch) {
  const TimeGrid grid = make_time_grid(8 * kGHz, 4 * kUs);
  const Spectrogram a = digital_stft(tones(grid, {1 * kGHz}), {1 * kUs});
  const Spectrogram b = digital_stft(tones(grid, {3 * kGHz}), {1 * kUs});
  const CompareReport r = compare_spectrograms(a, b, 100 * kMHz);
  EXPECT_DOUBLE_EQ(r.matched_peak_fraction, 0.0);
  EXPECT_EQ(r.matched, 0u);
}

TEST(Compare, ColumnCountMismatchIsRejected) {
  const TimeGrid grid = make_time_grid(8 * kGHz, 4 * kUs);
  const RealTrace x = tones(grid, {1 * kGHz});
  EXPECT_THROW(compare_spectrograms(digital_stft(x, {1 * kUs}), digital_stft(x, {2 * kUs}), 1e6),
               InvalidArgument);
}

TEST(Compare, LobePeaksDropBandEdgeLobesAndMergeNeighbours) {
  std::vector<double> grid(101), p(101, 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = double(k);
  for (std::size_t k = 0; k <= 3; ++k) p[k] = 1.0;    // crosses the band start
  for (std::size_t k = 40; k <= 44; ++k) p[k] = 0.9;  // centroid 42
  p[50] = 0.7;                                        // 8 away from 42
  CompareOptions o;
  o.band_low = 2.0;
  o.band_high = 100.0;
  auto peaks = lobe_peaks(grid, p, o, 1.0);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_NEAR(peaks[0].frequency, 42.0, 1e-12);
  EXPECT_NEAR(peaks[1].frequency, 50.0, 1e-12);
  o.merge_distance = 10.0;
  peaks = lobe_peaks(grid, p, o, 1.0);
  ASSERT_EQ(peaks.size(), 1u);
  // Silent column relative to a large global maximum.
  EXPECT_TRUE(lobe_peaks(grid, p, o, 100.0).empty());
}

TEST(Compare, PhotonicMultitoneMatchesTheDigitalStft) {
  ExperimentConfig cfg = preset("fig6a");
  cfg.sweep = make_sweep_plan(cfg.sweep.f1, cfg.sweep.f1 + 4 * kGHz, 2 * kUs, 6);
  cfg.sut = SutDescriptor{Multitone{
      {{0.8 * kGHz, 1.0, 0.0}, {1.6 * kGHz, 1.0, 0.0}, {2.4 * kGHz, 1.0, 0.0}, {3.2 * kGHz, 1.0, 0.0}}, {}}};
  const CompareReport r = oracle_compare(cfg, simulate(cfg).spectrogram);
  EXPECT_GE(r.matched_peak_fraction, 0.95);
  EXPECT_LE(r.max_ridge_deviation, cfg.gain.fwhm);
}

TEST(Closure, DiracModeEqualsResampledDigitalStft) {
  const auto r = testing::dirac_closure(21, 4);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_LT(r.worst, 1e-6);
}

}  // namespace
}  // namespace bstft
