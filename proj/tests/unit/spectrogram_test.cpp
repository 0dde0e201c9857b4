// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bstft/errors.hpp"
#include "bstft/pipeline.hpp"
#include "bstft/presets.hpp"
#include "bstft/spectrogram.hpp"

namespace bstft {
namespace {

constexpr double kGHz = 1e9;
constexpr double kMHz = 1e6;
constexpr double kUs = 1e-6;

SpectrumColumn column(std::size_t w, double period, std::vector<double> grid,
                      std::vector<double> power) {
  SpectrumColumn c;
  c.window_index = w;
  c.t_center = (double(w) + 0.5) * period;
  c.freq_grid = std::move(grid);
  c.power = std::move(power);
  c.reference_found = true;
  return c;
}

std::vector<double> linear_grid(std::size_t n, double lo, double hi) {
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = lo + (hi - lo) * double(k) / double(n - 1);
  return g;
}

ExperimentConfig two_tone_config(double period, double f_b, std::size_t periods) {
  ExperimentConfig cfg = preset("fig6a");
  cfg.sweep = make_sweep_plan(cfg.sweep.f1, cfg.sweep.f1 + 4 * kGHz, period, periods);
  cfg.sut = SutDescriptor{Multitone{{{2 * kGHz, 1.0, 0.0}, {f_b, 1.0, 0.0}}, {}}};
  return cfg;
}

TEST(Assemble, BuildsMatrixInTimeOrder) {
  const auto grid = linear_grid(1024, 0, 4 * kGHz);
  std::vector<SpectrumColumn> cols;
  for (std::size_t w = 0; w < 40; ++w) cols.push_back(column(w, 1 * kUs, grid, std::vector<double>(1024, double(w))));
  const Spectrogram s = assemble(cols, 1 * kUs);
  EXPECT_EQ(s.n_columns(), 40u);
  EXPECT_EQ(s.n_bins(), 1024u);
  EXPECT_DOUBLE_EQ(s.max_power(), 39.0);
  EXPECT_TRUE(s.uncalibrated_windows().empty());
}

TEST(Assemble, SingleColumnIsValid) {
  const Spectrogram s = assemble({column(0, 2 * kUs, linear_grid(8, 0, 1), std::vector<double>(8, 1.0))}, 2 * kUs);
  EXPECT_EQ(s.n_columns(), 1u);
}

TEST(Assemble, RejectsDisorderAndGridMismatch) {
  const auto grid = linear_grid(8, 0, 1);
  EXPECT_THROW(assemble({column(1, 1 * kUs, grid, std::vector<double>(8)),
                         column(0, 1 * kUs, grid, std::vector<double>(8))},
                        1 * kUs),
               InvalidArgument);
  EXPECT_THROW(assemble({column(0, 1 * kUs, grid, std::vector<double>(8)),
                         column(1, 1 * kUs, linear_grid(8, 0, 2), std::vector<double>(8))},
                        1 * kUs),
               InvalidArgument);
  EXPECT_THROW(assemble({column(0, 1 * kUs, grid, std::vector<double>(7))}, 1 * kUs),
               InvalidArgument);
  EXPECT_THROW(assemble({}, 1 * kUs), InvalidArgument);
}

TEST(Assemble, FlagsUncalibratedWindows) {
  const auto grid = linear_grid(8, 0, 1);
  auto a = column(0, 1 * kUs, grid, std::vector<double>(8));
  auto b = column(1, 1 * kUs, grid, std::vector<double>(8));
  b.reference_found = false;
  const Spectrogram s = assemble({a, b}, 1 * kUs);
  EXPECT_EQ(s.uncalibrated_windows(), std::vector<std::size_t>{1});
}

TEST(ColumnPeaks, ParabolicRefinementFindsTheVertex) {
  const auto grid = linear_grid(101, 0, 100);
  std::vector<double> p(101);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = 10 - (grid[k] - 42.3) * (grid[k] - 42.3);
  const auto peaks = column_peaks(grid, p, 3, 0.0);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_NEAR(peaks[0].frequency, 42.3, 1e-9);
  EXPECT_DOUBLE_EQ(peaks[0].power, p[42]);
}

TEST(ExtractRidge, AllZeroGivesEmptyLists) {
  const auto grid = linear_grid(16, 0, 1);
  const Spectrogram s = assemble({column(0, 1 * kUs, grid, std::vector<double>(16)),
                                  column(1, 1 * kUs, grid, std::vector<double>(16))},
                                 1 * kUs);
  for (const auto& r : extract_ridge(s, 2)) EXPECT_TRUE(r.empty());
}

TEST(ExtractRidge, ToneRidgeStaysOnTheTone) {
  ExperimentConfig cfg = preset("fig6a");
  cfg.sweep.n_periods = 5;
  cfg.sut = SutDescriptor{Tone{{2 * kGHz, 1.0, 0.0}, {}}};
  cfg.reference.amplitude = 0.5;  // keeps the tone the strongest feature
  const Spectrogram s = simulate(cfg).spectrogram;
  const double bin = s.freq_grid[1] - s.freq_grid[0];
  // Frequency-axis fidelity: max(bin / 2, linewidth / 4) in every column.
  const double tol = std::max(0.5 * bin, 0.25 * cfg.gain.fwhm);
  const auto ridge = extract_ridge(s, 1, 0.5);
  ASSERT_EQ(ridge.size(), 5u);
  for (std::size_t w = 0; w < ridge.size(); ++w) {
    ASSERT_EQ(ridge[w].size(), 1u) << w;
    EXPECT_NEAR(ridge[w][0], 2 * kGHz, tol) << w;
  }
}

TEST(ExtractRidge, LfmRidgeFollowsTheChirpSlope) {
  const ExperimentConfig cfg = preset("fig4b");
  const Spectrogram s = simulate(cfg).spectrogram;
  std::vector<double> t, f;
  const double f_min = s.freq_grid.front() + 0.1 * (s.freq_grid.back() - s.freq_grid.front());
  const double f_max = s.freq_grid.back() - 0.1 * (s.freq_grid.back() - s.freq_grid.front());
  const double rate = std::get<Lfm>(cfg.sut.variant).chirp_rate();
  for (std::size_t w = 1; w + 1 < s.n_columns(); ++w) {
    const auto& c = s.columns[w];
    const double f_true = 10 * kMHz + rate * c.t_center;
    if (f_true < f_min + 0.1 * kGHz || f_true > f_max - 0.1 * kGHz) continue;
    std::vector<double> power = c.power;
    for (std::size_t k = 0; k < power.size(); ++k) {
      if (c.freq_grid[k] < f_min) power[k] = 0.0;  // reference guard band
    }
    const auto peaks = column_peaks(c.freq_grid, power, 1, 0.0);
    ASSERT_FALSE(peaks.empty());
    t.push_back(c.t_center);
    f.push_back(peaks[0].frequency);
  }
  const double n = double(t.size());
  double st = 0, sf = 0, stt = 0, stf = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sf += f[i];
    stt += t[i] * t[i];
    stf += t[i] * f[i];
  }
  const double slope = (n * stf - st * sf) / (n * stt - st * st);
  EXPECT_NEAR(slope, 19.95 * kMHz / kUs, 0.02 * 19.95 * kMHz / kUs);
}

TEST(TwoToneResolved, SixtyMegahertzResolvesAtOneGhzPerUs) {
  const ExperimentConfig cfg = two_tone_config(4 * kUs, 2.06 * kGHz, 4);
  const Spectrogram s = simulate(cfg).spectrogram;
  for (std::size_t w = 1; w < s.n_columns(); ++w) {
    EXPECT_TRUE(two_tone_resolved(s.columns[w], 2 * kGHz, 2.06 * kGHz, cfg.gain.fwhm)) << w;
  }
}

TEST(TwoToneResolved, SixtyMegahertzMergesAtEightGhzPerUs) {
  const ExperimentConfig cfg = two_tone_config(0.5 * kUs, 2.06 * kGHz, 8);
  const Spectrogram s = simulate(cfg).spectrogram;
  for (const auto& c : s.columns) {
    EXPECT_FALSE(two_tone_resolved(c, 2 * kGHz, 2.06 * kGHz, cfg.gain.fwhm));
  }
}

TEST(TwoToneResolved, PreconditionsAndSyntheticDip) {
  const auto grid = linear_grid(401, 0, 400);
  std::vector<double> p(401);
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = 1 / (1 + std::pow((grid[k] - 190) / 5, 2)) + 0.8 / (1 + std::pow((grid[k] - 210) / 5, 2));
  }
  const SpectrumColumn c = column(0, 1, grid, p);
  EXPECT_TRUE(two_tone_resolved(c, 190, 210, 6));
  EXPECT_FALSE(two_tone_resolved(c, 190, 210, 6, 30.0));
  EXPECT_THROW(two_tone_resolved(c, 200, 200, 6), InvalidArgument);
  EXPECT_THROW(two_tone_resolved(c, 200, 500, 6), InvalidArgument);
  // A single broad lobe has no dip.
  std::vector<double> one(401);
  for (std::size_t k = 0; k < one.size(); ++k) one[k] = 1 / (1 + std::pow((grid[k] - 200) / 30, 2));
  EXPECT_FALSE(two_tone_resolved(column(0, 1, grid, one), 190, 210, 6));
}

TEST(PulseFwhm, SyntheticShapes) {
  const double rate = 2 * kGHz;
  const TimeGrid grid = make_time_grid(rate, 1 * kUs);
  const double w = 37.3e-9;
  std::vector<double> lor(grid.n_samples), rect(grid.n_samples, 0.0);
  for (std::size_t n = 0; n < grid.n_samples; ++n) {
    const double t = grid.time(n) - 400e-9;
    lor[n] = 1 / (1 + std::pow(2 * t / w, 2));
    if (std::abs(grid.time(n) - 600e-9) <= 0.5 * w) rect[n] = 1.0;
  }
  EXPECT_NEAR(pulse_fwhm(RealTrace(grid, lor), 400e-9), w, 1 / rate);
  EXPECT_NEAR(pulse_fwhm(RealTrace(grid, rect), 600e-9), w, 1 / rate);
}

TEST(PulseFwhm, MissingCrossingFails) {
  const TimeGrid grid = make_time_grid(2 * kGHz, 0.1 * kUs);
  std::vector<double> ramp(grid.n_samples);
  for (std::size_t n = 0; n < ramp.size(); ++n) ramp[n] = double(n);
  EXPECT_THROW(pulse_fwhm(RealTrace(grid, ramp), 0.099 * kUs), MeasurementFailed);
  EXPECT_THROW(pulse_fwhm(RealTrace(grid, std::vector<double>(grid.n_samples, 0.0)), 50e-9),
               MeasurementFailed);
}

TEST(PulseFwhm, FasterSweepGivesWiderFrequencyImage) {
  auto width_hz = [](double period) {
    ExperimentConfig cfg = preset("fig6a");
    cfg.sweep = make_sweep_plan(cfg.sweep.f1, cfg.sweep.f1 + 4 * kGHz, period, 3);
    cfg.sut = SutDescriptor{Tone{{2 * kGHz, 1.0, 0.0}, {}}};
    const SimulationResult r = simulate(cfg);
    const double t_pulse = r.anchors[1].t_ref + (2 * kGHz - cfg.reference.frequency) / cfg.sweep.chirp_rate;
    return cfg.sweep.chirp_rate * pulse_fwhm(r.windows[1], t_pulse);
  };
  const double k1 = width_hz(4 * kUs);
  const double k8 = width_hz(0.5 * kUs);
  EXPECT_GT(k8, k1);
  EXPECT_GT(k1, 0.8 * kCalibratedGainFwhm);
}

}  // namespace
}  // namespace bstft
