// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "bstft/bstft.hpp"

namespace {

bstft::ComplexTrace noise_trace(double rate, double duration, double frame) {
  const bstft::TimeGrid grid = bstft::make_time_grid(rate, duration);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<std::complex<double>> x(grid.n_samples);
  for (auto& v : x) v = {n(rng), n(rng)};
  return bstft::ComplexTrace(grid, std::move(x), frame);
}

void BM_GainFilter(benchmark::State& state) {
  bstft::SbsGainSpec g;
  g.fwhm = 17.5e6;
  const double duration = static_cast<double>(state.range(0)) * 1e-6;
  const bstft::ComplexTrace x = noise_trace(4e9, duration, g.center());
  for (auto _ : state) {
    benchmark::DoNotOptimize(bstft::apply_gain_filter(x, g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x.samples().size()));
}
BENCHMARK(BM_GainFilter)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_DigitalStft(benchmark::State& state) {
  const bstft::ExperimentConfig cfg = bstft::preset("fig8d");
  const bstft::RealTrace drive = bstft::drive_trace(cfg);
  bstft::DigitalStftSpec spec;
  spec.window_len = cfg.sweep.period;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bstft::digital_stft(drive, spec));
  }
}
BENCHMARK(BM_DigitalStft)->Unit(benchmark::kMillisecond);

void BM_SmoothedSpectrum(benchmark::State& state) {
  const bstft::ExperimentConfig cfg = bstft::preset("fig8d");
  const bstft::RealTrace drive = bstft::drive_trace(cfg);
  const double rate = drive.grid().sample_rate;
  const auto n = static_cast<std::size_t>(cfg.sweep.period * rate);
  const bstft::RealTrace window(bstft::TimeGrid{rate, n, 0.0},
                                std::vector<double>(drive.samples().begin(), drive.samples().begin() + n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bstft::smoothed_power_spectrum(window, cfg.gain));
  }
}
BENCHMARK(BM_SmoothedSpectrum)->Unit(benchmark::kMillisecond);

// 0 full field, 1 Lorentzian, 2 dirac.
void BM_Simulate(benchmark::State& state) {
  bstft::ExperimentConfig cfg = bstft::preset("fig8d");
  static constexpr bstft::FidelityMode kModes[] = {bstft::FidelityMode::full_field,
                                                   bstft::FidelityMode::lorentzian_analytic,
                                                   bstft::FidelityMode::dirac};
  cfg.fidelity = kModes[state.range(0)];
  state.SetLabel(bstft::fidelity_name(cfg.fidelity));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bstft::simulate(cfg));
  }
}
BENCHMARK(BM_Simulate)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
