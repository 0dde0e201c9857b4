// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/pipeline.hpp"

#include <cmath>

#include "bstft/errors.hpp"
#include "bstft/parallel.hpp"

namespace bstft {
namespace {

// Decorrelates per-window noise streams derived from one seed.
std::uint64_t window_seed(std::uint64_t seed, std::size_t w) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(w) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RealTrace reference_only(const ExperimentConfig& cfg) {
  const TimeGrid grid = record_grid(cfg);
  return combine_with_reference(RealTrace(grid, std::vector<double>(grid.n_samples, 0.0)),
                                cfg.reference);
}

std::vector<RealTrace> analytic_windows(const ExperimentConfig& cfg, const RealTrace& drive,
                                        double noise_sigma) {
  const TimeGrid& grid = drive.grid();
  const double per_period = cfg.sweep.period * grid.sample_rate;
  const auto n = static_cast<std::size_t>(std::llround(per_period));
  std::vector<std::size_t> starts;
  for (std::size_t w = 0;; ++w) {
    const auto start = static_cast<std::size_t>(std::llround(static_cast<double>(w) * per_period));
    if (start + n > drive.size()) break;
    starts.push_back(start);
  }
  if (starts.empty()) throw InvalidArgument("simulate: record shorter than one period");

  std::vector<std::optional<RealTrace>> out(starts.size());
  const auto samples = drive.samples();
  parallel_for(starts.size(), [&](std::size_t w) {
    const auto first = samples.begin() + static_cast<std::ptrdiff_t>(starts[w]);
    RealTrace slice(TimeGrid{grid.sample_rate, n, grid.time(starts[w])},
                    std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n)));
    RealTrace current = analytic_window_response(slice, cfg.sweep, cfg.gain, cfg.fidelity,
                                                 cfg.receiver.osc_sample_rate);
    if (noise_sigma > 0.0) {
      current = add_receiver_noise(current, noise_sigma, window_seed(cfg.receiver.seed, w));
    }
    out[w] = std::move(current);
  });
  std::vector<RealTrace> windows;
  windows.reserve(out.size());
  for (auto& w : out) windows.push_back(std::move(*w));
  return windows;
}

std::vector<RealTrace> full_field_windows(const ExperimentConfig& cfg, RealTrace drive,
                                          double noise_sigma) {
  const TimeGrid grid = drive.grid();
  std::optional<ComplexTrace> field;
  {
    const ComplexTrace sweep = gen_sweep_envelope(cfg.sweep, grid, effective_frame(cfg));
    const ComplexTrace probe = modulate_dsb(sweep, drive, cfg.modulator);
    field = apply_gain_filter(probe, cfg.gain);
  }
  ReceiverSpec rx = cfg.receiver;
  rx.noise_sigma = noise_sigma;
  const RealTrace current = photodetect(*field, rx);
  field.reset();
  return segment_periods(current, cfg.sweep, grid.t0);
}

}  // namespace

TimeGrid record_grid(const ExperimentConfig& cfg) {
  return make_time_grid(effective_sample_rate(cfg), cfg.sweep.record_duration());
}

RealTrace drive_trace(const ExperimentConfig& cfg) {
  return combine_with_reference(synthesize(cfg.sut, record_grid(cfg)), cfg.reference);
}

std::vector<RealTrace> photocurrent_windows(const ExperimentConfig& cfg, bool include_sut) {
  RealTrace drive = include_sut ? drive_trace(cfg) : reference_only(cfg);
  const double sigma = include_sut ? cfg.receiver.noise_sigma : 0.0;
  if (cfg.fidelity == FidelityMode::full_field) {
    return full_field_windows(cfg, std::move(drive), sigma);
  }
  return analytic_windows(cfg, drive, sigma);
}

SimulationResult simulate(const ExperimentConfig& cfg) {
  validate_config(cfg);
  SimulationResult result;
  result.sample_rate = effective_sample_rate(cfg);
  result.windows = photocurrent_windows(cfg, true);
  const std::size_t n_windows = result.windows.size();

  const ReceiverSpec& rx = cfg.receiver;
  result.anchors.resize(n_windows);
  switch (rx.calibration) {
    case CalibrationMode::inline_reference:
      parallel_for(n_windows, [&](std::size_t w) {
        result.anchors[w] = locate_reference(result.windows[w], cfg.sweep, cfg.reference, cfg.gain,
                                             rx.reference_threshold);
      });
      break;
    case CalibrationMode::calibration_pass: {
      const std::vector<RealTrace> cal = photocurrent_windows(cfg, false);
      parallel_for(n_windows, [&](std::size_t w) {
        result.anchors[w] = locate_reference(cal.at(w), cfg.sweep, cfg.reference, cfg.gain,
                                             rx.reference_threshold);
      });
      break;
    }
    case CalibrationMode::nominal:
      for (auto& a : result.anchors) {
        a = {nominal_reference_time(cfg.sweep, cfg.reference, cfg.gain), true, false};
      }
      break;
  }

  std::vector<SpectrumColumn> columns(n_windows);
  parallel_for(n_windows, [&](std::size_t w) {
    columns[w] = decode_window(result.windows[w], cfg.sweep, cfg.reference, cfg.gain, rx.n_bins, w,
                               result.anchors[w], rx.reference_fallback);
  });
  result.spectrogram = assemble(std::move(columns), cfg.sweep.period);
  result.spectrogram.digest = config_digest(cfg);
  return result;
}

std::vector<std::vector<double>> truth_overlay(const ExperimentConfig& cfg, const Spectrogram& spec) {
  const TimeGrid grid = record_grid(cfg);
  std::vector<std::vector<double>> out;
  out.reserve(spec.n_columns());
  for (const auto& c : spec.columns) {
    const double t = std::min(c.t_center, grid.time(grid.n_samples - 1));
    out.push_back(true_instantaneous_frequency(cfg.sut, grid, t));
  }
  return out;
}

Spectrogram oracle_spectrogram(const ExperimentConfig& cfg) {
  const RealTrace sut = synthesize(cfg.sut, record_grid(cfg));
  DigitalStftSpec spec;
  spec.window_len = cfg.sweep.period;
  Spectrogram out = digital_stft(sut, spec);
  out.digest = config_digest(cfg);
  return out;
}

CompareReport oracle_compare(const ExperimentConfig& cfg, const Spectrogram& spec) {
  const Spectrogram oracle = oracle_spectrogram(cfg);
  const double f_min = analysis_start(cfg.sweep, cfg.gain.center());
  const double span = cfg.sweep.chirp_rate * cfg.sweep.period;
  const double guard = cfg.reference.guard_fraction * span;
  CompareOptions options;
  options.band_low = f_min + guard;
  options.band_high = f_min + span - guard;
  return compare_spectrograms(spec, oracle, cfg.gain.fwhm, options);
}

}  // namespace bstft
