// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bstft/errors.hpp"
#include "bstft/pipeline.hpp"
#include "bstft/spectrogram.hpp"

namespace bstft {
namespace {

ExperimentConfig with_tones(const ExperimentConfig& cfg, std::vector<double> freqs) {
  ExperimentConfig out = cfg;
  Multitone m;
  for (double f : freqs) m.tones.push_back({f, 1.0, 0.0});
  out.sut = SutDescriptor{m};
  out.sample_rate.reset();
  out.frame_center.reset();
  return out;
}

double grid_bin(const ExperimentConfig& cfg) {
  return cfg.sweep.chirp_rate * cfg.sweep.period / static_cast<double>(cfg.receiver.n_bins - 1);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double resolution_search_halfwidth(const ExperimentConfig& cfg) {
  return std::max(cfg.gain.fwhm, 2.0 * grid_bin(cfg));
}

double resolved_fraction(const ExperimentConfig& cfg, double f_center, double sep,
                         const ResolutionOptions& options) {
  const ExperimentConfig run = with_tones(cfg, {f_center, f_center + sep});
  const SimulationResult result = simulate(run);
  const double hw = resolution_search_halfwidth(cfg);
  std::size_t ok = 0;
  for (const auto& col : result.spectrogram.columns) {
    if (two_tone_resolved(col, f_center, f_center + sep, hw, options.dip_db)) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(result.spectrogram.n_columns());
}

ResolutionReport measure_resolution(const ExperimentConfig& cfg, double f_center,
                                    const ResolutionOptions& options) {
  validate_config(cfg);
  ResolutionReport report;
  report.chirp_rate = cfg.sweep.chirp_rate;
  report.period = cfg.sweep.period;
  report.fwhm = cfg.gain.fwhm;

  const double f_min = analysis_start(cfg.sweep, cfg.gain.center());
  const double span = cfg.sweep.chirp_rate * cfg.sweep.period;
  if (f_center <= f_min || f_center >= f_min + span) {
    throw InvalidArgument("measure_resolution: f_center outside the analysis range");
  }

  // Single-tone pulse width.
  {
    const ExperimentConfig run = with_tones(cfg, {f_center});
    const SimulationResult result = simulate(run);
    std::vector<double> widths;
    for (std::size_t w = 0; w < result.windows.size(); ++w) {
      const double t = result.anchors[w].t_ref + (f_center - cfg.reference.frequency) / cfg.sweep.chirp_rate;
      try {
        widths.push_back(pulse_fwhm(result.windows[w], t));
      } catch (const MeasurementFailed&) {
      }
    }
    if (!widths.empty()) report.pulse_fwhm_time = median(widths);
    report.pulse_fwhm_freq = report.chirp_rate * report.pulse_fwhm_time;
  }

  const double bin = grid_bin(cfg);
  const double top = std::min(span / 4.0, f_min + span - bin - f_center);
  const auto resolved = [&](double sep) {
    return resolved_fraction(cfg, f_center, sep, options) >= options.column_fraction;
  };
  if (top <= bin || !resolved(top)) {
    report.min_resolvable_sep = std::numeric_limits<double>::infinity();
    return report;
  }
  double lo = bin;
  double hi = top;
  if (resolved(lo)) {
    hi = lo;
  } else {
    while (hi - lo > bin) {
      const double mid = 0.5 * (lo + hi);
      (resolved(mid) ? hi : lo) = mid;
    }
  }
  report.min_resolvable_sep = hi;
  report.resolved = true;
  return report;
}

GainCalibration calibrate_gain_fwhm(const ExperimentConfig& cfg, double f_center, double target_sep,
                                    const std::vector<double>& candidates,
                                    const ResolutionOptions& options) {
  if (candidates.empty()) throw InvalidArgument("calibrate_gain_fwhm: no candidates");
  GainCalibration best{0.0, std::numeric_limits<double>::infinity()};
  for (double fwhm : candidates) {
    ExperimentConfig trial = cfg;
    trial.gain.fwhm = fwhm;
    const double sep = measure_resolution(trial, f_center, options).min_resolvable_sep;
    if (std::abs(sep - target_sep) < std::abs(best.achieved - target_sep)) best = {fwhm, sep};
  }
  return best;
}

ExperimentConfig with_axis_value(const ExperimentConfig& base, ScanAxis axis, double value) {
  if (!(value > 0.0)) throw InvalidArgument("resolution scan: values must be positive");
  ExperimentConfig cfg = base;
  const double bandwidth = base.sweep.bandwidth();
  cfg.sweep.period = axis == ScanAxis::period ? value : bandwidth / value;
  cfg.sweep.chirp_rate = bandwidth / cfg.sweep.period;
  return cfg;
}

ScanResult resolution_scan(const ExperimentConfig& base, ScanAxis axis,
                           const std::vector<double>& values, double f_center,
                           const ResolutionOptions& options) {
  if (values.empty()) throw InvalidArgument("resolution scan: no points");
  ScanResult scan;
  scan.axis = axis;
  for (double v : values) {
    scan.points.push_back({v, measure_resolution(with_axis_value(base, axis, v), f_center, options)});
  }
  std::vector<ScanPoint> sorted = scan.points;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScanPoint& a, const ScanPoint& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double prev = sorted[i - 1].report.min_resolvable_sep;
    const double cur = sorted[i].report.min_resolvable_sep;
    if (axis == ScanAxis::period ? cur > prev : cur < prev) scan.monotonic = false;
  }
  return scan;
}

}  // namespace bstft
