// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bstft/errors.hpp"
#include "bstft/parallel.hpp"

namespace bstft {
namespace {

std::size_t decimation_factor(double field_rate, double osc_rate) {
  const double ratio = field_rate / osc_rate;
  const auto d = static_cast<std::size_t>(std::llround(ratio));
  if (d < 1 || std::abs(ratio - static_cast<double>(d)) > 1e-9 * ratio) {
    throw InvalidArgument("receiver: field sample rate must be an integer multiple of the "
                          "oscilloscope rate");
  }
  return d;
}

// Blackman-windowed sinc, unit DC gain.
std::vector<double> lowpass_taps(double cutoff, double sample_rate) {
  const auto half = static_cast<std::size_t>(std::ceil(5.5 * sample_rate / cutoff));
  const std::size_t n = 2 * half + 1;
  const double fc = cutoff / sample_rate;
  std::vector<double> h(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = static_cast<double>(i) - static_cast<double>(half);
    const double x = 2.0 * std::numbers::pi * fc * m;
    const double sinc = m == 0.0 ? 1.0 : std::sin(x) / x;
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1);
    const double window = 0.42 - 0.5 * std::cos(phase) + 0.08 * std::cos(2.0 * phase);
    h[i] = sinc * window;
    sum += h[i];
  }
  for (auto& v : h) v /= sum;
  return h;
}

}  // namespace

void validate_receiver(const ReceiverSpec& rx, double field_rate) {
  if (!(rx.pd_bandwidth > 0.0) || !(rx.osc_sample_rate > 0.0)) {
    throw InvalidArgument("receiver: bandwidth and sample rate must be positive");
  }
  if (rx.pd_bandwidth > 0.5 * rx.osc_sample_rate || rx.osc_sample_rate > field_rate) {
    throw InvalidArgument("receiver: need pd_bandwidth <= osc_rate/2 <= field_rate/2");
  }
  if (rx.noise_sigma < 0.0) throw InvalidArgument("receiver: noise_sigma must be >= 0");
  if (rx.n_bins < 2) throw InvalidArgument("receiver: need at least two frequency bins");
  decimation_factor(field_rate, rx.osc_sample_rate);
}

RealTrace photodetect(const ComplexTrace& field, const ReceiverSpec& rx) {
  const TimeGrid& grid = field.grid();
  const std::size_t d = decimation_factor(grid.sample_rate, rx.osc_sample_rate);

  std::vector<double> power(field.size());
  for (std::size_t i = 0; i < power.size(); ++i) power[i] = std::norm(field[i]);

  const std::size_t n_out = (power.size() + d - 1) / d;
  std::vector<double> out(n_out);
  if (rx.pd_bandwidth >= grid.nyquist()) {
    for (std::size_t m = 0; m < n_out; ++m) out[m] = power[m * d];
  } else {
    const std::vector<double> h = lowpass_taps(rx.pd_bandwidth, grid.sample_rate);
    const auto half = static_cast<std::ptrdiff_t>(h.size() / 2);
    const auto n_in = static_cast<std::ptrdiff_t>(power.size());
    constexpr std::size_t kChunk = 4096;
    parallel_for((n_out + kChunk - 1) / kChunk, [&](std::size_t c) {
      const std::size_t end = std::min(n_out, (c + 1) * kChunk);
      for (std::size_t m = c * kChunk; m < end; ++m) {
        const auto center = static_cast<std::ptrdiff_t>(m * d);
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, center - half);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n_in - 1, center + half);
        double acc = 0.0;
        for (std::ptrdiff_t k = lo; k <= hi; ++k) acc += h[k - center + half] * power[k];
        out[m] = acc;
      }
    });
  }
  RealTrace current(TimeGrid{rx.osc_sample_rate, n_out, grid.t0}, std::move(out));
  return rx.noise_sigma > 0.0 ? add_receiver_noise(current, rx.noise_sigma, rx.seed) : current;
}

RealTrace add_receiver_noise(const RealTrace& current, double sigma, std::uint64_t seed) {
  std::vector<double> out(current.samples().begin(), current.samples().end());
  if (sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (auto& v : out) v += noise(rng);
  }
  return RealTrace(current.grid(), std::move(out));
}

std::vector<RealTrace> segment_periods(const RealTrace& current, const SweepPlan& plan,
                                       double t_start) {
  const TimeGrid& grid = current.grid();
  const double per_period = plan.period * grid.sample_rate;
  const auto n_period = static_cast<std::size_t>(std::llround(per_period));
  if (n_period < 1) throw InvalidArgument("segment_periods: period shorter than one sample");
  const double first_x = std::ceil((t_start - grid.t0) * grid.sample_rate - 1e-9);
  if (first_x < 0.0) throw InvalidArgument("segment_periods: t_start precedes the record");
  const auto first = static_cast<std::size_t>(first_x);

  std::vector<RealTrace> windows;
  const auto samples = current.samples();
  for (std::size_t w = 0;; ++w) {
    const std::size_t start =
        first + static_cast<std::size_t>(std::llround(static_cast<double>(w) * per_period));
    if (start + n_period > samples.size()) break;
    std::vector<double> slice(samples.begin() + static_cast<std::ptrdiff_t>(start),
                              samples.begin() + static_cast<std::ptrdiff_t>(start + n_period));
    windows.emplace_back(TimeGrid{grid.sample_rate, n_period, grid.time(start)}, std::move(slice));
  }
  if (windows.empty()) throw InvalidArgument("segment_periods: record shorter than one period");
  return windows;
}

double nominal_reference_time(const SweepPlan& plan, const ReferenceSpec& ref,
                              const SbsGainSpec& g) {
  return (ref.frequency - analysis_start(plan, g.center())) / plan.chirp_rate;
}

ReferenceFix locate_reference(const RealTrace& window, const SweepPlan& plan,
                              const ReferenceSpec& ref, const SbsGainSpec& g, double threshold) {
  const auto x = window.samples();
  const double rate = window.grid().sample_rate;
  const ReferenceFix fallback{nominal_reference_time(plan, ref, g), false, false};

  const auto guard = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(ref.guard_fraction * plan.period * rate)), 1, x.size());
  const double global_max = *std::max_element(x.begin(), x.end());
  const auto peak_it = std::max_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(guard));
  const double peak = *peak_it;
  if (!(peak > 0.0) || peak < threshold * global_max) return fallback;

  const auto p = static_cast<std::size_t>(peak_it - x.begin());
  const double half = 0.5 * peak;
  std::size_t lo = p;
  while (lo > 0 && x[lo - 1] >= half) --lo;
  std::size_t hi = p;
  while (hi + 1 < x.size() && x[hi + 1] >= half) ++hi;

  if (lo == 0 && p > 0 && p + 1 < x.size()) {
    // Pulse cut by the window start: its centroid is biased late, the
    // interpolated maximum is not.
    const double denom = x[p - 1] - 2.0 * x[p] + x[p + 1];
    const double delta = denom != 0.0 ? 0.5 * (x[p - 1] - x[p + 1]) / denom : 0.0;
    return {(static_cast<double>(p) + delta) / rate, true, true};
  }

  double weight = 0.0;
  double moment = 0.0;
  for (std::size_t n = lo; n <= hi; ++n) {
    weight += x[n];
    moment += static_cast<double>(n) * x[n];
  }
  return {moment / weight / rate, true, lo == 0};
}

double fttm_map(const SweepPlan& plan, const ReferenceSpec& ref, double t_local, double t_ref) {
  return ref.frequency + plan.chirp_rate * (t_local - t_ref);
}

std::vector<double> analysis_grid(const SweepPlan& plan, const SbsGainSpec& g, std::size_t n_bins) {
  if (n_bins < 2) throw InvalidArgument("analysis_grid: need at least two bins");
  const double f_min = analysis_start(plan, g.center());
  const double span = plan.chirp_rate * plan.period;
  std::vector<double> grid(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    grid[k] = f_min + span * static_cast<double>(k) / static_cast<double>(n_bins - 1);
  }
  return grid;
}

SpectrumColumn decode_window(const RealTrace& window, const SweepPlan& plan,
                             const ReferenceSpec& ref, const SbsGainSpec& g, std::size_t n_bins,
                             std::size_t window_index, const ReferenceFix& fix,
                             bool reference_fallback) {
  const auto x = window.samples();
  const double rate = window.grid().sample_rate;

  SpectrumColumn col;
  col.window_index = window_index;
  col.t_center = window.grid().t0 + 0.5 * plan.period;
  col.freq_grid = analysis_grid(plan, g, n_bins);
  col.power.assign(n_bins, 0.0);
  col.t_ref_found = fix.t_ref;
  col.reference_found = fix.found;

  const auto peak = std::max_element(x.begin(), x.end());
  if (*peak > 0.0) {
    const auto p = static_cast<std::size_t>(peak - x.begin());
    col.edge_split = p < 2 || p + 3 > x.size();
  }
  if (!fix.found && !reference_fallback) return col;

  const double f0 = fttm_map(plan, ref, 0.0, fix.t_ref);
  const double step = plan.chirp_rate / rate;
  for (std::size_t k = 0; k < n_bins; ++k) {
    const double pos = (col.freq_grid[k] - f0) / step;
    if (pos < 0.0 || pos > static_cast<double>(x.size() - 1)) continue;
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double a = pos - static_cast<double>(i);
    const double v = i + 1 < x.size() ? x[i] + a * (x[i + 1] - x[i]) : x[i];
    col.power[k] = std::max(0.0, v);
  }
  return col;
}

SpectrumColumn decode_window(const RealTrace& window, const SweepPlan& plan,
                             const ReferenceSpec& ref, const SbsGainSpec& g, std::size_t n_bins,
                             std::size_t window_index) {
  const ReferenceFix fix = locate_reference(window, plan, ref, g);
  return decode_window(window, plan, ref, g, n_bins, window_index, fix);
}

}  // namespace bstft
