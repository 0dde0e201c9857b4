// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <tuple>

#include "bstft/errors.hpp"
#include "bstft/fft.hpp"
#include "bstft/parallel.hpp"

namespace bstft {
namespace {

using cplx = std::complex<double>;

constexpr std::size_t kMaxDenseSize = std::size_t{1} << 24;

// Two-sided |DFT|^2 of x zero-padded to m points.
std::vector<double> padded_power(std::span<const double> x, std::size_t m) {
  std::vector<cplx> buf(m);
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
  fft::forward(buf);
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = std::norm(buf[k]);
  return out;
}

double interpolate(const std::vector<double>& grid, const std::vector<double>& values, double f) {
  if (f < grid.front() || f > grid.back()) return 0.0;
  const double step = grid[1] - grid[0];
  const double pos = (f - grid.front()) / step;
  const auto k = std::min(static_cast<std::size_t>(pos), grid.size() - 2);
  const double a = pos - static_cast<double>(k);
  return values[k] + a * (values[k + 1] - values[k]);
}

}  // namespace

Spectrogram digital_stft(const RealTrace& s, const DigitalStftSpec& spec) {
  if (!(spec.window_len > 0.0)) throw InvalidArgument("digital_stft: window_len must be positive");
  const double hop_s = spec.hop > 0.0 ? spec.hop : spec.window_len;
  if (spec.oversample < 1) throw InvalidArgument("digital_stft: oversample must be >= 1");
  const TimeGrid& grid = s.grid();
  const double fs = grid.sample_rate;
  const auto n = static_cast<std::size_t>(std::llround(spec.window_len * fs));
  if (n < 1) throw InvalidArgument("digital_stft: window shorter than one sample");
  const double first_x = std::ceil((spec.t_start - grid.t0) * fs - 1e-9);
  if (first_x < 0.0) throw InvalidArgument("digital_stft: t_start precedes the record");
  const auto first = static_cast<std::size_t>(first_x);

  std::vector<std::size_t> starts;
  for (std::size_t w = 0;; ++w) {
    const std::size_t start =
        first + static_cast<std::size_t>(std::llround(static_cast<double>(w) * hop_s * fs));
    if (start + n > s.size()) break;
    starts.push_back(start);
  }
  if (starts.empty()) throw InvalidArgument("digital_stft: record shorter than one window");

  std::size_t m = spec.oversample * n;
  if (m % 2 != 0) m += 1;
  const std::size_t half = m / 2;
  std::vector<double> freq(half + 1);
  for (std::size_t k = 0; k <= half; ++k) freq[k] = static_cast<double>(k) * fs / static_cast<double>(m);

  std::vector<SpectrumColumn> columns(starts.size());
  const auto samples = s.samples();
  parallel_for(starts.size(), [&](std::size_t w) {
    const std::vector<double> two_sided = padded_power(samples.subspan(starts[w], n), m);
    SpectrumColumn& col = columns[w];
    col.window_index = w;
    col.t_center = grid.time(starts[w]) + 0.5 * spec.window_len;
    col.freq_grid = freq;
    col.power.resize(half + 1);
    col.reference_found = true;
    const double scale = 1.0 / (fs * static_cast<double>(m));
    for (std::size_t k = 0; k <= half; ++k) {
      const double mirrored = (k == 0 || k == half) ? 0.0 : two_sided[m - k];
      col.power[k] = (two_sided[k] + mirrored) * scale;
    }
  });
  return assemble(std::move(columns), hop_s);
}

SmoothedSpectrum::SmoothedSpectrum(double bin_width, std::vector<double> density)
    : bin_width_(bin_width), density_(std::move(density)) {}

double SmoothedSpectrum::operator()(double f) const {
  const double x = std::abs(f) / bin_width_;
  const auto k = static_cast<std::size_t>(x);
  if (k + 1 >= density_.size()) return k + 1 == density_.size() ? density_.back() : 0.0;
  const double a = x - static_cast<double>(k);
  return density_[k] + a * (density_[k + 1] - density_[k]);
}

SmoothedSpectrum smoothed_power_spectrum(const RealTrace& windowed_m, const SbsGainSpec& g) {
  if (!(g.fwhm > 0.0)) throw InvalidArgument("smoothed_power_spectrum: fwhm must be positive");
  const double fs = windowed_m.grid().sample_rate;
  const std::size_t n = windowed_m.size();
  const double wanted = fs / (g.fwhm / 20.0);
  if (wanted > static_cast<double>(kMaxDenseSize)) {
    throw InvalidArgument("smoothed_power_spectrum: dense grid too large for this linewidth");
  }
  const std::size_t m =
      fft::next_pow2(std::max<std::size_t>(2 * n, static_cast<std::size_t>(std::ceil(wanted))));
  const double df = fs / static_cast<double>(m);

  // Two-sided energy density on the dense grid.
  std::vector<double> power = padded_power(windowed_m.samples(), m);
  std::vector<cplx> density(m);
  for (std::size_t k = 0; k < m; ++k) density[k] = power[k] / (fs * static_cast<double>(m) * df);

  const double hw = 0.5 * g.fwhm;
  std::vector<cplx> kernel(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double bin = k <= m / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(m);
    const double f = bin * df;
    kernel[k] = hw / std::numbers::pi / (hw * hw + f * f) * df;
  }
  fft::forward(density);
  fft::forward(kernel);
  for (std::size_t k = 0; k < m; ++k) density[k] *= kernel[k];
  fft::inverse(density);

  // One-sided view: positive and negative halves fold together.
  std::vector<double> out(m / 2 + 1);
  for (std::size_t k = 0; k <= m / 2; ++k) {
    const double pos = density[k].real() / static_cast<double>(m);
    const double neg = (k == 0 || k == m / 2) ? 0.0 : density[m - k].real() / static_cast<double>(m);
    out[k] = std::max(0.0, pos + neg);
  }
  return SmoothedSpectrum(df, std::move(out));
}

Spectrogram fttm_resample(const Spectrogram& stft, const SweepPlan& plan,
                          const ReferenceSpec& ref, const SbsGainSpec& g,
                          const ReceiverSpec& rx) {
  const double rate = rx.osc_sample_rate;
  const auto n_out = static_cast<std::size_t>(std::llround(plan.period * rate));
  const double f_min = analysis_start(plan, g.center());
  std::vector<SpectrumColumn> columns(stft.n_columns());
  parallel_for(stft.n_columns(), [&](std::size_t w) {
    const SpectrumColumn& src = stft.columns[w];
    std::vector<double> current(n_out);
    for (std::size_t i = 0; i < n_out; ++i) {
      const double f = f_min + plan.chirp_rate * static_cast<double>(i) / rate;
      current[i] = interpolate(src.freq_grid, src.power, std::abs(f));
    }
    const RealTrace window(TimeGrid{rate, n_out, src.t_center - 0.5 * plan.period},
                           std::move(current));
    const ReferenceFix fix = locate_reference(window, plan, ref, g, rx.reference_threshold);
    columns[w] = decode_window(window, plan, ref, g, rx.n_bins, src.window_index, fix,
                               rx.reference_fallback);
  });
  return assemble(std::move(columns), plan.period);
}

std::vector<Peak> lobe_peaks(const std::vector<double>& freq_grid, const std::vector<double>& power,
                             const CompareOptions& options, double global_max) {
  std::vector<Peak> peaks;
  const auto in_band = [&](std::size_t k) {
    return !(options.band_low && freq_grid[k] < *options.band_low) &&
           !(options.band_high && freq_grid[k] > *options.band_high);
  };
  double col_max = 0.0;
  for (std::size_t k = 0; k < power.size(); ++k) {
    if (in_band(k)) col_max = std::max(col_max, power[k]);
  }
  if (!(col_max > 0.0) || col_max < options.silence_threshold * global_max) return peaks;
  const double level = options.lobe_threshold * col_max;

  std::size_t k = 0;
  while (k < power.size()) {
    if (!in_band(k) || power[k] < level) {
      ++k;
      continue;
    }
    double weight = 0.0;
    double moment = 0.0;
    std::size_t top = k;
    const std::size_t first = k;
    for (; k < power.size() && in_band(k) && power[k] >= level; ++k) {
      weight += power[k];
      moment += power[k] * freq_grid[k];
      if (power[k] > power[top]) top = k;
    }
    // Lobes running past the band edge have no reliable centroid.
    const bool cut_low = first > 0 && !in_band(first - 1) && power[first - 1] >= level;
    const bool cut_high = k < power.size() && !in_band(k) && power[k] >= level;
    if (!cut_low && !cut_high) peaks.push_back({moment / weight, power[top]});
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.power > b.power; });
  std::vector<Peak> kept;
  for (const Peak& p : peaks) {
    const bool near_stronger = std::any_of(kept.begin(), kept.end(), [&](const Peak& q) {
      return std::abs(q.frequency - p.frequency) < options.merge_distance;
    });
    if (!near_stronger) kept.push_back(p);
    if (kept.size() == options.top_k) break;
  }
  return kept;
}

double band_max(const Spectrogram& s, const CompareOptions& options) {
  double m = 0.0;
  for (const auto& c : s.columns) {
    for (std::size_t k = 0; k < c.power.size(); ++k) {
      const double f = s.freq_grid[k];
      if ((options.band_low && f < *options.band_low) || (options.band_high && f > *options.band_high)) {
        continue;
      }
      m = std::max(m, c.power[k]);
    }
  }
  return m;
}

CompareReport compare_spectrograms(const Spectrogram& a, const Spectrogram& b, double freq_tol,
                                   const CompareOptions& options) {
  if (a.n_columns() != b.n_columns()) {
    throw InvalidArgument("compare_spectrograms: column counts differ");
  }
  // Lobes are found in the band widened by the tolerance so a peak just
  // inside an edge can still meet its partner just outside it.
  CompareOptions detect = options;
  detect.merge_distance = std::max(options.merge_distance, 2.0 * freq_tol);
  if (detect.band_low) *detect.band_low -= freq_tol;
  if (detect.band_high) *detect.band_high += freq_tol;
  const auto core = [&](const Peak& p) {
    return !(options.band_low && p.frequency < *options.band_low) &&
           !(options.band_high && p.frequency > *options.band_high);
  };

  const double max_a = band_max(a, detect);
  const double max_b = band_max(b, detect);
  CompareReport report;
  std::size_t denominator = 0;
  for (std::size_t c = 0; c < a.n_columns(); ++c) {
    const auto pa = lobe_peaks(a.freq_grid, a.columns[c].power, detect, max_a);
    const auto pb = lobe_peaks(b.freq_grid, b.columns[c].power, detect, max_b);
    const auto na = static_cast<std::size_t>(std::count_if(pa.begin(), pa.end(), core));
    const auto nb = static_cast<std::size_t>(std::count_if(pb.begin(), pb.end(), core));
    report.peaks_a += na;
    report.peaks_b += nb;
    const std::size_t column_total = std::max(na, nb);
    denominator += column_total;

    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = 0; j < pb.size(); ++j) {
        const double d = std::abs(pa[i].frequency - pb[j].frequency);
        if (d <= freq_tol) pairs.emplace_back(d, i, j);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> used_a(pa.size(), false);
    std::vector<bool> used_b(pb.size(), false);
    std::size_t column_matched = 0;
    for (const auto& [d, i, j] : pairs) {
      if (used_a[i] || used_b[j]) continue;
      used_a[i] = used_b[j] = true;
      if (!core(pa[i]) && !core(pb[j])) continue;
      ++column_matched;
      report.max_ridge_deviation = std::max(report.max_ridge_deviation, d);
    }
    report.matched += std::min(column_matched, column_total);
  }
  report.matched_peak_fraction =
      denominator == 0 ? 1.0 : static_cast<double>(report.matched) / static_cast<double>(denominator);
  return report;
}

}  // namespace bstft
