// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/spectrogram.hpp"

#include <algorithm>
#include <cmath>

#include "bstft/errors.hpp"

namespace bstft {
namespace {

bool is_local_max(const std::vector<double>& p, std::size_t k) {
  if (!(p[k] > 0.0)) return false;
  const bool left = k == 0 || p[k] > p[k - 1];
  const bool right = k + 1 == p.size() || p[k] >= p[k + 1];
  return left && right;
}

double refine(const std::vector<double>& f, const std::vector<double>& p, std::size_t k) {
  if (k == 0 || k + 1 >= p.size()) return f[k];
  const double denom = p[k - 1] - 2.0 * p[k] + p[k + 1];
  if (denom >= 0.0) return f[k];
  const double delta = std::clamp(0.5 * (p[k - 1] - p[k + 1]) / denom, -0.5, 0.5);
  return f[k] + delta * (f[k + 1] - f[k]);
}

std::size_t nearest_bin(const std::vector<double>& grid, double f) {
  const auto it = std::lower_bound(grid.begin(), grid.end(), f);
  if (it == grid.begin()) return 0;
  if (it == grid.end()) return grid.size() - 1;
  const auto k = static_cast<std::size_t>(it - grid.begin());
  return (f - grid[k - 1] <= grid[k] - f) ? k - 1 : k;
}

// Strongest local maximum with a bin index in [lo, hi]; npos when none.
std::size_t strongest_max(const std::vector<double>& p, std::size_t lo, std::size_t hi) {
  std::size_t best = static_cast<std::size_t>(-1);
  for (std::size_t k = lo; k <= hi && k < p.size(); ++k) {
    if (is_local_max(p, k) && (best == static_cast<std::size_t>(-1) || p[k] > p[best])) best = k;
  }
  return best;
}

}  // namespace

std::vector<std::size_t> Spectrogram::uncalibrated_windows() const {
  std::vector<std::size_t> out;
  for (const auto& c : columns) {
    if (!c.reference_found) out.push_back(c.window_index);
  }
  return out;
}

double Spectrogram::max_power() const {
  double m = 0.0;
  for (const auto& c : columns) {
    for (double v : c.power) m = std::max(m, v);
  }
  return m;
}

Spectrogram assemble(std::vector<SpectrumColumn> columns, double period) {
  if (columns.empty()) throw InvalidArgument("assemble: no columns");
  if (!(period > 0.0)) throw InvalidArgument("assemble: period must be positive");
  const std::vector<double>& grid = columns.front().freq_grid;
  if (grid.size() < 2) throw InvalidArgument("assemble: frequency grid needs two points");
  const double tol = 1e-9 * std::max(std::abs(grid.front()), std::abs(grid.back()));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto& c = columns[i];
    if (c.freq_grid.size() != grid.size() || c.power.size() != grid.size()) {
      throw InvalidArgument("assemble: column " + std::to_string(i) + " has a different grid");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (std::abs(c.freq_grid[k] - grid[k]) > tol) {
        throw InvalidArgument("assemble: column " + std::to_string(i) + " has a different grid");
      }
    }
    if (i > 0) {
      const double step = c.t_center - columns[i - 1].t_center;
      if (!(step > 0.0)) throw InvalidArgument("assemble: columns out of time order");
      const double periods = step / period;
      if (std::abs(periods - std::round(periods)) > 0.01) {
        throw InvalidArgument("assemble: column spacing is not a multiple of the period");
      }
    }
  }
  Spectrogram spec;
  spec.freq_grid = grid;
  spec.period = period;
  spec.columns = std::move(columns);
  return spec;
}

std::vector<Peak> column_peaks(const std::vector<double>& freq_grid,
                               const std::vector<double>& power, std::size_t n_peaks,
                               double min_power) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < power.size(); ++k) {
    if (power[k] >= min_power && is_local_max(power, k)) idx.push_back(k);
  }
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return power[a] > power[b]; });
  if (idx.size() > n_peaks) idx.resize(n_peaks);
  std::vector<Peak> peaks;
  peaks.reserve(idx.size());
  for (std::size_t k : idx) peaks.push_back({refine(freq_grid, power, k), power[k]});
  return peaks;
}

std::vector<std::vector<double>> extract_ridge(const Spectrogram& spec, std::size_t n_peaks,
                                               double rel_threshold) {
  if (n_peaks < 1) throw InvalidArgument("extract_ridge: n_peaks must be >= 1");
  const double gmax = spec.max_power();
  std::vector<std::vector<double>> ridge(spec.columns.size());
  if (!(gmax > 0.0)) return ridge;
  for (std::size_t i = 0; i < spec.columns.size(); ++i) {
    for (const Peak& p : column_peaks(spec.freq_grid, spec.columns[i].power, n_peaks,
                                      rel_threshold * gmax)) {
      ridge[i].push_back(p.frequency);
    }
  }
  return ridge;
}

bool two_tone_resolved(const SpectrumColumn& column, double f_a, double f_b,
                       double search_halfwidth, double dip_db) {
  const auto& grid = column.freq_grid;
  const auto& p = column.power;
  if (f_a == f_b) throw InvalidArgument("two_tone_resolved: tones must differ");
  if (grid.size() < 3) throw InvalidArgument("two_tone_resolved: grid too small");
  for (double f : {f_a, f_b}) {
    if (f < grid.front() || f > grid.back()) {
      throw InvalidArgument("two_tone_resolved: tone outside the frequency grid");
    }
  }
  if (f_a > f_b) std::swap(f_a, f_b);

  const auto window = [&](double f) {
    return std::pair{nearest_bin(grid, f - search_halfwidth), nearest_bin(grid, f + search_halfwidth)};
  };
  const auto [a_lo, a_hi] = window(f_a);
  const auto [b_lo, b_hi] = window(f_b);
  const std::size_t none = static_cast<std::size_t>(-1);
  const std::size_t ka = strongest_max(p, a_lo, a_hi);
  const std::size_t kb = strongest_max(p, b_lo, b_hi);
  if (ka == none || kb == none || ka >= kb) return false;

  const double valley = *std::min_element(p.begin() + static_cast<std::ptrdiff_t>(ka),
                                          p.begin() + static_cast<std::ptrdiff_t>(kb) + 1);
  const double lower = std::min(p[ka], p[kb]);
  return valley <= lower * std::pow(10.0, -dip_db / 10.0);
}

double pulse_fwhm(const RealTrace& window, double around) {
  const auto x = window.samples();
  const double rate = window.grid().sample_rate;
  if (x.size() < 3) throw MeasurementFailed("pulse_fwhm: trace too short");
  const double pos = std::clamp(around * rate, 0.0, static_cast<double>(x.size() - 1));
  std::size_t p = static_cast<std::size_t>(std::llround(pos));
  // Climb to the local maximum, then widen over any flat top.
  while (true) {
    if (p + 1 < x.size() && x[p + 1] > x[p]) {
      ++p;
    } else if (p > 0 && x[p - 1] > x[p]) {
      --p;
    } else {
      break;
    }
  }
  const double peak = x[p];
  if (!(peak > 0.0)) throw MeasurementFailed("pulse_fwhm: no pulse near the requested time");
  const double half = 0.5 * peak;

  std::size_t l = p;
  while (l > 0 && x[l - 1] > half) --l;
  std::size_t r = p;
  while (r + 1 < x.size() && x[r + 1] > half) ++r;
  if (l == 0 || r + 1 == x.size()) {
    throw MeasurementFailed("pulse_fwhm: half-maximum crossing outside the trace");
  }
  const double left = static_cast<double>(l - 1) + (half - x[l - 1]) / (x[l] - x[l - 1]);
  const double right = static_cast<double>(r) + (x[r] - half) / (x[r] - x[r + 1]);
  return (right - left) / rate;
}

}  // namespace bstft
