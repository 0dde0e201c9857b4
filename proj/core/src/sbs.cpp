// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/sbs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bstft/errors.hpp"
#include "bstft/fft.hpp"
#include "bstft/parallel.hpp"

namespace bstft {
namespace {

using cplx = std::complex<double>;

// Impulse response of the gain line decays as exp(-pi * fwhm * |t|); taps
// stop where it has fallen by 80 dB.
constexpr double kTruncationNepers = 9.210340371976184;  // ln(1e4)

std::vector<cplx> design_taps(const SbsGainSpec& g, double sample_rate, double frame_offset,
                              std::size_t taps) {
  const std::size_t half = taps / 2;
  const std::size_t n_design = fft::next_pow2(4 * taps);
  std::vector<cplx> response(n_design);
  for (std::size_t k = 0; k < n_design; ++k) {
    const double bin = k < n_design / 2 ? static_cast<double>(k)
                                        : static_cast<double>(k) - static_cast<double>(n_design);
    response[k] = gain_profile(g, frame_offset + bin * sample_rate / static_cast<double>(n_design));
  }
  fft::inverse(response);
  std::vector<cplx> h(taps);
  for (std::size_t j = 0; j < taps; ++j) {
    const std::size_t idx = (j + n_design - half) % n_design;
    h[j] = response[idx] / static_cast<double>(n_design);
  }
  return h;
}

}  // namespace

std::complex<double> gain_profile(const SbsGainSpec& g, double f) {
  const double detune = f - g.center();
  switch (g.shape) {
    case GainShape::linear_lorentzian: {
      const double hw = 0.5 * g.fwhm;
      return {g.peak_gain * hw * hw / (hw * hw + detune * detune), 0.0};
    }
    case GainShape::exponential_small_signal: {
      const cplx denom{1.0, 2.0 * detune / g.fwhm};
      return std::exp(0.5 * g.peak_gain / denom);
    }
  }
  return {0.0, 0.0};
}

GainFilterLayout gain_filter_layout(const SbsGainSpec& g, double sample_rate) {
  if (!(g.fwhm > 0.0)) throw InvalidArgument("gain filter: fwhm must be positive");
  const double decay_samples = kTruncationNepers / (std::numbers::pi * g.fwhm) * sample_rate;
  const auto half = static_cast<std::size_t>(std::ceil(decay_samples));
  const std::size_t taps = 2 * half + 1;
  const auto wanted = static_cast<std::size_t>(std::ceil(64.0 * sample_rate / g.fwhm));
  return {taps, fft::next_pow2(std::max(wanted, 2 * taps))};
}

ComplexTrace apply_gain_filter(const ComplexTrace& probe, const SbsGainSpec& g) {
  const TimeGrid& grid = probe.grid();
  const double line_in_frame = g.center() - probe.frame_offset();
  if (std::abs(line_in_frame) + g.fwhm >= grid.nyquist()) {
    throw FrameError("apply_gain_filter: gain line at " + std::to_string(g.center()) +
                     " Hz is outside the probe frame");
  }

  const GainFilterLayout layout = gain_filter_layout(g, grid.sample_rate);
  const std::size_t taps = layout.taps;
  const std::size_t half = taps / 2;
  const std::size_t n_fft = layout.block_length;
  const std::size_t valid = n_fft - taps + 1;

  std::vector<cplx> kernel = design_taps(g, grid.sample_rate, probe.frame_offset(), taps);
  kernel.resize(n_fft, cplx{});
  fft::forward(kernel);

  const auto input = probe.samples();
  const std::size_t n_in = input.size();
  const std::size_t n_blocks = (n_in + half + valid - 1) / valid;
  std::vector<cplx> out(n_in);

  // Block b holds causal outputs [b*valid, (b+1)*valid); the centered output
  // index is the causal index minus half.
  parallel_for(n_blocks, [&](std::size_t b) {
    std::vector<cplx> buf(n_fft);
    const auto base = static_cast<std::ptrdiff_t>(b * valid) - static_cast<std::ptrdiff_t>(taps - 1);
    for (std::size_t j = 0; j < n_fft; ++j) {
      const std::ptrdiff_t src = base + static_cast<std::ptrdiff_t>(j);
      buf[j] = (src >= 0 && src < static_cast<std::ptrdiff_t>(n_in)) ? input[src] : cplx{};
    }
    fft::forward(buf);
    for (std::size_t j = 0; j < n_fft; ++j) buf[j] *= kernel[j];
    fft::inverse(buf);
    const double scale = 1.0 / static_cast<double>(n_fft);
    for (std::size_t j = taps - 1; j < n_fft; ++j) {
      const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(b * valid + j - (taps - 1)) -
                               static_cast<std::ptrdiff_t>(half);
      if (n >= 0 && n < static_cast<std::ptrdiff_t>(n_in)) out[n] = buf[j] * scale;
    }
  });

  return ComplexTrace(grid, std::move(out), probe.frame_offset());
}

double WindowSpectrum::at(double f) const {
  const double x = std::abs(f) / bin_width;
  const auto k = static_cast<std::size_t>(std::floor(x));
  if (k + 1 >= energy.size()) {
    return k + 1 == energy.size() && x == static_cast<double>(k) ? energy[k] : 0.0;
  }
  const double a = x - static_cast<double>(k);
  return energy[k] + a * (energy[k + 1] - energy[k]);
}

WindowSpectrum window_energy_spectrum(std::span<const double> x, double sample_rate,
                                      std::size_t oversample) {
  if (x.empty() || oversample < 1) throw InvalidArgument("window spectrum: empty window");
  std::size_t m = oversample * x.size();
  if (m % 2 != 0) m += 1;
  const std::vector<cplx> spectrum = fft::forward_real(x, m);
  const double scale = 1.0 / (sample_rate * static_cast<double>(m));
  WindowSpectrum out{sample_rate / static_cast<double>(m), std::vector<double>(m / 2 + 1)};
  for (std::size_t k = 0; k <= m / 2; ++k) {
    const double weight = (k == 0 || k == m / 2) ? 1.0 : 2.0;
    out.energy[k] = weight * std::norm(spectrum[k]) * scale;
  }
  return out;
}

WindowSpectrum lorentzian_smooth(const WindowSpectrum& s, double fwhm) {
  if (!(fwhm > 0.0)) throw InvalidArgument("lorentzian_smooth: fwhm must be positive");
  const std::size_t half = s.energy.size() - 1;
  const std::size_t m = 2 * half;
  if (m == 0) return s;

  // Two-sided symmetric spectrum; circular convolution then handles the
  // reflections at DC and Nyquist.
  std::vector<cplx> spectrum(m);
  for (std::size_t k = 0; k <= half; ++k) {
    const double weight = (k == 0 || k == half) ? 1.0 : 2.0;
    spectrum[k] = s.energy[k] / weight;
    if (k > 0 && k < half) spectrum[m - k] = spectrum[k];
  }

  std::vector<cplx> kernel(m);
  double total = 0.0;
  const double hw = 0.5 * fwhm;
  for (std::size_t k = 0; k < m; ++k) {
    const double bin = k <= half ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(m);
    const double df = bin * s.bin_width;
    const double w = hw * hw / (hw * hw + df * df);
    kernel[k] = w;
    total += w;
  }

  fft::forward(spectrum);
  fft::forward(kernel);
  for (std::size_t k = 0; k < m; ++k) spectrum[k] *= kernel[k];
  fft::inverse(spectrum);

  const double scale = 1.0 / (total * static_cast<double>(m));
  WindowSpectrum out{s.bin_width, std::vector<double>(half + 1)};
  for (std::size_t k = 0; k <= half; ++k) {
    const double weight = (k == 0 || k == half) ? 1.0 : 2.0;
    out.energy[k] = std::max(0.0, weight * spectrum[k].real() * scale);
  }
  return out;
}

RealTrace analytic_window_response(const RealTrace& windowed_drive, const SweepPlan& plan,
                                   const SbsGainSpec& g, FidelityMode mode, double output_rate) {
  if (mode == FidelityMode::full_field) {
    throw InvalidArgument("analytic_window_response: full_field has no analytic form");
  }
  if (!(output_rate > 0.0)) throw InvalidArgument("analytic_window_response: bad output rate");
  const TimeGrid& grid = windowed_drive.grid();
  if (std::abs(grid.duration() - plan.period) > 0.5 / grid.sample_rate) {
    throw InvalidArgument("analytic_window_response: window duration must equal the sweep period");
  }

  WindowSpectrum spectrum = window_energy_spectrum(windowed_drive.samples(), grid.sample_rate);
  if (mode == FidelityMode::lorentzian_analytic) spectrum = lorentzian_smooth(spectrum, g.fwhm);

  const double f_min = analysis_start(plan, g.center());
  const auto n_out = static_cast<std::size_t>(std::llround(plan.period * output_rate));
  std::vector<double> out(n_out);
  for (std::size_t n = 0; n < n_out; ++n) {
    out[n] = spectrum.at(f_min + plan.chirp_rate * static_cast<double>(n) / output_rate);
  }
  return RealTrace(TimeGrid{output_rate, n_out, grid.t0}, std::move(out));
}

}  // namespace bstft
