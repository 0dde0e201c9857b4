// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/presets.hpp"

#include <cmath>

#include "bstft/errors.hpp"

namespace bstft {
namespace {

constexpr double kUs = 1e-6;
constexpr double kGHz = 1e9;
constexpr double kMHz = 1e6;

ExperimentConfig base(const std::string& name, double f2, double period, std::size_t n_periods) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.sweep.f1 = 10.8 * kGHz;
  cfg.sweep.f2 = f2;
  cfg.sweep.period = period;
  cfg.sweep.n_periods = n_periods;
  cfg.sweep.chirp_rate = (cfg.sweep.f2 - cfg.sweep.f1) / period;
  cfg.gain.brillouin_shift = 10.8 * kGHz;
  cfg.gain.fwhm = kCalibratedGainFwhm;
  cfg.output.dir = "out/" + name;
  return cfg;
}

Lfm lfm(double f_start, double f_stop, double t_start, double duration) {
  Lfm l;
  l.f_start = f_start;
  l.f_stop = f_stop;
  l.t_start = t_start;
  l.duration = duration;
  return l;
}

// The 10 MHz start of these chirps shares the reference guard band.
ExperimentConfig lfm_preset(const std::string& name, double f2, double period, double duration) {
  ExperimentConfig cfg =
      base(name, f2, period, static_cast<std::size_t>(std::llround(duration / period)));
  cfg.sut.variant = lfm(10 * kMHz, 4 * kGHz, 0.0, duration);
  cfg.receiver.calibration = CalibrationMode::calibration_pass;
  return cfg;
}

ExperimentConfig two_tone(const std::string& name, double f_b, double period) {
  ExperimentConfig cfg = base(name, 14.8 * kGHz, period,
                              static_cast<std::size_t>(std::llround(80 * kUs / period)));
  cfg.sut.variant = Multitone{{{2.0 * kGHz, 1.0, 0.0}, {f_b, 1.0, 0.0}}, {}};
  return cfg;
}

SutDescriptor gated_tone(double f, double t0, double t1) {
  return SutDescriptor{Tone{{f, 1.0, 0.0}, {t0 * kUs, t1 * kUs}}};
}

// Broadband stroke spanning the letter height for a short time.
SutDescriptor vertical_bar(double t0, double t1, double f_lo, double f_hi) {
  Multitone m;
  for (double f = f_lo; f <= f_hi + 1.0; f += 100 * kMHz) m.tones.push_back({f, 1.0, 0.0});
  m.gate = {t0 * kUs, t1 * kUs};
  return SutDescriptor{m};
}

SutDescriptor ecnu() {
  const double lo = 0.5 * kGHz;
  const double mid = 2.0 * kGHz;
  const double hi = 3.5 * kGHz;
  Sum s;
  // E
  s.components.push_back(vertical_bar(20, 30, lo, hi));
  s.components.push_back(gated_tone(hi, 20, 120));
  s.components.push_back(gated_tone(mid, 20, 100));
  s.components.push_back(gated_tone(lo, 20, 120));
  // C
  s.components.push_back(vertical_bar(160, 170, lo, hi));
  s.components.push_back(gated_tone(hi, 160, 260));
  s.components.push_back(gated_tone(lo, 160, 260));
  // N
  s.components.push_back(vertical_bar(300, 310, lo, hi));
  s.components.push_back(SutDescriptor{lfm(hi, lo, 300 * kUs, 100 * kUs)});
  s.components.push_back(vertical_bar(390, 400, lo, hi));
  // U
  s.components.push_back(vertical_bar(440, 450, lo, hi));
  s.components.push_back(gated_tone(lo, 440, 540));
  s.components.push_back(vertical_bar(530, 540, lo, hi));
  return SutDescriptor{s};
}

ExperimentConfig make(const std::string& name) {
  if (name == "fig3a") return lfm_preset(name, 14.8 * kGHz, 2 * kUs, 200 * kUs);
  if (name == "fig3b") return lfm_preset(name, 22.8 * kGHz, 2 * kUs, 200 * kUs);
  if (name == "fig3c") {
    ExperimentConfig cfg = lfm_preset(name, 22.8 * kGHz, 2 * kUs, 200 * kUs);
    MixedWithLo m;
    m.base = std::make_shared<const SutDescriptor>(SutDescriptor{lfm(10 * kMHz, 4 * kGHz, 0.0, 200 * kUs)});
    m.f_lo = 8 * kGHz;
    cfg.sut.variant = m;
    cfg.receiver.calibration = CalibrationMode::inline_reference;
    return cfg;
  }
  if (name == "fig4a") return lfm_preset(name, 14.8 * kGHz, 4 * kUs, 200 * kUs);
  if (name == "fig4b") return lfm_preset(name, 14.8 * kGHz, 2 * kUs, 200 * kUs);
  if (name == "fig4c") return lfm_preset(name, 14.8 * kGHz, 0.5 * kUs, 200 * kUs);
  if (name == "fig5a") return lfm_preset(name, 14.8 * kGHz, 4 * kUs, 40 * kUs);
  if (name == "fig5b") return lfm_preset(name, 14.8 * kGHz, 4 * kUs, 400 * kUs);
  if (name == "fig6a") return two_tone(name, 2.060 * kGHz, 4 * kUs);
  if (name == "fig6b") return two_tone(name, 2.085 * kGHz, 3 * kUs);
  if (name == "fig6c") return two_tone(name, 2.100 * kGHz, 2.5 * kUs);
  if (name == "fig6d") return two_tone(name, 2.116 * kGHz, 2 * kUs);
  if (name == "fig7") return two_tone(name, 2.060 * kGHz, 4 * kUs);
  if (name == "fig8a") {
    ExperimentConfig cfg = base(name, 14.8 * kGHz, 1 * kUs, 40);
    MixedWithLo m;
    m.base = std::make_shared<const SutDescriptor>(SutDescriptor{lfm(10 * kMHz, 2 * kGHz, 0.0, 40 * kUs)});
    m.f_lo = 2 * kGHz;
    cfg.sut.variant = m;
    cfg.receiver.calibration = CalibrationMode::calibration_pass;
    return cfg;
  }
  if (name == "fig8b") {
    ExperimentConfig cfg = base(name, 14.8 * kGHz, 1 * kUs, 40);
    NlfmProfile p;
    constexpr int kKnots = 41;
    const double steep = 3.0;
    for (int i = 0; i < kKnots; ++i) {
      const double u = static_cast<double>(i) / (kKnots - 1);
      p.times.push_back(40 * kUs * u);
      p.frequencies.push_back(2.005 * kGHz +
                              1.995 * kGHz * std::tanh(steep * (2.0 * u - 1.0)) / std::tanh(steep));
    }
    cfg.sut.variant = p;
    cfg.receiver.calibration = CalibrationMode::calibration_pass;
    cfg.fidelity = FidelityMode::lorentzian_analytic;
    return cfg;
  }
  if (name == "fig8c") {
    ExperimentConfig cfg = base(name, 14.8 * kGHz, 1 * kUs, 40);
    const double hops[] = {1.2, 3.1, 0.6, 2.4, 3.7, 1.8, 0.9, 2.9, 1.5, 3.4};
    FreqHop fh;
    for (int i = 0; i < 10; ++i) {
      fh.table.segments.push_back({4.0 * i * kUs, 4.0 * (i + 1) * kUs, hops[i] * kGHz});
    }
    cfg.sut.variant = fh;
    return cfg;
  }
  if (name == "fig8d") {
    ExperimentConfig cfg = base(name, 14.8 * kGHz, 1 * kUs, 40);
    StepFreq sf;
    for (int i = 0; i < 10; ++i) {
      sf.table.segments.push_back({4.0 * i * kUs, 4.0 * (i + 1) * kUs, (0.2 + 0.4 * i) * kGHz});
    }
    cfg.sut.variant = sf;
    return cfg;
  }
  if (name == "fig8e") {
    ExperimentConfig cfg = base(name, 14.8 * kGHz, 2 * kUs, 280);
    cfg.sut = ecnu();
    return cfg;
  }
  if (name == "fig9") {
    ExperimentConfig cfg = base(name, 14.8 * kGHz, 1 * kUs, 40);
    BurstOnLfm b;
    b.lfm = lfm(10 * kMHz, 4 * kGHz, 0.0, 40 * kUs);
    b.burst_t_start = 8 * kUs;
    b.burst_duration = 2 * kUs;
    b.burst_frequency = 2 * kGHz;
    b.burst_level_db = -8.0;
    cfg.sut.variant = b;
    cfg.receiver.calibration = CalibrationMode::calibration_pass;
    return cfg;
  }
  throw InvalidArgument("unknown preset '" + name + "'");
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c", "fig5a", "fig5b",
      "fig6a", "fig6b", "fig6c", "fig6d", "fig7",  "fig8a", "fig8b", "fig8c",
      "fig8d", "fig8e", "fig9"};
  return names;
}

ExperimentConfig preset(const std::string& name) { return make(name); }

double default_probe_frequency(const ExperimentConfig& cfg) {
  if (const auto* m = std::get_if<Multitone>(&cfg.sut.variant); m && !m->tones.empty()) {
    double f = m->tones.front().frequency;
    for (const auto& t : m->tones) f = std::min(f, t.frequency);
    return f;
  }
  const double f_min = analysis_start(cfg.sweep, cfg.gain.center());
  return f_min + 0.5 * cfg.sweep.chirp_rate * cfg.sweep.period;
}

}  // namespace bstft
