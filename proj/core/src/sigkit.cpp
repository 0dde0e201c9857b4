// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/sigkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "bstft/errors.hpp"

namespace bstft {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": non-finite sample");
  }
}

void check_frequency(double f, const char* what) {
  if (!(f >= 0.0) || !std::isfinite(f)) {
    throw InvalidArgument(std::string(what) + ": frequencies must be finite and >= 0");
  }
}

void validate_table(const SegmentTable& table, const char* what) {
  if (table.segments.empty()) throw InvalidArgument(std::string(what) + ": empty segment table");
  double last_end = -std::numeric_limits<double>::infinity();
  for (const auto& s : table.segments) {
    check_frequency(s.frequency, what);
    if (!(s.t_end > s.t_start) || s.t_start < 0.0) {
      throw InvalidArgument(std::string(what) + ": segment needs 0 <= t_start < t_end");
    }
    if (s.t_start < last_end) {
      throw InvalidArgument(std::string(what) + ": segments overlap or are out of order");
    }
    last_end = s.t_end;
  }
}

double table_max(const SegmentTable& table) {
  double m = 0.0;
  for (const auto& s : table.segments) m = std::max(m, s.frequency);
  return m;
}

// Cumulative integral of a piecewise-linear frequency law, in cycles.
double nlfm_cycles(const NlfmProfile& p, std::size_t k, double t) {
  const double t0 = p.times[k];
  const double t1 = p.times[k + 1];
  const double f0 = p.frequencies[k];
  const double f1 = p.frequencies[k + 1];
  const double tau = t - t0;
  return f0 * tau + 0.5 * (f1 - f0) / (t1 - t0) * tau * tau;
}

// Sample index range [first, last) whose times fall inside [t_start, t_end).
std::pair<std::size_t, std::size_t> index_range(const TimeGrid& grid, double t_start,
                                                double t_end) {
  auto to_index = [&](double t) -> std::size_t {
    if (!std::isfinite(t)) return t > 0 ? grid.n_samples : 0;
    const double x = std::ceil((t - grid.t0) * grid.sample_rate - 1e-9);
    if (x <= 0.0) return 0;
    return std::min(grid.n_samples, static_cast<std::size_t>(x));
  };
  const std::size_t first = to_index(t_start);
  return {first, std::max(first, to_index(t_end))};
}

void add_tone(std::vector<double>& out, const TimeGrid& grid, const ToneComponent& tone,
              const Gate& gate) {
  const auto [first, last] = index_range(grid, gate.t_start, gate.t_end);
  for (std::size_t i = first; i < last; ++i) {
    out[i] += tone.amplitude * std::cos(kTwoPi * tone.frequency * grid.time(i) + tone.phase);
  }
}

void add_lfm(std::vector<double>& out, const TimeGrid& grid, const Lfm& lfm) {
  const double rate = lfm.chirp_rate();
  const auto [first, last] = index_range(grid, lfm.t_start, lfm.t_start + lfm.duration);
  for (std::size_t i = first; i < last; ++i) {
    const double t = grid.time(i);
    const double tau = t - lfm.t_start;
    out[i] += lfm.amplitude *
              std::cos(kTwoPi * (lfm.f_start * tau + 0.5 * rate * tau * tau) + lfm.phase);
  }
}

void add_nlfm(std::vector<double>& out, const TimeGrid& grid, const NlfmProfile& p) {
  std::vector<double> knot_cycles(p.times.size(), 0.0);
  for (std::size_t k = 0; k + 1 < p.times.size(); ++k) {
    knot_cycles[k + 1] = knot_cycles[k] + nlfm_cycles(p, k, p.times[k + 1]);
  }
  const auto [first, last] = index_range(grid, p.times.front(), p.times.back());
  std::size_t k = 0;
  for (std::size_t i = first; i < last; ++i) {
    const double t = grid.time(i);
    while (k + 2 < p.times.size() && t >= p.times[k + 1]) ++k;
    const double cycles = knot_cycles[k] + nlfm_cycles(p, k, t);
    out[i] += p.amplitude * std::cos(kTwoPi * cycles + p.phase);
  }
}

void add_table(std::vector<double>& out, const TimeGrid& grid, const SegmentTable& table) {
  double seg_phase = 0.0;
  for (std::size_t s = 0; s < table.segments.size(); ++s) {
    const Segment& seg = table.segments[s];
    if (s > 0 && !table.phase_reset) {
      const Segment& prev = table.segments[s - 1];
      seg_phase = std::fmod(seg_phase + kTwoPi * prev.frequency * (prev.t_end - prev.t_start),
                            kTwoPi);
    } else if (table.phase_reset) {
      seg_phase = 0.0;
    }
    const auto [first, last] = index_range(grid, seg.t_start, seg.t_end);
    for (std::size_t i = first; i < last; ++i) {
      const double t = grid.time(i);
      out[i] += table.amplitude * std::cos(seg_phase + kTwoPi * seg.frequency * (t - seg.t_start));
    }
  }
}

void accumulate(std::vector<double>& out, const SutDescriptor& desc, const TimeGrid& grid) {
  std::visit(
      Overloaded{
          [&](const Tone& v) { add_tone(out, grid, v.tone, v.gate); },
          [&](const Multitone& v) {
            for (const auto& tone : v.tones) add_tone(out, grid, tone, v.gate);
          },
          [&](const Lfm& v) { add_lfm(out, grid, v); },
          [&](const NlfmProfile& v) { add_nlfm(out, grid, v); },
          [&](const FreqHop& v) { add_table(out, grid, v.table); },
          [&](const StepFreq& v) { add_table(out, grid, v.table); },
          [&](const BurstOnLfm& v) {
            add_lfm(out, grid, v.lfm);
            add_tone(out, grid, ToneComponent{v.burst_frequency, v.burst_amplitude(), 0.0},
                     Gate{v.burst_t_start, v.burst_t_start + v.burst_duration});
          },
          [&](const MixedWithLo& v) {
            const RealTrace base = synthesize(*v.base, grid);
            const RealTrace mixed = mix_with_lo(base, v.f_lo, max_frequency(*v.base));
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += mixed[i];
          },
          [&](const Sum& v) {
            for (const auto& c : v.components) accumulate(out, c, grid);
          },
      },
      desc.variant);
}

void collect_frequencies(const SutDescriptor& desc, double t, std::vector<double>& out) {
  std::visit(
      Overloaded{
          [&](const Tone& v) {
            if (v.gate.contains(t) && v.tone.amplitude != 0.0) out.push_back(v.tone.frequency);
          },
          [&](const Multitone& v) {
            if (!v.gate.contains(t)) return;
            for (const auto& tone : v.tones) {
              if (tone.amplitude != 0.0) out.push_back(tone.frequency);
            }
          },
          [&](const Lfm& v) {
            if (v.amplitude != 0.0 && t >= v.t_start && t < v.t_start + v.duration) {
              out.push_back(v.f_start + v.chirp_rate() * (t - v.t_start));
            }
          },
          [&](const NlfmProfile& v) {
            if (v.amplitude == 0.0 || t < v.times.front() || t >= v.times.back()) return;
            auto it = std::upper_bound(v.times.begin(), v.times.end(), t);
            const std::size_t k = static_cast<std::size_t>(it - v.times.begin()) - 1;
            const double a = (t - v.times[k]) / (v.times[k + 1] - v.times[k]);
            out.push_back(v.frequencies[k] + a * (v.frequencies[k + 1] - v.frequencies[k]));
          },
          [&](const FreqHop& v) {
            for (const auto& s : v.table.segments) {
              if (t >= s.t_start && t < s.t_end) out.push_back(s.frequency);
            }
          },
          [&](const StepFreq& v) {
            for (const auto& s : v.table.segments) {
              if (t >= s.t_start && t < s.t_end) out.push_back(s.frequency);
            }
          },
          [&](const BurstOnLfm& v) {
            collect_frequencies(SutDescriptor{v.lfm}, t, out);
            if (t >= v.burst_t_start && t < v.burst_t_start + v.burst_duration) {
              out.push_back(v.burst_frequency);
            }
          },
          [&](const MixedWithLo& v) {
            std::vector<double> base;
            collect_frequencies(*v.base, t, base);
            for (double f : base) {
              out.push_back(v.f_lo + f);
              out.push_back(std::abs(v.f_lo - f));
            }
          },
          [&](const Sum& v) {
            for (const auto& c : v.components) collect_frequencies(c, t, out);
          },
      },
      desc.variant);
}

}  // namespace

TimeGrid make_time_grid(double sample_rate, double duration, double t0) {
  if (!(sample_rate > 0.0) || !(duration > 0.0)) {
    throw InvalidArgument("make_time_grid: sample_rate and duration must be positive");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration * sample_rate));
  if (n < 1) throw InvalidArgument("make_time_grid: duration shorter than one sample");
  return TimeGrid{sample_rate, n, t0};
}

RealTrace::RealTrace(TimeGrid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (!(grid_.sample_rate > 0.0) || grid_.n_samples < 1) {
    throw InvalidArgument("RealTrace: invalid grid");
  }
  if (samples_.size() != grid_.n_samples) {
    throw InvalidArgument("RealTrace: sample count does not match grid");
  }
  require_finite(samples_, "RealTrace");
}

ComplexTrace::ComplexTrace(TimeGrid grid, std::vector<std::complex<double>> samples,
                           double frame_offset)
    : grid_(grid), samples_(std::move(samples)), frame_offset_(frame_offset) {
  if (!(grid_.sample_rate > 0.0) || grid_.n_samples < 1) {
    throw InvalidArgument("ComplexTrace: invalid grid");
  }
  if (samples_.size() != grid_.n_samples) {
    throw InvalidArgument("ComplexTrace: sample count does not match grid");
  }
}

double BurstOnLfm::burst_amplitude() const {
  return lfm.amplitude * std::pow(10.0, burst_level_db / 20.0);
}

const char* variant_name(const SutDescriptor& desc) {
  static constexpr const char* kNames[] = {"tone",     "multitone", "lfm",
                                           "nlfm_profile", "freq_hop", "step_freq",
                                           "burst_on_lfm", "mixed_with_lo", "sum"};
  return kNames[desc.variant.index()];
}

void validate_descriptor(const SutDescriptor& desc) {
  std::visit(
      Overloaded{
          [](const Tone& v) { check_frequency(v.tone.frequency, "tone"); },
          [](const Multitone& v) {
            if (v.tones.empty()) throw InvalidArgument("multitone: no tones");
            for (const auto& t : v.tones) check_frequency(t.frequency, "multitone");
          },
          [](const Lfm& v) {
            check_frequency(v.f_start, "lfm");
            check_frequency(v.f_stop, "lfm");
            if (!(v.duration > 0.0) || v.t_start < 0.0) {
              throw InvalidArgument("lfm: duration must be positive and t_start >= 0");
            }
          },
          [](const NlfmProfile& v) {
            if (v.times.size() < 2 || v.times.size() != v.frequencies.size()) {
              throw InvalidArgument("nlfm_profile: need >= 2 knots of matching length");
            }
            for (std::size_t k = 0; k < v.times.size(); ++k) {
              check_frequency(v.frequencies[k], "nlfm_profile");
              if (k > 0 && !(v.times[k] > v.times[k - 1])) {
                throw InvalidArgument("nlfm_profile: knot times must increase");
              }
            }
            if (v.times.front() < 0.0) throw InvalidArgument("nlfm_profile: negative time");
          },
          [](const FreqHop& v) { validate_table(v.table, "freq_hop"); },
          [](const StepFreq& v) { validate_table(v.table, "step_freq"); },
          [](const BurstOnLfm& v) {
            validate_descriptor(SutDescriptor{v.lfm});
            check_frequency(v.burst_frequency, "burst_on_lfm");
            if (!(v.burst_duration > 0.0) || v.burst_t_start < 0.0) {
              throw InvalidArgument("burst_on_lfm: burst needs t_start >= 0, duration > 0");
            }
          },
          [](const MixedWithLo& v) {
            if (!v.base) throw InvalidArgument("mixed_with_lo: missing base signal");
            check_frequency(v.f_lo, "mixed_with_lo");
            validate_descriptor(*v.base);
          },
          [](const Sum& v) {
            if (v.components.empty()) throw InvalidArgument("sum: no components");
            for (const auto& c : v.components) validate_descriptor(c);
          },
      },
      desc.variant);
}

double max_frequency(const SutDescriptor& desc) {
  return std::visit(
      Overloaded{
          [](const Tone& v) { return v.tone.frequency; },
          [](const Multitone& v) {
            double m = 0.0;
            for (const auto& t : v.tones) m = std::max(m, t.frequency);
            return m;
          },
          [](const Lfm& v) { return std::max(v.f_start, v.f_stop); },
          [](const NlfmProfile& v) {
            return *std::max_element(v.frequencies.begin(), v.frequencies.end());
          },
          [](const FreqHop& v) { return table_max(v.table); },
          [](const StepFreq& v) { return table_max(v.table); },
          [](const BurstOnLfm& v) {
            return std::max({v.lfm.f_start, v.lfm.f_stop, v.burst_frequency});
          },
          [](const MixedWithLo& v) { return v.f_lo + max_frequency(*v.base); },
          [](const Sum& v) {
            double m = 0.0;
            for (const auto& c : v.components) m = std::max(m, max_frequency(c));
            return m;
          },
      },
      desc.variant);
}

RealTrace synthesize(const SutDescriptor& desc, const TimeGrid& grid) {
  validate_descriptor(desc);
  const double f_max = max_frequency(desc);
  if (f_max >= grid.nyquist()) {
    throw AliasingError("synthesize: max frequency " + std::to_string(f_max) +
                        " Hz is not below Nyquist " + std::to_string(grid.nyquist()) + " Hz");
  }
  std::vector<double> out(grid.n_samples, 0.0);
  accumulate(out, desc, grid);
  return RealTrace(grid, std::move(out));
}

RealTrace mix_with_lo(const RealTrace& sut, double f_lo, double sut_max_frequency) {
  const TimeGrid& grid = sut.grid();
  if (!(f_lo >= 0.0)) throw InvalidArgument("mix_with_lo: LO frequency must be >= 0");
  if (f_lo + sut_max_frequency >= grid.nyquist()) {
    throw AliasingError("mix_with_lo: sum band reaches Nyquist");
  }
  std::vector<double> out(sut.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = sut[i] * std::cos(kTwoPi * f_lo * grid.time(i));
  }
  return RealTrace(grid, std::move(out));
}

std::vector<double> true_instantaneous_frequency(const SutDescriptor& desc, const TimeGrid& grid,
                                                 double t) {
  const double t_end = grid.t0 + grid.duration();
  if (!(t >= grid.t0) || t > t_end) {
    throw InvalidArgument("true_instantaneous_frequency: t outside record");
  }
  std::vector<double> out;
  collect_frequencies(desc, t, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bstft
