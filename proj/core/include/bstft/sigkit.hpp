// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace bstft {

/// Uniform sampling grid. Sample i sits at t0 + i / sample_rate.
struct TimeGrid {
  double sample_rate = 1.0;  // Hz
  std::size_t n_samples = 1;
  double t0 = 0.0;  // s

  double dt() const { return 1.0 / sample_rate; }
  double duration() const { return static_cast<double>(n_samples) / sample_rate; }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) / sample_rate; }
  double nyquist() const { return 0.5 * sample_rate; }

  bool operator==(const TimeGrid&) const = default;
};

/// Grid with n_samples = round(duration * sample_rate).
TimeGrid make_time_grid(double sample_rate, double duration, double t0 = 0.0);

/// Real-valued sampled signal (SUT voltage, photocurrent). Immutable.
class RealTrace {
 public:
  RealTrace(TimeGrid grid, std::vector<double> samples);

  const TimeGrid& grid() const { return grid_; }
  std::span<const double> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }

 private:
  TimeGrid grid_;
  std::vector<double> samples_;
};

/// Complex envelope of an optical field. frame_offset is the optical
/// frequency (relative to the carrier) that envelope DC represents.
class ComplexTrace {
 public:
  ComplexTrace(TimeGrid grid, std::vector<std::complex<double>> samples,
               double frame_offset = 0.0);

  const TimeGrid& grid() const { return grid_; }
  std::span<const std::complex<double>> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  std::complex<double> operator[](std::size_t i) const { return samples_[i]; }
  double frame_offset() const { return frame_offset_; }

 private:
  TimeGrid grid_;
  std::vector<std::complex<double>> samples_;
  double frame_offset_;
};

// ---------------------------------------------------------------------------
// Signal-under-test descriptors

/// Active time interval of a component; [t_start, t_end).
struct Gate {
  double t_start = 0.0;
  double t_end = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t >= t_start && t < t_end; }
};

struct ToneComponent {
  double frequency = 0.0;
  double amplitude = 1.0;
  double phase = 0.0;  // rad
};

struct Tone {
  ToneComponent tone;
  Gate gate;
};

struct Multitone {
  std::vector<ToneComponent> tones;
  Gate gate;
};

/// Linear chirp from f_start to f_stop over [t_start, t_start + duration).
struct Lfm {
  double f_start = 0.0;
  double f_stop = 0.0;
  double t_start = 0.0;
  double duration = 0.0;
  double amplitude = 1.0;
  double phase = 0.0;

  double chirp_rate() const { return (f_stop - f_start) / duration; }
};

/// Tabulated frequency-vs-time law, linearly interpolated between knots.
struct NlfmProfile {
  std::vector<double> times;
  std::vector<double> frequencies;
  double amplitude = 1.0;
  double phase = 0.0;
};

struct Segment {
  double t_start = 0.0;
  double t_end = 0.0;
  double frequency = 0.0;
};

/// Piecewise-constant frequency table shared by hop and step signals.
struct SegmentTable {
  std::vector<Segment> segments;
  double amplitude = 1.0;
  bool phase_reset = false;
};

struct FreqHop {
  SegmentTable table;
};

struct StepFreq {
  SegmentTable table;
};

/// Chirp with a superimposed gated tone whose power sits `burst_level_db`
/// relative to the chirp.
struct BurstOnLfm {
  Lfm lfm;
  double burst_t_start = 0.0;
  double burst_duration = 0.0;
  double burst_frequency = 0.0;
  double burst_level_db = -8.0;

  double burst_amplitude() const;
};

struct SutDescriptor;

struct MixedWithLo {
  std::shared_ptr<const SutDescriptor> base;
  double f_lo = 0.0;
};

struct Sum {
  std::vector<SutDescriptor> components;
};

struct SutDescriptor {
  std::variant<Tone, Multitone, Lfm, NlfmProfile, FreqHop, StepFreq, BurstOnLfm, MixedWithLo,
               Sum>
      variant;
};

/// Name used in configuration documents ("tone", "lfm", ...).
const char* variant_name(const SutDescriptor& desc);

/// Structural checks: frequencies >= 0, tables non-empty, segments ordered
/// and non-overlapping. Throws InvalidArgument.
void validate_descriptor(const SutDescriptor& desc);

/// Largest instantaneous frequency the descriptor can produce.
double max_frequency(const SutDescriptor& desc);

/// Renders the descriptor on `grid`. Throws AliasingError when
/// max_frequency(desc) >= grid.nyquist().
RealTrace synthesize(const SutDescriptor& desc, const TimeGrid& grid);

/// sut(t) * cos(2 pi f_lo t). `sut_max_frequency` is the highest frequency
/// already present; the sum band must stay below Nyquist.
RealTrace mix_with_lo(const RealTrace& sut, double f_lo, double sut_max_frequency = 0.0);

/// Analytic frequencies present at time t (empty when silent). Throws
/// InvalidArgument when t lies outside the record described by `grid`.
std::vector<double> true_instantaneous_frequency(const SutDescriptor& desc, const TimeGrid& grid,
                                                 double t);

}  // namespace bstft
