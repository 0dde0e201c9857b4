// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/frontend.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bstft/errors.hpp"

namespace bstft {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative slack when deciding which period a time belongs to, so that
// t = n*T computed in floating point lands in window n.
constexpr double kBoundarySlack = 1e-9;

}  // namespace

SweepPlan make_sweep_plan(double f1, double f2, double period, std::size_t n_periods) {
  if (!(f1 > 0.0) || !(f2 > f1)) {
    throw InvalidArgument("make_sweep_plan: need f2 > f1 > 0");
  }
  if (!(period > 0.0)) throw InvalidArgument("make_sweep_plan: period must be positive");
  if (n_periods < 1) throw InvalidArgument("make_sweep_plan: need at least one period");
  return SweepPlan{f1, f2, period, (f2 - f1) / period, n_periods};
}

double analysis_start(const SweepPlan& plan, double gain_center) {
  // Upper SUT sideband sits at -(f1 + K t) + f; it meets the gain line when
  // f = f1 + gain_center + K t.
  return plan.f1 + gain_center;
}

void validate_reference(const ReferenceSpec& ref, const SweepPlan& plan, double gain_center) {
  if (!(ref.frequency >= 0.0)) throw InvalidArgument("reference: frequency must be >= 0");
  if (!(ref.guard_fraction > 0.0 && ref.guard_fraction < 1.0)) {
    throw InvalidArgument("reference: guard_fraction must lie in (0, 1)");
  }
  const double offset = ref.frequency - analysis_start(plan, gain_center);
  const double guard_band = plan.chirp_rate * ref.guard_fraction * plan.period;
  if (!(offset > 0.0 && offset < guard_band)) {
    throw InvalidArgument("reference: f1 - f_r must sit below the Brillouin shift by less than " +
                          std::to_string(guard_band) + " Hz (got " + std::to_string(offset) +
                          " Hz)");
  }
}

FrameSpec FrameSpec::centered_on(const SweepPlan& plan) {
  return FrameSpec{-0.5 * (plan.f1 + plan.f2)};
}

double required_sample_rate(const SweepPlan& plan, double f_max_rf) {
  return 1.25 * (plan.bandwidth() + 2.0 * f_max_rf);
}

ComplexTrace gen_sweep_envelope(const SweepPlan& plan, const TimeGrid& grid,
                                const FrameSpec& frame) {
  const double lo = -plan.f2 - frame.center;
  const double hi = -plan.f1 - frame.center;
  if (lo <= -grid.nyquist() || hi >= grid.nyquist()) {
    throw AliasingError("gen_sweep_envelope: sweep band does not fit the frame");
  }
  const double start = -plan.f1 - frame.center;
  std::vector<std::complex<double>> out(grid.n_samples);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double tl = window_index(plan, grid.time(i)).t_local;
    const double phase = kTwoPi * (start * tl - 0.5 * plan.chirp_rate * tl * tl);
    out[i] = std::polar(1.0, phase);
  }
  return ComplexTrace(grid, std::move(out), frame.center);
}

RealTrace combine_with_reference(const RealTrace& sut, const ReferenceSpec& ref) {
  const TimeGrid& grid = sut.grid();
  if (ref.frequency >= grid.nyquist()) {
    throw AliasingError("combine_with_reference: reference above Nyquist");
  }
  std::vector<double> out(sut.samples().begin(), sut.samples().end());
  if (ref.amplitude != 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += ref.amplitude * std::cos(kTwoPi * ref.frequency * grid.time(i));
    }
  }
  return RealTrace(grid, std::move(out));
}

ComplexTrace modulate_dsb(const ComplexTrace& sweep, const RealTrace& drive,
                          const ModulatorSpec& modulator) {
  if (!(sweep.grid() == drive.grid())) {
    throw InvalidArgument("modulate_dsb: sweep and drive grids differ");
  }
  const double leak = modulator.carrier_suppression_db
                          ? std::pow(10.0, -*modulator.carrier_suppression_db / 20.0)
                          : 0.0;
  std::vector<std::complex<double>> out(sweep.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sweep[i] * (drive[i] + leak);
  return ComplexTrace(sweep.grid(), std::move(out), sweep.frame_offset());
}

WindowPosition window_index(const SweepPlan& plan, double t) {
  if (t <= 0.0) return {0, 0.0};
  const double x = t / plan.period;
  auto w = static_cast<std::size_t>(std::floor(x + kBoundarySlack));
  double tl = t - static_cast<double>(w) * plan.period;
  if (tl < 0.0) tl = 0.0;
  return {w, tl};
}

}  // namespace bstft
