// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "bstft/config.hpp"
#include "bstft/oracle.hpp"
#include "bstft/receiver.hpp"
#include "bstft/spectrogram.hpp"

namespace bstft {

struct SimulationResult {
  Spectrogram spectrogram;
  std::vector<RealTrace> windows;     // photocurrent of each sweep period
  std::vector<ReferenceFix> anchors;  // time anchor used to decode each window
  double sample_rate = 0.0;           // field sample rate
};

/// Field-rate time grid covering n_periods sweep periods.
TimeGrid record_grid(const ExperimentConfig& cfg);

/// Modulator drive: SUT plus reference tone.
RealTrace drive_trace(const ExperimentConfig& cfg);

/// Per-period photocurrent for the configured fidelity, before decoding.
/// With include_sut = false only the reference is applied and noise is off.
std::vector<RealTrace> photocurrent_windows(const ExperimentConfig& cfg, bool include_sut = true);

/// Full chain: synthesis, modulation, gain, detection and decoding.
/// Deterministic for a given config and seed.
SimulationResult simulate(const ExperimentConfig& cfg);

/// True instantaneous frequencies of the SUT at each column center.
std::vector<std::vector<double>> truth_overlay(const ExperimentConfig& cfg, const Spectrogram& spec);

/// Digital STFT of the SUT alone, one window per sweep period.
Spectrogram oracle_spectrogram(const ExperimentConfig& cfg);

/// Compares against oracle_spectrogram within one gain linewidth, over the
/// analysis range minus a guard band at each end: the low end holds this
/// window's reference pulse, the high end the leading tail of the next one.
CompareReport oracle_compare(const ExperimentConfig& cfg, const Spectrogram& spec);

}  // namespace bstft
