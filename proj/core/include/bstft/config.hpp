// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bstft/frontend.hpp"
#include "bstft/receiver.hpp"
#include "bstft/sbs.hpp"
#include "bstft/sigkit.hpp"

namespace bstft {

struct OutputSpec {
  std::string dir = "out";
  std::vector<std::string> formats = {"csv", "pgm", "json", "truth"};
  double db_floor = -40.0;
};

/// Complete scenario: signal, sweep, gain, receiver and fidelity.
struct ExperimentConfig {
  std::string name = "experiment";
  SutDescriptor sut;
  SweepPlan sweep;
  ReferenceSpec reference;
  SbsGainSpec gain;
  ReceiverSpec receiver;
  ModulatorSpec modulator;
  FidelityMode fidelity = FidelityMode::full_field;
  std::optional<double> sample_rate;   // field rate; derived when unset
  std::optional<double> frame_center;  // Hz; derived when unset
  OutputSpec output;
};

const char* fidelity_name(FidelityMode mode);  // "full", "lorentzian", "dirac"
FidelityMode parse_fidelity(const std::string& name);  // throws InvalidArgument
const char* calibration_name(CalibrationMode mode);

/// Highest RF frequency on the modulator drive (SUT or reference).
double drive_max_frequency(const ExperimentConfig& cfg);

/// Explicit sample_rate, or the smallest multiple of the oscilloscope rate
/// covering required_sample_rate.
double effective_sample_rate(const ExperimentConfig& cfg);

FrameSpec effective_frame(const ExperimentConfig& cfg);

/// Cross-module checks. Throws ConfigError naming the offending section.
void validate_config(const ExperimentConfig& cfg);

/// Strict parse: unknown keys, wrong types and failed validation throw
/// ConfigError carrying the 1-based line of the offending key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Pretty-printed JSON that parse_config reads back to an equal config.
std::string serialize_config(const ExperimentConfig& cfg);

/// Stable 16-hex-digit hash of the serialized config.
std::string config_digest(const ExperimentConfig& cfg);

}  // namespace bstft
