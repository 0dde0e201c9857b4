// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bstft/config.hpp"
#include "bstft/oracle.hpp"
#include "bstft/pipeline.hpp"
#include "bstft/resolution.hpp"
#include "bstft/spectrogram.hpp"

namespace bstft {

/// Header `time_s,<f_0>,...`; one row per column of linear power.
void write_spectrogram_csv(const Spectrogram& spec, const std::filesystem::path& path);

/// Inverse of write_spectrogram_csv. The period is the spacing of the first
/// two rows (1 for a single row). Throws InvalidArgument on malformed input.
Spectrogram read_spectrogram_csv(const std::filesystem::path& path);

/// 8-bit pixel for power p on a dB scale from db_floor (black) to 0 dB
/// relative to p_max (white).
unsigned char pgm_pixel(double p, double p_max, double db_floor);

/// Binary P5 image, one row per frequency bin with the lowest frequency at
/// the bottom, one column per window.
void write_spectrogram_pgm(const Spectrogram& spec, const std::filesystem::path& path,
                           double db_floor = -40.0);

/// Long format `window,time_s,frequency_hz`, one row per true component.
void write_truth_overlay(const Spectrogram& spec, const std::vector<std::vector<double>>& truth,
                         const std::filesystem::path& path);

std::string report_json(const ExperimentConfig& cfg, const SimulationResult& result,
                        const CompareReport& oracle);

std::string resolution_report_json(const ResolutionReport& report);

void write_scan(const ScanResult& scan, const std::filesystem::path& json_path,
                const std::filesystem::path& csv_path);

/// Writes the formats listed in cfg.output.formats into dir.
void write_artifacts(const ExperimentConfig& cfg, const SimulationResult& result,
                     const CompareReport& oracle, const std::filesystem::path& dir);

}  // namespace bstft
