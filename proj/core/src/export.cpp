// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "bstft/errors.hpp"

namespace bstft {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<double> parse_row(const std::string& line, std::size_t row) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size() && cell.find_first_not_of(" \r", used) != std::string::npos) {
        throw std::invalid_argument(cell);
      }
    } catch (const std::exception&) {
      throw InvalidArgument("spectrogram csv: bad number '" + cell + "' on row " + std::to_string(row));
    }
  }
  return out;
}

ordered_json nullable(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json resolution_json(const ResolutionReport& r) {
  return {{"chirp_rate_hz_per_s", r.chirp_rate},
          {"period_s", r.period},
          {"fwhm_hz", r.fwhm},
          {"min_resolvable_sep_hz", nullable(r.min_resolvable_sep)},
          {"resolved", r.resolved},
          {"pulse_fwhm_time_s", r.pulse_fwhm_time},
          {"pulse_fwhm_freq_hz", r.pulse_fwhm_freq}};
}

}  // namespace

void write_spectrogram_csv(const Spectrogram& spec, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "time_s";
  for (double f : spec.freq_grid) out << ',' << fmt(f);
  out << '\n';
  for (const auto& c : spec.columns) {
    out << fmt(c.t_center);
    for (double p : c.power) out << ',' << fmt(p);
    out << '\n';
  }
}

Spectrogram read_spectrogram_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("time_s,", 0) != 0) {
    throw InvalidArgument("spectrogram csv: missing 'time_s,' header in " + path.string());
  }
  const std::vector<double> freq = parse_row(line.substr(7), 1);
  std::vector<SpectrumColumn> columns;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::vector<double> values = parse_row(line, row);
    if (values.size() != freq.size() + 1) {
      throw InvalidArgument("spectrogram csv: row " + std::to_string(row) + " has " +
                            std::to_string(values.size()) + " cells, expected " +
                            std::to_string(freq.size() + 1));
    }
    SpectrumColumn c;
    c.window_index = columns.size();
    c.t_center = values.front();
    c.freq_grid = freq;
    c.power.assign(values.begin() + 1, values.end());
    c.reference_found = true;
    columns.push_back(std::move(c));
  }
  if (columns.empty()) throw InvalidArgument("spectrogram csv: no data rows");
  const double period = columns.size() > 1 ? columns[1].t_center - columns[0].t_center : 1.0;
  return assemble(std::move(columns), period);
}

unsigned char pgm_pixel(double p, double p_max, double db_floor) {
  if (!(p_max > 0.0) || !(p > 0.0)) return 0;
  const double db = 10.0 * std::log10(p / p_max);
  const double level = std::clamp((db - db_floor) / (0.0 - db_floor), 0.0, 1.0);
  return static_cast<unsigned char>(std::lround(255.0 * level));
}

void write_spectrogram_pgm(const Spectrogram& spec, const std::filesystem::path& path,
                           double db_floor) {
  std::ofstream out = open_out(path, true);
  const std::size_t width = spec.n_columns();
  const std::size_t height = spec.n_bins();
  out << "P5\n" << width << ' ' << height << "\n255\n";
  const double p_max = spec.max_power();
  std::vector<unsigned char> row(width);
  for (std::size_t r = 0; r < height; ++r) {
    const std::size_t bin = height - 1 - r;
    for (std::size_t c = 0; c < width; ++c) row[c] = pgm_pixel(spec.columns[c].power[bin], p_max, db_floor);
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(width));
  }
}

void write_truth_overlay(const Spectrogram& spec, const std::vector<std::vector<double>>& truth,
                         const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "window,time_s,frequency_hz\n";
  for (std::size_t i = 0; i < truth.size() && i < spec.n_columns(); ++i) {
    for (double f : truth[i]) {
      out << spec.columns[i].window_index << ',' << fmt(spec.columns[i].t_center) << ',' << fmt(f)
          << '\n';
    }
  }
}

std::string report_json(const ExperimentConfig& cfg, const SimulationResult& result,
                        const CompareReport& oracle) {
  const Spectrogram& spec = result.spectrogram;
  ordered_json j;
  j["name"] = cfg.name;
  j["digest"] = spec.digest;
  j["fidelity"] = fidelity_name(cfg.fidelity);
  j["calibration"] = calibration_name(cfg.receiver.calibration);
  j["sample_rate_hz"] = result.sample_rate;
  j["chirp_rate_hz_per_s"] = cfg.sweep.chirp_rate;
  j["period_s"] = cfg.sweep.period;
  j["n_windows"] = spec.n_columns();
  j["n_bins"] = spec.n_bins();
  j["freq_min_hz"] = spec.freq_grid.front();
  j["freq_max_hz"] = spec.freq_grid.back();
  j["uncalibrated_windows"] = spec.uncalibrated_windows();
  std::vector<std::size_t> split;
  for (const auto& c : spec.columns) {
    if (c.edge_split) split.push_back(c.window_index);
  }
  j["edge_split_windows"] = split;
  std::vector<double> t_ref;
  for (const auto& a : result.anchors) t_ref.push_back(a.t_ref);
  j["t_ref_s"] = t_ref;
  j["oracle"] = {{"freq_tol_hz", cfg.gain.fwhm},
                 {"matched_peak_fraction", oracle.matched_peak_fraction},
                 {"max_ridge_deviation_hz", oracle.max_ridge_deviation},
                 {"peaks_simulated", oracle.peaks_a},
                 {"peaks_oracle", oracle.peaks_b},
                 {"matched", oracle.matched}};
  return j.dump(2) + "\n";
}

std::string resolution_report_json(const ResolutionReport& report) {
  return resolution_json(report).dump(2) + "\n";
}

void write_scan(const ScanResult& scan, const std::filesystem::path& json_path,
                const std::filesystem::path& csv_path) {
  const bool by_period = scan.axis == ScanAxis::period;
  ordered_json j;
  j["axis"] = by_period ? "period" : "chirp_rate";
  j["monotonic"] = scan.monotonic;
  ordered_json points = ordered_json::array();
  for (const auto& p : scan.points) {
    ordered_json e = resolution_json(p.report);
    points.push_back(e);
  }
  j["points"] = points;
  open_out(json_path) << j.dump(2) << '\n';

  std::ofstream csv = open_out(csv_path);
  csv << "period_s,chirp_rate_hz_per_s,min_resolvable_sep_hz,pulse_fwhm_time_s,pulse_fwhm_freq_hz\n";
  for (const auto& p : scan.points) {
    const ResolutionReport& r = p.report;
    csv << fmt(r.period) << ',' << fmt(r.chirp_rate) << ','
        << (std::isfinite(r.min_resolvable_sep) ? fmt(r.min_resolvable_sep) : "inf") << ','
        << fmt(r.pulse_fwhm_time) << ',' << fmt(r.pulse_fwhm_freq) << '\n';
  }
}

void write_artifacts(const ExperimentConfig& cfg, const SimulationResult& result,
                     const CompareReport& oracle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto wants = [&](const char* f) {
    return std::find(cfg.output.formats.begin(), cfg.output.formats.end(), f) != cfg.output.formats.end();
  };
  if (wants("csv")) write_spectrogram_csv(result.spectrogram, dir / "spectrogram.csv");
  if (wants("pgm")) write_spectrogram_pgm(result.spectrogram, dir / "spectrogram.pgm", cfg.output.db_floor);
  if (wants("json")) open_out(dir / "report.json") << report_json(cfg, result, oracle);
  if (wants("truth")) {
    write_truth_overlay(result.spectrogram, truth_overlay(cfg, result.spectrogram),
                        dir / "truth_overlay.csv");
  }
}

}  // namespace bstft
