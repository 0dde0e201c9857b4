// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bstft/bstft.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Number with an optional unit suffix, returned in SI units.
double parse_quantity(const std::string& text, bool rate) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  std::string unit = text.substr(used);
  unit.erase(0, unit.find_first_not_of(' '));
  if (unit.empty()) return value;
  if (!rate) {
    if (unit == "s") return value;
    if (unit == "ms") return value * 1e-3;
    if (unit == "us") return value * 1e-6;
    if (unit == "ns") return value * 1e-9;
  } else {
    if (unit == "Hz/s") return value;
    if (unit == "GHz/us") return value * 1e15;
    if (unit == "MHz/us") return value * 1e12;
  }
  throw UsageError("unknown unit '" + unit + "' in '" + text + "'");
}

std::vector<double> parse_list(const std::string& list, bool rate) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_quantity(item, rate));
  }
  if (out.empty()) throw UsageError("empty value list");
  return out;
}

void apply_mode(bstft::ExperimentConfig& cfg, const std::optional<std::string>& mode) {
  if (!mode) return;
  try {
    cfg.fidelity = bstft::parse_fidelity(*mode);
  } catch (const bstft::InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

int run_simulation(bstft::ExperimentConfig cfg, const std::optional<std::string>& mode,
                   const std::optional<std::string>& out_dir, const std::optional<std::uint64_t>& seed) {
  apply_mode(cfg, mode);
  if (seed) cfg.receiver.seed = *seed;
  if (out_dir) cfg.output.dir = *out_dir;
  bstft::validate_config(cfg);

  const bstft::SimulationResult result = bstft::simulate(cfg);
  const bstft::CompareReport oracle = bstft::oracle_compare(cfg, result.spectrogram);
  bstft::write_artifacts(cfg, result, oracle, cfg.output.dir);
  std::printf("%s: %zu windows x %zu bins, oracle matched %.3f, written to %s\n", cfg.name.c_str(),
              result.spectrogram.n_columns(), result.spectrogram.n_bins(),
              oracle.matched_peak_fraction, cfg.output.dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator of a Brillouin-gain optical short-time Fourier transform"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> mode;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;

  auto* simulate = app.add_subcommand("simulate", "Run a configured experiment");
  simulate->add_option("--config", config_path, "Experiment JSON")->required();
  simulate->add_option("--mode", mode, "Fidelity: full, lorentzian or dirac");
  simulate->add_option("--out", out_dir, "Output directory");
  simulate->add_option("--seed", seed, "Receiver noise seed");

  std::string preset_name;
  bool emit_config = false;
  auto* preset = app.add_subcommand("preset", "Print or run a built-in scenario");
  preset->add_option("name", preset_name, "Preset name")->required();
  preset->add_flag("--emit-config", emit_config, "Print the configuration JSON and exit");
  preset->add_option("--mode", mode, "Fidelity: full, lorentzian or dirac");
  preset->add_option("--out", out_dir, "Output directory");
  preset->add_option("--seed", seed, "Receiver noise seed");

  std::string periods;
  std::string chirp_rates;
  std::optional<double> f_center;
  auto* scan = app.add_subcommand("resolution-scan", "Two-tone resolution versus sweep setting");
  scan->add_option("--config", config_path, "Base experiment JSON")->required();
  auto* periods_opt = scan->add_option("--periods", periods, "Comma list of periods (s, or with ms/us/ns)");
  auto* rates_opt =
      scan->add_option("--chirp-rates", chirp_rates, "Comma list of chirp rates (Hz/s, or GHz/us, MHz/us)");
  periods_opt->excludes(rates_opt);
  scan->add_option("--f-center", f_center, "Lower test tone in Hz");
  scan->add_option("--out", out_dir, "Output directory");
  scan->add_option("--mode", mode, "Fidelity: full, lorentzian or dirac");

  std::string path_a;
  std::string path_b;
  double tol = 0.0;
  std::optional<double> band_low;
  std::optional<double> band_high;
  auto* compare = app.add_subcommand("compare", "Match ridge peaks of two spectrogram CSV files");
  compare->add_option("--a", path_a, "First spectrogram.csv")->required();
  compare->add_option("--b", path_b, "Second spectrogram.csv")->required();
  compare->add_option("--tol", tol, "Frequency tolerance in Hz")->required();
  compare->add_option("--band-low", band_low, "Ignore peaks below this frequency");
  compare->add_option("--band-high", band_high, "Ignore peaks above this frequency");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) {
      return run_simulation(bstft::load_config(config_path), mode, out_dir, seed);
    }
    if (preset->parsed()) {
      bstft::ExperimentConfig cfg;
      try {
        cfg = bstft::preset(preset_name);
      } catch (const bstft::InvalidArgument& e) {
        std::string names;
        for (const auto& n : bstft::preset_names()) names += " " + n;
        throw UsageError(std::string(e.what()) + "; available:" + names);
      }
      if (emit_config) {
        std::cout << bstft::serialize_config(cfg);
        return kExitOk;
      }
      return run_simulation(cfg, mode, out_dir, seed);
    }
    if (scan->parsed()) {
      bstft::ExperimentConfig cfg = bstft::load_config(config_path);
      apply_mode(cfg, mode);
      if (periods.empty() == chirp_rates.empty()) {
        throw UsageError("give exactly one of --periods or --chirp-rates");
      }
      const bool by_period = !periods.empty();
      const auto values = parse_list(by_period ? periods : chirp_rates, !by_period);
      const auto axis = by_period ? bstft::ScanAxis::period : bstft::ScanAxis::chirp_rate;
      const double fc = f_center ? *f_center : bstft::default_probe_frequency(cfg);
      for (double v : values) bstft::validate_config(bstft::with_axis_value(cfg, axis, v));
      const bstft::ScanResult result = bstft::resolution_scan(cfg, axis, values, fc);
      const std::filesystem::path dir = out_dir ? *out_dir : cfg.output.dir;
      bstft::write_scan(result, dir / "resolution_curve.json", dir / "resolution_curve.csv");
      for (const auto& p : result.points) {
        std::printf("T = %.4g s, K = %.4g Hz/s: resolution %.4g Hz\n", p.report.period,
                    p.report.chirp_rate, p.report.min_resolvable_sep);
      }
      std::printf("monotonic: %s\n", result.monotonic ? "yes" : "no");
      return kExitOk;
    }
    if (compare->parsed()) {
      const bstft::Spectrogram a = bstft::read_spectrogram_csv(path_a);
      const bstft::Spectrogram b = bstft::read_spectrogram_csv(path_b);
      bstft::CompareOptions options;
      options.band_low = band_low;
      options.band_high = band_high;
      const bstft::CompareReport r = bstft::compare_spectrograms(a, b, tol, options);
      std::printf(
          "{\"matched_peak_fraction\": %.17g, \"max_ridge_deviation_hz\": %.17g, "
          "\"peaks_a\": %zu, \"peaks_b\": %zu, \"matched\": %zu}\n",
          r.matched_peak_fraction, r.max_ridge_deviation, r.peaks_a, r.peaks_b, r.matched);
      return kExitOk;
    }
  } catch (const bstft::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitRuntime;
}
