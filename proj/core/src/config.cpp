// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bstft/errors.hpp"

namespace bstft {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;
using Path = std::vector<std::string>;

// Validation failure tied to a location in the document.
struct PathError {
  std::string message;
  Path path;
};

std::string join(const Path& path) {
  std::string out;
  for (const auto& p : path) {
    if (!p.empty() && p.front() == '[') {
      out += p;
    } else {
      if (!out.empty()) out += '.';
      out += p;
    }
  }
  return out;
}

// Line of the last resolvable key on `path`, found by scanning the text for
// each key in turn. Array indices advance to the index-th element start.
int line_of(const std::string& text, const Path& path) {
  std::size_t pos = 0;
  std::size_t found = std::string::npos;
  for (const auto& key : path) {
    if (!key.empty() && key.front() == '[') {
      const std::size_t index = std::stoul(key.substr(1));
      std::size_t p = text.find('[', pos);
      if (p == std::string::npos) break;
      ++p;
      // Skip `index` top-level elements of this array.
      for (std::size_t skipped = 0; skipped < index && p < text.size();) {
        int depth = 0;
        bool in_string = false;
        for (; p < text.size(); ++p) {
          const char c = text[p];
          if (in_string) {
            if (c == '\\') ++p;
            else if (c == '"') in_string = false;
            continue;
          }
          if (c == '"') in_string = true;
          else if (c == '{' || c == '[') ++depth;
          else if (c == '}' || c == ']') --depth;
          else if (c == ',' && depth == 0) break;
        }
        ++p;
        ++skipped;
      }
      while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
      pos = p;
      found = p;
      continue;
    }
    const std::string quoted = "\"" + key + "\"";
    std::size_t p = pos;
    while ((p = text.find(quoted, p)) != std::string::npos) {
      std::size_t q = p + quoted.size();
      while (q < text.size() && std::isspace(static_cast<unsigned char>(text[q]))) ++q;
      if (q < text.size() && text[q] == ':') break;
      p += quoted.size();
    }
    if (p == std::string::npos) break;
    pos = p + quoted.size();
    found = p;
  }
  if (found == std::string::npos || found > text.size()) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(found), '\n'));
}

// Strict object reader: every key must be consumed before finish().
class Obj {
 public:
  Obj(const json& j, Path path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object", path_);
  }

  const Path& path() const { return path_; }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) fail("missing required key '" + key + "'", path_);
    return j_.at(key);
  }

  double num(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) fail("'" + key + "' must be a number", at(key));
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail("'" + key + "' must be finite", at(key));
    return d;
  }
  double num(const std::string& key, double fallback) { return has(key) ? num(key) : mark(key, fallback); }
  std::optional<double> opt_num(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return num(key);
  }

  std::uint64_t uint(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return mark(key, fallback);
    const json& v = raw(key);
    if (!v.is_number_unsigned()) fail("'" + key + "' must be a non-negative integer", at(key));
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return mark(key, fallback);
    const json& v = raw(key);
    if (!v.is_boolean()) fail("'" + key + "' must be true or false", at(key));
    return v.get<bool>();
  }

  std::string str(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) fail("'" + key + "' must be a string", at(key));
    return v.get<std::string>();
  }
  std::string str(const std::string& key, const std::string& fallback) {
    return has(key) ? str(key) : mark(key, fallback);
  }

  std::vector<double> num_array(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) fail("'" + key + "' must be an array of numbers", at(key));
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail("'" + key + "' must be an array of numbers", at(key));
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<Obj> obj_array(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) fail("'" + key + "' must be an array of objects", at(key));
    std::vector<Obj> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Path p = at(key);
      p.push_back("[" + std::to_string(i) + "]");
      out.emplace_back(v[i], p);
    }
    return out;
  }

  Obj child(const std::string& key) { return Obj(raw(key), at(key)); }

  Path at(const std::string& key) const {
    Path p = path_;
    p.push_back(key);
    return p;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        fail("unknown key '" + join(at(item.key())) + "'", at(item.key()));
      }
    }
  }

  [[noreturn]] static void fail(const std::string& message, const Path& path) {
    throw PathError{message, path};
  }

 private:
  template <typename T>
  T mark(const std::string& key, T value) {
    seen_.insert(key);
    return value;
  }

  const json& j_;
  Path path_;
  std::set<std::string> seen_;
};

Gate read_gate(Obj& o) {
  Gate g;
  g.t_start = o.num("t_start", 0.0);
  g.t_end = o.num("t_end", std::numeric_limits<double>::infinity());
  return g;
}

ToneComponent read_tone(Obj& o) {
  ToneComponent t;
  t.frequency = o.num("frequency");
  t.amplitude = o.num("amplitude", 1.0);
  t.phase = o.num("phase", 0.0);
  return t;
}

Lfm read_lfm(Obj& o) {
  Lfm l;
  l.f_start = o.num("f_start");
  l.f_stop = o.num("f_stop");
  l.t_start = o.num("t_start", 0.0);
  l.duration = o.num("duration");
  l.amplitude = o.num("amplitude", 1.0);
  l.phase = o.num("phase", 0.0);
  return l;
}

SegmentTable read_table(Obj& o) {
  SegmentTable table;
  for (Obj& s : o.obj_array("segments")) {
    table.segments.push_back({s.num("t_start"), s.num("t_end"), s.num("frequency")});
    s.finish();
  }
  table.amplitude = o.num("amplitude", 1.0);
  table.phase_reset = o.boolean("phase_reset", false);
  return table;
}

SutDescriptor read_sut(Obj& o) {
  const std::string variant = o.str("variant");
  SutDescriptor d;
  if (variant == "tone") {
    Tone t;
    t.tone = read_tone(o);
    t.gate = read_gate(o);
    d.variant = t;
  } else if (variant == "multitone") {
    Multitone m;
    for (Obj& t : o.obj_array("tones")) {
      m.tones.push_back(read_tone(t));
      t.finish();
    }
    m.gate = read_gate(o);
    d.variant = m;
  } else if (variant == "lfm") {
    d.variant = read_lfm(o);
  } else if (variant == "nlfm_profile") {
    NlfmProfile p;
    p.times = o.num_array("times");
    p.frequencies = o.num_array("frequencies");
    p.amplitude = o.num("amplitude", 1.0);
    p.phase = o.num("phase", 0.0);
    d.variant = p;
  } else if (variant == "freq_hop") {
    d.variant = FreqHop{read_table(o)};
  } else if (variant == "step_freq") {
    d.variant = StepFreq{read_table(o)};
  } else if (variant == "burst_on_lfm") {
    BurstOnLfm b;
    Obj l = o.child("lfm");
    b.lfm = read_lfm(l);
    l.finish();
    b.burst_t_start = o.num("burst_t_start");
    b.burst_duration = o.num("burst_duration");
    b.burst_frequency = o.num("burst_frequency");
    b.burst_level_db = o.num("burst_level_db", -8.0);
    d.variant = b;
  } else if (variant == "mixed_with_lo") {
    MixedWithLo m;
    Obj base = o.child("base");
    m.base = std::make_shared<const SutDescriptor>(read_sut(base));
    base.finish();
    m.f_lo = o.num("f_lo");
    d.variant = m;
  } else if (variant == "sum") {
    Sum s;
    for (Obj& c : o.obj_array("components")) {
      s.components.push_back(read_sut(c));
      c.finish();
    }
    d.variant = s;
  } else {
    Obj::fail("unknown sut variant '" + variant + "'", o.at("variant"));
  }
  return d;
}

ordered_json write_gate(ordered_json j, const Gate& g) {
  j["t_start"] = g.t_start;
  if (std::isfinite(g.t_end)) j["t_end"] = g.t_end;
  return j;
}

ordered_json write_tone(const ToneComponent& t) {
  return {{"frequency", t.frequency}, {"amplitude", t.amplitude}, {"phase", t.phase}};
}

ordered_json write_lfm(const Lfm& l) {
  return {{"f_start", l.f_start}, {"f_stop", l.f_stop},       {"t_start", l.t_start},
          {"duration", l.duration}, {"amplitude", l.amplitude}, {"phase", l.phase}};
}

ordered_json write_table(ordered_json j, const SegmentTable& t) {
  ordered_json segs = ordered_json::array();
  for (const auto& s : t.segments) {
    segs.push_back({{"t_start", s.t_start}, {"t_end", s.t_end}, {"frequency", s.frequency}});
  }
  j["segments"] = segs;
  j["amplitude"] = t.amplitude;
  j["phase_reset"] = t.phase_reset;
  return j;
}

ordered_json write_sut(const SutDescriptor& d) {
  ordered_json j;
  j["variant"] = variant_name(d);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Tone>) {
          const ordered_json tone = write_tone(v.tone);
          for (const auto& [k, val] : tone.items()) j[k] = val;
          j = write_gate(j, v.gate);
        } else if constexpr (std::is_same_v<T, Multitone>) {
          ordered_json tones = ordered_json::array();
          for (const auto& t : v.tones) tones.push_back(write_tone(t));
          j["tones"] = tones;
          j = write_gate(j, v.gate);
        } else if constexpr (std::is_same_v<T, Lfm>) {
          const ordered_json chirp = write_lfm(v);
          for (const auto& [k, val] : chirp.items()) j[k] = val;
        } else if constexpr (std::is_same_v<T, NlfmProfile>) {
          j["times"] = v.times;
          j["frequencies"] = v.frequencies;
          j["amplitude"] = v.amplitude;
          j["phase"] = v.phase;
        } else if constexpr (std::is_same_v<T, FreqHop> || std::is_same_v<T, StepFreq>) {
          j = write_table(j, v.table);
        } else if constexpr (std::is_same_v<T, BurstOnLfm>) {
          j["lfm"] = write_lfm(v.lfm);
          j["burst_t_start"] = v.burst_t_start;
          j["burst_duration"] = v.burst_duration;
          j["burst_frequency"] = v.burst_frequency;
          j["burst_level_db"] = v.burst_level_db;
        } else if constexpr (std::is_same_v<T, MixedWithLo>) {
          j["base"] = write_sut(*v.base);
          j["f_lo"] = v.f_lo;
        } else if constexpr (std::is_same_v<T, Sum>) {
          ordered_json comps = ordered_json::array();
          for (const auto& c : v.components) comps.push_back(write_sut(c));
          j["components"] = comps;
        }
      },
      d.variant);
  return j;
}

const char* shape_name(GainShape s) {
  return s == GainShape::linear_lorentzian ? "linear_lorentzian" : "exponential_small_signal";
}

void check_tables_in_record(const SutDescriptor& d, double record) {
  const double slack = 1e-9 * record;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FreqHop> || std::is_same_v<T, StepFreq>) {
          for (const auto& s : v.table.segments) {
            if (s.t_start < 0.0 || s.t_end > record + slack) {
              Obj::fail("segment [" + std::to_string(s.t_start) + ", " + std::to_string(s.t_end) +
                            "] s lies outside the record",
                        {"sut"});
            }
          }
        } else if constexpr (std::is_same_v<T, MixedWithLo>) {
          check_tables_in_record(*v.base, record);
        } else if constexpr (std::is_same_v<T, Sum>) {
          for (const auto& c : v.components) check_tables_in_record(c, record);
        }
      },
      d.variant);
}

template <typename F>
void guarded(const Path& path, F&& check) {
  try {
    check();
  } catch (const PathError&) {
    throw;
  } catch (const std::exception& e) {
    throw PathError{e.what(), path};
  }
}

void validate_paths(const ExperimentConfig& cfg) {
  guarded({"sweep"}, [&] {
    make_sweep_plan(cfg.sweep.f1, cfg.sweep.f2, cfg.sweep.period, cfg.sweep.n_periods);
  });
  guarded({"sut"}, [&] { validate_descriptor(cfg.sut); });
  check_tables_in_record(cfg.sut, cfg.sweep.record_duration());
  guarded({"gain"}, [&] {
    if (!(cfg.gain.fwhm > 0.0)) throw InvalidArgument("fwhm must be positive");
    if (!(cfg.gain.peak_gain > 0.0)) throw InvalidArgument("peak_gain must be positive");
    if (!(cfg.gain.brillouin_shift > 0.0)) throw InvalidArgument("brillouin_shift must be positive");
  });
  guarded({"reference"}, [&] {
    if (cfg.reference.amplitude < 0.0) throw InvalidArgument("amplitude must be >= 0");
    if (!(cfg.reference.guard_fraction > 0.0 && cfg.reference.guard_fraction < 1.0)) {
      throw InvalidArgument("guard_fraction must lie in (0, 1)");
    }
    validate_reference(cfg.reference, cfg.sweep, cfg.gain.center());
  });
  if (cfg.sample_rate && !(*cfg.sample_rate > 0.0)) {
    throw PathError{"sample_rate must be positive", {"sample_rate"}};
  }
  const double fs = effective_sample_rate(cfg);
  const double f_max = drive_max_frequency(cfg);
  if (f_max >= 0.5 * fs) {
    throw PathError{"signal reaches " + std::to_string(f_max) + " Hz, above the Nyquist frequency " +
                        std::to_string(0.5 * fs) + " Hz",
                    {cfg.sample_rate ? "sample_rate" : "sut"}};
  }
  if (cfg.fidelity == FidelityMode::full_field) {
    const double center = effective_frame(cfg).center;
    const double lo = -cfg.sweep.f2 - f_max - center;
    const double hi = -cfg.sweep.f1 + f_max - center;
    if (std::max(std::abs(lo), std::abs(hi)) >= 0.5 * fs) {
      throw PathError{"modulated sweep does not fit the sampled frame",
                      {cfg.sample_rate ? "sample_rate" : (cfg.frame_center ? "frame_center" : "sweep")}};
    }
  }
  guarded({"receiver"}, [&] { validate_receiver(cfg.receiver, fs); });
  if (cfg.receiver.reference_threshold <= 0.0 || cfg.receiver.reference_threshold >= 1.0) {
    throw PathError{"reference_threshold must lie in (0, 1)", {"receiver", "reference_threshold"}};
  }
  static const std::set<std::string> kFormats = {"csv", "pgm", "json", "truth"};
  for (const auto& f : cfg.output.formats) {
    if (!kFormats.count(f)) throw PathError{"unknown output format '" + f + "'", {"output", "formats"}};
  }
  if (!(cfg.output.db_floor < 0.0)) {
    throw PathError{"db_floor must be negative", {"output", "db_floor"}};
  }
}

}  // namespace

const char* fidelity_name(FidelityMode mode) {
  switch (mode) {
    case FidelityMode::full_field: return "full";
    case FidelityMode::lorentzian_analytic: return "lorentzian";
    case FidelityMode::dirac: return "dirac";
  }
  return "full";
}

FidelityMode parse_fidelity(const std::string& name) {
  if (name == "full") return FidelityMode::full_field;
  if (name == "lorentzian") return FidelityMode::lorentzian_analytic;
  if (name == "dirac") return FidelityMode::dirac;
  throw InvalidArgument("unknown fidelity mode '" + name + "' (expected full, lorentzian or dirac)");
}

const char* calibration_name(CalibrationMode mode) {
  switch (mode) {
    case CalibrationMode::inline_reference: return "inline";
    case CalibrationMode::calibration_pass: return "calibration_pass";
    case CalibrationMode::nominal: return "nominal";
  }
  return "inline";
}

double drive_max_frequency(const ExperimentConfig& cfg) {
  const double ref = cfg.reference.amplitude != 0.0 ? cfg.reference.frequency : 0.0;
  return std::max(max_frequency(cfg.sut), ref);
}

double effective_sample_rate(const ExperimentConfig& cfg) {
  if (cfg.sample_rate) return *cfg.sample_rate;
  const double need = required_sample_rate(cfg.sweep, drive_max_frequency(cfg));
  const double osc = cfg.receiver.osc_sample_rate;
  return std::max(1.0, std::ceil(need / osc - 1e-9)) * osc;
}

FrameSpec effective_frame(const ExperimentConfig& cfg) {
  if (cfg.frame_center) return FrameSpec{*cfg.frame_center};
  return FrameSpec::centered_on(cfg.sweep);
}

void validate_config(const ExperimentConfig& cfg) {
  try {
    validate_paths(cfg);
  } catch (const PathError& e) {
    throw ConfigError(join(e.path) + ": " + e.message);
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte > 0 ? byte - 1 : 0), '\n'));
    throw ConfigError(std::string("malformed JSON: ") + e.what(), line);
  }

  ExperimentConfig cfg;
  try {
    Obj root(doc, {});
    cfg.name = root.str("name", cfg.name);
    {
      Obj s = root.child("sut");
      cfg.sut = read_sut(s);
      s.finish();
    }
    {
      Obj s = root.child("sweep");
      const double f1 = s.num("f1");
      const double f2 = s.num("f2");
      const double period = s.num("period");
      const auto n = s.uint("n_periods", 1);
      s.finish();
      cfg.sweep.f1 = f1;
      cfg.sweep.f2 = f2;
      cfg.sweep.period = period;
      cfg.sweep.n_periods = n;
      cfg.sweep.chirp_rate = period > 0.0 ? (f2 - f1) / period : 0.0;
    }
    if (root.has("reference")) {
      Obj r = root.child("reference");
      cfg.reference.frequency = r.num("frequency", cfg.reference.frequency);
      cfg.reference.amplitude = r.num("amplitude", cfg.reference.amplitude);
      cfg.reference.guard_fraction = r.num("guard_fraction", cfg.reference.guard_fraction);
      r.finish();
    }
    if (root.has("gain")) {
      Obj g = root.child("gain");
      cfg.gain.brillouin_shift = g.num("brillouin_shift", cfg.gain.brillouin_shift);
      cfg.gain.fwhm = g.num("fwhm", cfg.gain.fwhm);
      cfg.gain.peak_gain = g.num("peak_gain", cfg.gain.peak_gain);
      cfg.gain.pump_offset = g.num("pump_offset", cfg.gain.pump_offset);
      const std::string shape = g.str("shape", shape_name(cfg.gain.shape));
      if (shape == "linear_lorentzian") {
        cfg.gain.shape = GainShape::linear_lorentzian;
      } else if (shape == "exponential_small_signal") {
        cfg.gain.shape = GainShape::exponential_small_signal;
      } else {
        Obj::fail("unknown gain shape '" + shape + "'", g.at("shape"));
      }
      g.finish();
    }
    if (root.has("receiver")) {
      Obj r = root.child("receiver");
      ReceiverSpec& rx = cfg.receiver;
      rx.pd_bandwidth = r.num("pd_bandwidth", rx.pd_bandwidth);
      rx.osc_sample_rate = r.num("osc_sample_rate", rx.osc_sample_rate);
      rx.noise_sigma = r.num("noise_sigma", rx.noise_sigma);
      rx.seed = r.uint("seed", rx.seed);
      rx.n_bins = r.uint("n_bins", rx.n_bins);
      const std::string cal = r.str("calibration", calibration_name(rx.calibration));
      if (cal == "inline") {
        rx.calibration = CalibrationMode::inline_reference;
      } else if (cal == "calibration_pass") {
        rx.calibration = CalibrationMode::calibration_pass;
      } else if (cal == "nominal") {
        rx.calibration = CalibrationMode::nominal;
      } else {
        Obj::fail("unknown calibration mode '" + cal + "'", r.at("calibration"));
      }
      rx.reference_fallback = r.boolean("reference_fallback", rx.reference_fallback);
      rx.reference_threshold = r.num("reference_threshold", rx.reference_threshold);
      r.finish();
    }
    if (root.has("modulator")) {
      Obj m = root.child("modulator");
      cfg.modulator.carrier_suppression_db = m.opt_num("carrier_suppression_db");
      m.finish();
    }
    if (root.has("fidelity")) {
      const std::string mode = root.str("fidelity");
      try {
        cfg.fidelity = parse_fidelity(mode);
      } catch (const InvalidArgument& e) {
        Obj::fail(e.what(), root.at("fidelity"));
      }
    }
    cfg.sample_rate = root.opt_num("sample_rate");
    cfg.frame_center = root.opt_num("frame_center");
    if (root.has("output")) {
      Obj o = root.child("output");
      cfg.output.dir = o.str("dir", cfg.output.dir);
      if (o.has("formats")) {
        const json& f = o.raw("formats");
        if (!f.is_array()) Obj::fail("'formats' must be an array of strings", o.at("formats"));
        cfg.output.formats.clear();
        for (const auto& e : f) {
          if (!e.is_string()) Obj::fail("'formats' must be an array of strings", o.at("formats"));
          cfg.output.formats.push_back(e.get<std::string>());
        }
      }
      cfg.output.db_floor = o.num("db_floor", cfg.output.db_floor);
      o.finish();
    }
    root.finish();
    validate_paths(cfg);
  } catch (const PathError& e) {
    throw ConfigError(e.message, line_of(text, e.path));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  ordered_json j;
  j["name"] = cfg.name;
  j["sut"] = write_sut(cfg.sut);
  j["sweep"] = {{"f1", cfg.sweep.f1},
                {"f2", cfg.sweep.f2},
                {"period", cfg.sweep.period},
                {"n_periods", cfg.sweep.n_periods}};
  j["reference"] = {{"frequency", cfg.reference.frequency},
                    {"amplitude", cfg.reference.amplitude},
                    {"guard_fraction", cfg.reference.guard_fraction}};
  j["gain"] = {{"brillouin_shift", cfg.gain.brillouin_shift},
               {"fwhm", cfg.gain.fwhm},
               {"peak_gain", cfg.gain.peak_gain},
               {"pump_offset", cfg.gain.pump_offset},
               {"shape", shape_name(cfg.gain.shape)}};
  const ReceiverSpec& rx = cfg.receiver;
  j["receiver"] = {{"pd_bandwidth", rx.pd_bandwidth},
                   {"osc_sample_rate", rx.osc_sample_rate},
                   {"noise_sigma", rx.noise_sigma},
                   {"seed", rx.seed},
                   {"n_bins", rx.n_bins},
                   {"calibration", calibration_name(rx.calibration)},
                   {"reference_fallback", rx.reference_fallback},
                   {"reference_threshold", rx.reference_threshold}};
  ordered_json mod = ordered_json::object();
  if (cfg.modulator.carrier_suppression_db) {
    mod["carrier_suppression_db"] = *cfg.modulator.carrier_suppression_db;
  }
  j["modulator"] = mod;
  j["fidelity"] = fidelity_name(cfg.fidelity);
  if (cfg.sample_rate) j["sample_rate"] = *cfg.sample_rate;
  if (cfg.frame_center) j["frame_center"] = *cfg.frame_center;
  j["output"] = {{"dir", cfg.output.dir},
                 {"formats", cfg.output.formats},
                 {"db_floor", cfg.output.db_floor}};
  return j.dump(2) + "\n";
}

std::string config_digest(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : serialize_config(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bstft
