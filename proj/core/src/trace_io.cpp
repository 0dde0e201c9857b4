// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/trace_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "bstft/errors.hpp"

namespace bstft {
namespace {

constexpr std::array<char, 4> kMagic{'B', 'S', 'T', 'F'};
constexpr std::uint8_t kVersion = 1;

static_assert(sizeof(double) == 8 && std::numeric_limits<double>::is_iec559);

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw InvalidArgument("BSTF: truncated stream");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void put_header(std::ostream& out, std::uint8_t kind, const TimeGrid& grid, double frame_offset) {
  out.write(kMagic.data(), kMagic.size());
  out.put(static_cast<char>(kVersion));
  out.put(static_cast<char>(kind));
  put_f64(out, grid.sample_rate);
  put_u64(out, grid.n_samples);
  put_f64(out, frame_offset);
}

}  // namespace

void write_trace(std::ostream& out, const RealTrace& trace) {
  put_header(out, 0, trace.grid(), 0.0);
  for (double x : trace.samples()) put_f64(out, x);
}

void write_trace(std::ostream& out, const ComplexTrace& trace) {
  put_header(out, 1, trace.grid(), trace.frame_offset());
  for (const auto& z : trace.samples()) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
}

void write_trace(const std::filesystem::path& path, const AnyTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("BSTF: cannot open " + path.string() + " for writing");
  std::visit([&](const auto& t) { write_trace(out, t); }, trace);
}

AnyTrace read_trace(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw InvalidArgument("BSTF: bad magic");
  const int version = in.get();
  const int kind = in.get();
  if (!in || version != kVersion) throw InvalidArgument("BSTF: unsupported version");
  if (kind != 0 && kind != 1) throw InvalidArgument("BSTF: unknown kind");
  const double sample_rate = get_f64(in);
  const std::uint64_t n = get_u64(in);
  const double frame_offset = get_f64(in);
  if (!(sample_rate > 0.0) || n == 0) throw InvalidArgument("BSTF: invalid grid");
  const TimeGrid grid{sample_rate, static_cast<std::size_t>(n), 0.0};
  if (kind == 0) {
    std::vector<double> samples(n);
    for (auto& x : samples) x = get_f64(in);
    return RealTrace(grid, std::move(samples));
  }
  std::vector<std::complex<double>> samples(n);
  for (auto& z : samples) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    z = {re, im};
  }
  return ComplexTrace(grid, std::move(samples), frame_offset);
}

AnyTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("BSTF: cannot open " + path.string());
  return read_trace(in);
}

}  // namespace bstft
