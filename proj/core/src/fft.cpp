// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#include "bstft/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "bstft/errors.hpp"

namespace bstft::fft {
namespace {

// FFTW planning is not thread-safe; execution through fftw_execute_dft on
// other arrays is. Plans are made once per (size, sign) and kept for the
// lifetime of the process.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (p == nullptr) throw InvalidArgument("fftw: unable to plan transform");
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<cplx> data, int sign) {
  if (data.empty()) return;
  fftw_plan p = cache().get(data.size(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

void forward(std::span<cplx> data) { execute(data, FFTW_FORWARD); }

void inverse(std::span<cplx> data) { execute(data, FFTW_BACKWARD); }

std::vector<cplx> forward_real(std::span<const double> x, std::size_t size) {
  if (size < x.size()) throw InvalidArgument("fft::forward_real: size shorter than input");
  std::vector<cplx> buf(size);
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
  forward(buf);
  return buf;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace bstft::fft
