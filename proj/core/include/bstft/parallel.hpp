// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace bstft {

/// Number of worker threads: BSTFT_THREADS when set to a positive integer,
/// otherwise std::thread::hardware_concurrency().
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Work is claimed dynamically; the first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bstft
