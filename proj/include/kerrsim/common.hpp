// Copyright 2026 The kerrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace kerrsim {

inline constexpr const char* version = "0.1.0";

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Non-fatal diagnostic attached to a result when a validity assumption of
/// the underlying approximation is not met.  `value` carries the violated
/// ratio or margin so callers can judge how far outside the regime they are.
struct ValidityWarning {
  std::string code;
  std::string message;
  double value = 0.0;
};

namespace detail {

/// Runs fn(i) for i in [0, count) on up to `threads` worker threads.
/// Work is striped by index; callers keep determinism by writing results
/// into per-index slots and reducing in index order afterwards.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads < 1) threads = 1;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

}  // namespace kerrsim
