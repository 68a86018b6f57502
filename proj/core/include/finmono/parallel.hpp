// Copyright 2026 The finmono Authors
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

#include <stdexcept>
#include <thread>
#include <vector>

namespace finmono {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Splits [0, n) into at most `jobs` contiguous chunks and runs
// fn(chunk_index, begin, end) on each, one thread per chunk. Callers keep
// determinism by collecting per-chunk results and merging them in chunk
// order. Exceptions from workers are rethrown on the calling thread.
template <class Fn>
inline int parallel_chunks(long long n, int jobs, Fn&& fn) {
  if (n <= 0) return 0;
  const int chunks = static_cast<int>(std::min<long long>(std::max(jobs, 1), n));
  if (chunks == 1) {
    fn(0, 0LL, n);
    return 1;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(chunks);
  const long long per = n / chunks, extra = n % chunks;
  long long begin = 0;
  for (int c = 0; c < chunks; ++c) {
    const long long len = per + (c < extra ? 1 : 0);
    const long long end = begin + len;
    workers.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return chunks;
}

}  // namespace finmono
