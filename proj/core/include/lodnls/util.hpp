// Copyright 2026 The lodnls Authors
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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

namespace lodnls {

/// Worker count used by the parallel loops in this library. Results never
/// depend on it: every parallel loop writes into per-index slots and all
/// reductions run in a fixed order afterwards.
struct ExecutionPolicy {
  int threads = 1;
};

/// Runs body(i) for i in [0, n) on up to policy.threads workers.
/// Exceptions thrown by body are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t n, const ExecutionPolicy& policy,
                  const std::function<void(std::size_t)>& body);

/// 64-bit FNV-1a, stable across platforms and runs. Used for cache keys.
class Fnv1a {
 public:
  Fnv1a& bytes(const void* data, std::size_t size);
  Fnv1a& str(std::string_view s) { return bytes(s.data(), s.size()); }
  template <class T>
  Fnv1a& value(const T& v) {
    return bytes(&v, sizeof(T));
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string hex64(std::uint64_t v);

}  // namespace lodnls
