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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lodnls/lod.hpp"

namespace lodnls {

/// Identifies a cached basis: mesh parameters, coefficient fingerprints,
/// localization and shift.
struct LodCacheKey {
  int coarse_n_side = 0;
  int factor = 1;
  int layers = 0;
  double sigma = 0.0;
  std::uint64_t b_fingerprint = 0;
  std::uint64_t v_fingerprint = 0;

  std::uint64_t hash() const;
  std::string file_name() const;
};

LodCacheKey make_cache_key(const RefinementMap& refinement, const BilinearFormSpec& form,
                           int layers);

/// Binary layout (little endian): magic "LODNLSB\0", u32 version, key fields,
/// CSC arrays of the basis, support lists, then a_lod and m_lod in CSR.
inline constexpr std::uint32_t kLodCacheVersion = 1;

void write_basis(const std::filesystem::path& file, const LodCacheKey& key,
                 const LodBasis& basis);
/// Empty when the file is missing, has another version, or another key.
std::optional<LodBasis> read_basis(const std::filesystem::path& file, const LodCacheKey& key);

/// Directory-backed cache. Writes go to a temporary file and are renamed
/// into place so concurrent readers never see partial files.
class LodCache {
 public:
  explicit LodCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::optional<LodBasis> load(const LodCacheKey& key) const;
  void store(const LodCacheKey& key, const LodBasis& basis) const;

  struct Entry {
    std::filesystem::path file;
    std::uintmax_t bytes = 0;
  };
  std::vector<Entry> entries() const;
  std::size_t clear() const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

/// Cached build: loads when present, otherwise builds and stores.
LodBasis cached_lod_basis(const LodBuilder& builder, int layers, const ExecutionPolicy& policy,
                          const LodCache* cache);

}  // namespace lodnls
