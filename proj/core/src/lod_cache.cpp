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

#include "lodnls/lod_cache.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "lodnls/error.hpp"

namespace lodnls {

namespace {

constexpr char kMagic[8] = {'L', 'O', 'D', 'N', 'L', 'S', 'B', '\0'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  template <class T>
  void put(const T& v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  template <class T>
  void put_array(const T* data, std::size_t n) {
    put<std::uint64_t>(n);
    out_.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(T)));
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  template <class T>
  T get() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in_) throw_error(ErrorCode::kIo, "LOD cache file is truncated");
    return v;
  }
  template <class T>
  std::vector<T> get_array(std::uint64_t limit) {
    const auto n = get<std::uint64_t>();
    if (n > limit) throw_error(ErrorCode::kIo, "LOD cache file is corrupt");
    std::vector<T> v(n);
    in_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
    if (!in_) throw_error(ErrorCode::kIo, "LOD cache file is truncated");
    return v;
  }

 private:
  std::istream& in_;
};

template <class Sparse>
void put_sparse(Writer& w, const Sparse& m) {
  Sparse c = m;
  c.makeCompressed();
  w.put<std::int64_t>(c.rows());
  w.put<std::int64_t>(c.cols());
  w.put_array(c.outerIndexPtr(), static_cast<std::size_t>(c.outerSize()) + 1);
  w.put_array(c.innerIndexPtr(), static_cast<std::size_t>(c.nonZeros()));
  w.put_array(c.valuePtr(), static_cast<std::size_t>(c.nonZeros()));
}

template <class Sparse>
Sparse get_sparse(Reader& r) {
  constexpr std::uint64_t kLimit = 1ULL << 36;
  const auto rows = r.get<std::int64_t>();
  const auto cols = r.get<std::int64_t>();
  if (rows < 0 || cols < 0) throw_error(ErrorCode::kIo, "LOD cache file is corrupt");
  const auto outer = r.get_array<int>(kLimit);
  const auto inner = r.get_array<int>(kLimit);
  const auto values = r.get_array<double>(kLimit);
  const std::int64_t outer_size = Sparse::IsRowMajor ? rows : cols;
  if (static_cast<std::int64_t>(outer.size()) != outer_size + 1 || inner.size() != values.size() ||
      outer.back() != static_cast<int>(values.size())) {
    throw_error(ErrorCode::kIo, "LOD cache file is corrupt");
  }
  Sparse m(rows, cols);
  m.resizeNonZeros(static_cast<Eigen::Index>(values.size()));
  std::memcpy(m.outerIndexPtr(), outer.data(), outer.size() * sizeof(int));
  std::memcpy(m.innerIndexPtr(), inner.data(), inner.size() * sizeof(int));
  std::memcpy(m.valuePtr(), values.data(), values.size() * sizeof(double));
  return m;
}

void put_key(Writer& w, const LodCacheKey& key) {
  w.put<std::int32_t>(key.coarse_n_side);
  w.put<std::int32_t>(key.factor);
  w.put<std::int32_t>(key.layers);
  w.put<double>(key.sigma);
  w.put<std::uint64_t>(key.b_fingerprint);
  w.put<std::uint64_t>(key.v_fingerprint);
}

bool same_key(const LodCacheKey& a, const LodCacheKey& b) {
  return a.coarse_n_side == b.coarse_n_side && a.factor == b.factor && a.layers == b.layers &&
         a.sigma == b.sigma && a.b_fingerprint == b.b_fingerprint &&
         a.v_fingerprint == b.v_fingerprint;
}

}  // namespace

std::uint64_t LodCacheKey::hash() const {
  Fnv1a h;
  h.value(kLodCacheVersion).value(coarse_n_side).value(factor).value(layers).value(sigma);
  h.value(b_fingerprint).value(v_fingerprint);
  return h.digest();
}

std::string LodCacheKey::file_name() const {
  std::ostringstream name;
  name << "lod_H" << coarse_n_side << "_r" << factor << "_l" << layers << "_" << hex64(hash())
       << ".bin";
  return name.str();
}

LodCacheKey make_cache_key(const RefinementMap& refinement, const BilinearFormSpec& form,
                           int layers) {
  LodCacheKey key;
  key.coarse_n_side = refinement.coarse().n_side();
  key.factor = refinement.factor();
  key.layers = layers;
  key.sigma = form.sigma;
  key.b_fingerprint = form.b.fingerprint();
  key.v_fingerprint = form.V.fingerprint();
  return key;
}

void write_basis(const std::filesystem::path& file, const LodCacheKey& key,
                 const LodBasis& basis) {
  static std::atomic<unsigned> counter{0};
  std::ostringstream suffix;
  suffix << ".tmp" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "_"
         << counter++;
  const std::filesystem::path tmp = file.string() + suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw_error(ErrorCode::kIo, "cannot write " + tmp.string());
    Writer w(out);
    out.write(kMagic, sizeof(kMagic));
    w.put<std::uint32_t>(kLodCacheVersion);
    put_key(w, key);
    w.put<std::int32_t>(basis.layers);
    w.put<double>(basis.sigma);
    w.put<std::int32_t>(basis.coarse_n_side);
    w.put<std::int32_t>(basis.factor);
    put_sparse(w, basis.basis);
    w.put<std::uint64_t>(basis.support.size());
    for (const auto& s : basis.support) w.put_array(s.data(), s.size());
    put_sparse(w, basis.a_lod);
    put_sparse(w, basis.m_lod);
    out.flush();
    if (!out) throw_error(ErrorCode::kIo, "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw_error(ErrorCode::kIo, "cannot commit " + file.string());
  }
}

std::optional<LodBasis> read_basis(const std::filesystem::path& file, const LodCacheKey& key) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) return std::nullopt;
  try {
    Reader r(in);
    if (r.get<std::uint32_t>() != kLodCacheVersion) return std::nullopt;
    LodCacheKey stored;
    stored.coarse_n_side = r.get<std::int32_t>();
    stored.factor = r.get<std::int32_t>();
    stored.layers = r.get<std::int32_t>();
    stored.sigma = r.get<double>();
    stored.b_fingerprint = r.get<std::uint64_t>();
    stored.v_fingerprint = r.get<std::uint64_t>();
    if (!same_key(stored, key)) return std::nullopt;
    LodBasis basis;
    basis.layers = r.get<std::int32_t>();
    basis.sigma = r.get<double>();
    basis.coarse_n_side = r.get<std::int32_t>();
    basis.factor = r.get<std::int32_t>();
    basis.basis = get_sparse<BasisMatrix>(r);
    const auto columns = r.get<std::uint64_t>();
    if (columns != static_cast<std::uint64_t>(basis.basis.cols())) return std::nullopt;
    basis.support.resize(columns);
    for (auto& s : basis.support) s = r.get_array<int>(static_cast<std::uint64_t>(basis.basis.rows()));
    basis.a_lod = get_sparse<SparseMatrix>(r);
    basis.m_lod = get_sparse<SparseMatrix>(r);
    return basis;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<LodBasis> LodCache::load(const LodCacheKey& key) const {
  return read_basis(dir_ / key.file_name(), key);
}

void LodCache::store(const LodCacheKey& key, const LodBasis& basis) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw_error(ErrorCode::kIo, "cannot create cache directory " + dir_.string());
  write_basis(dir_ / key.file_name(), key, basis);
}

std::vector<LodCache::Entry> LodCache::entries() const {
  std::vector<Entry> out;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir_, ec)) return out;
  for (const auto& item : std::filesystem::directory_iterator(dir_)) {
    if (!item.is_regular_file() || item.path().extension() != ".bin") continue;
    out.push_back({item.path(), item.file_size()});
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.file < b.file; });
  return out;
}

std::size_t LodCache::clear() const {
  std::size_t removed = 0;
  for (const auto& e : entries()) {
    std::error_code ec;
    if (std::filesystem::remove(e.file, ec)) ++removed;
  }
  return removed;
}

LodBasis cached_lod_basis(const LodBuilder& builder, int layers, const ExecutionPolicy& policy,
                          const LodCache* cache) {
  if (cache == nullptr) return builder.build(layers, policy);
  const LodCacheKey key = make_cache_key(builder.refinement(), builder.operators().form(), layers);
  if (auto hit = cache->load(key)) return std::move(*hit);
  LodBasis basis = builder.build(layers, policy);
  cache->store(key, basis);
  return basis;
}

}  // namespace lodnls
