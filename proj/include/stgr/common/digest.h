// Copyright 2026 The Spacetime-GR Authors.
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

#ifndef STGR_COMMON_DIGEST_H_
#define STGR_COMMON_DIGEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace stgr {

// Hex SHA-1 of `data`.
std::string Sha1Hex(std::string_view data);

// Git blob hash: sha1("blob <len>\0" + content).
std::string GitBlobHash(std::string_view content);

// Git blob hash of a file's bytes. Throws DataError when unreadable.
std::string GitBlobHashOfFile(const std::filesystem::path& path);

// Streaming SHA-1 used for parameter and index digests.
class Sha1Builder {
 public:
  Sha1Builder();
  ~Sha1Builder();
  Sha1Builder(const Sha1Builder&) = delete;
  Sha1Builder& operator=(const Sha1Builder&) = delete;

  void Update(const void* data, std::size_t size);
  void Update(std::string_view text) { Update(text.data(), text.size()); }
  std::string HexDigest();

 private:
  struct Impl;
  Impl* impl_;
};

// 64-bit FNV-1a.
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline std::uint64_t Fnv1a(const void* data, std::size_t size,
                           std::uint64_t hash = kFnvOffset) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= kFnvPrime;
  }
  return hash;
}

}  // namespace stgr

#endif  // STGR_COMMON_DIGEST_H_
