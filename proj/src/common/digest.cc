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

#include "stgr/common/digest.h"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "stgr/common/error.h"

namespace stgr {
namespace {

std::string ToHex(const unsigned char* bytes, std::size_t n) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(2 * n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = kHex[bytes[i] >> 4];
    out[2 * i + 1] = kHex[bytes[i] & 0xf];
  }
  return out;
}

}  // namespace

struct Sha1Builder::Impl {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  ~Impl() { EVP_MD_CTX_free(ctx); }
};

Sha1Builder::Sha1Builder() : impl_(new Impl) {
  EVP_DigestInit_ex(impl_->ctx, EVP_sha1(), nullptr);
}

Sha1Builder::~Sha1Builder() { delete impl_; }

void Sha1Builder::Update(const void* data, std::size_t size) {
  EVP_DigestUpdate(impl_->ctx, data, size);
}

std::string Sha1Builder::HexDigest() {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(impl_->ctx, md, &len);
  EVP_DigestInit_ex(impl_->ctx, EVP_sha1(), nullptr);
  return ToHex(md, len);
}

std::string Sha1Hex(std::string_view data) {
  Sha1Builder b;
  b.Update(data);
  return b.HexDigest();
}

std::string GitBlobHash(std::string_view content) {
  Sha1Builder b;
  const std::string header = "blob " + std::to_string(content.size());
  b.Update(header.data(), header.size() + 1);  // includes the NUL
  b.Update(content);
  return b.HexDigest();
}

std::string GitBlobHashOfFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return GitBlobHash(ss.str());
}

}  // namespace stgr
