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

#include "stgr/model/checkpoint.h"

#include <bit>
#include <cstring>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "stgr/common/error.h"

namespace stgr::model {
namespace fs = std::filesystem;

static_assert(std::endian::native == std::endian::little,
              "checkpoint tensors are stored in host byte order");

namespace {

constexpr char kMagic[] = "stgr-checkpoint 1";

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void WriteTensor(const nn::Matrix<float>& m, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  const std::int32_t header[3] = {2, m.rows(), m.cols()};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(m.size() * sizeof(float)));
  if (!out) throw DataError("short write to " + path.string());
}

nn::Matrix<float> ReadTensor(const fs::path& path) {
  const std::string bytes = ReadFile(path);
  std::int32_t rank = 0;
  if (bytes.size() < sizeof(rank)) throw DataError(path.string() + ": truncated header");
  std::memcpy(&rank, bytes.data(), sizeof(rank));
  if (rank < 1 || rank > 2) {
    throw DataError(path.string() + ": unsupported rank " + std::to_string(rank));
  }
  const std::size_t header = sizeof(std::int32_t) * (1 + rank);
  if (bytes.size() < header) throw DataError(path.string() + ": truncated header");
  std::int32_t dims[2] = {1, 1};
  std::memcpy(rank == 2 ? dims : dims + 1, bytes.data() + sizeof(rank),
              sizeof(std::int32_t) * rank);
  if (dims[0] < 0 || dims[1] < 0) throw DataError(path.string() + ": negative dimension");
  nn::Matrix<float> m(dims[0], dims[1]);
  if (bytes.size() != header + m.size() * sizeof(float)) {
    throw DataError(path.string() + ": size does not match its shape header");
  }
  std::memcpy(m.data(), bytes.data() + header, m.size() * sizeof(float));
  return m;
}

void SaveCheckpoint(const SpacetimeGR<float>& model, const fs::path& dir,
                    const std::map<std::string, std::string>& meta) {
  const fs::path target = fs::absolute(dir).lexically_normal();
  const fs::path parent = target.parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  const fs::path tmp = parent / (target.filename().string() + ".tmp" + std::to_string(getpid()));
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  const ModelContext& ctx = model.context();
  {
    std::ofstream idx(tmp / "index.txt");
    ctx.index().Serialize(idx);
    if (!idx) throw DataError("cannot write index to " + tmp.string());
  }
  catalog::WriteCatalog(ctx.catalog(), tmp / "catalog.jsonl");

  std::ostringstream manifest;
  manifest << kMagic << '\n';
  for (const auto& [k, v] : model.config().ToKeyValues()) manifest << "config." << k << '=' << v << '\n';
  manifest << "vocab=" << ctx.vocab().Describe() << '\n';
  manifest << "index_digest=" << ctx.index().Digest() << '\n';
  manifest << "param_digest=" << model.params().Digest() << '\n';
  for (const auto& [k, v] : meta) {
    if (k.find_first_of("=\n") != std::string::npos || v.find('\n') != std::string::npos) {
      throw UsageError("checkpoint meta entries must be single-line key=value");
    }
    manifest << "meta." << k << '=' << v << '\n';
  }
  const auto& params = model.params();
  for (int i = 0; i < params.size(); ++i) {
    const std::string file = params.name(i) + ".bin";
    WriteTensor(params.value(i), tmp / file);
    manifest << "param=" << params.name(i) << ' ' << params.value(i).rows() << ' '
             << params.value(i).cols() << ' ' << file << '\n';
  }
  {
    std::ofstream out(tmp / "manifest.txt");
    out << manifest.str();
    if (!out) throw DataError("cannot write manifest to " + tmp.string());
  }
  // Swap the finished directory in; the previous one is removed afterwards.
  const fs::path old = parent / (target.filename().string() + ".old" + std::to_string(getpid()));
  fs::remove_all(old);
  if (fs::exists(target)) fs::rename(target, old);
  fs::rename(tmp, target);
  fs::remove_all(old);
}

LoadedCheckpoint LoadCheckpoint(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError("no checkpoint at " + dir.string());
  std::istringstream manifest(ReadFile(dir / "manifest.txt"));
  std::string line;
  if (!std::getline(manifest, line) || line != kMagic) {
    throw DataError(dir.string() + ": not a checkpoint manifest");
  }
  ModelConfig config;
  std::map<std::string, std::string> meta;
  std::string index_digest, param_digest;
  struct Entry {
    std::string name, file;
    int rows, cols;
  };
  std::vector<Entry> entries;
  int line_no = 1;
  while (std::getline(manifest, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError("manifest.txt:" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key.rfind("config.", 0) == 0) {
      std::string bad;
      if (!config.Set(key.substr(7), value, &bad)) {
        throw DataError("manifest.txt:" + std::to_string(line_no) + ": unknown config key " + bad);
      }
    } else if (key.rfind("meta.", 0) == 0) {
      meta[key.substr(5)] = value;
    } else if (key == "index_digest") {
      index_digest = value;
    } else if (key == "param_digest") {
      param_digest = value;
    } else if (key == "param") {
      std::istringstream ss(value);
      Entry e;
      if (!(ss >> e.name >> e.rows >> e.cols >> e.file)) {
        throw DataError("manifest.txt:" + std::to_string(line_no) + ": bad param record");
      }
      entries.push_back(e);
    } else if (key != "vocab") {
      throw DataError("manifest.txt:" + std::to_string(line_no) + ": unknown key " + key);
    }
  }
  catalog::Catalog cat = catalog::ReadCatalog(dir / "catalog.jsonl");
  std::ifstream idx(dir / "index.txt");
  if (!idx) throw DataError("cannot open " + (dir / "index.txt").string());
  catalog::HierarchicalIndex index = catalog::HierarchicalIndex::Deserialize(idx);
  if (index.Digest() != index_digest) {
    throw DataError(dir.string() + ": index digest does not match the manifest");
  }
  auto ctx = ModelContext::FromParts(std::move(cat), std::move(index), config);
  nn::ParameterSet<float> params;
  for (const Entry& e : entries) {
    nn::Matrix<float> m = ReadTensor(dir / e.file);
    if (m.rows() != e.rows || m.cols() != e.cols) {
      throw DataError(e.file + ": shape differs from the manifest");
    }
    params.value(params.Add(e.name, e.rows, e.cols)) = std::move(m);
  }
  if (params.Digest() != param_digest) {
    throw DataError(dir.string() + ": parameter digest does not match the manifest");
  }
  return {SpacetimeGR<float>(std::move(ctx), config, std::move(params)), std::move(meta)};
}

}  // namespace stgr::model
