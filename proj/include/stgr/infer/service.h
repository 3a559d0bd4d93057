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

#ifndef STGR_INFER_SERVICE_H_
#define STGR_INFER_SERVICE_H_

#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "stgr/model/spacetime_gr.h"

namespace httplib {
class Server;
}

namespace stgr::infer {

using ModelPtr = std::shared_ptr<const model::SpacetimeGR<float>>;

// Models behind each endpoint; a null entry answers 503.
struct ModelSet {
  ModelPtr recommend;  // generative (pretrained or aligned)
  ModelPtr score;      // generative ranking SFT
  ModelPtr embed;      // embedding SFT
};

struct Response {
  int status = 200;
  std::string body;  // one-line JSON
};

// Request handling shared by the HTTP and line front ends. Requests only
// read immutable models; SetModels swaps the whole set between requests.
class Service {
 public:
  Service() = default;
  explicit Service(ModelSet models) : models_(std::move(models)) {}

  void SetModels(ModelSet models);
  ModelSet models() const;

  // endpoint is "/recommend", "/score" or "/embed". Malformed requests get
  // 400 (404 for an unknown endpoint), a missing model 503.
  Response Handle(std::string_view endpoint, std::string_view body) const;

  // "<endpoint> <json>" per line in, one JSON line out per request, until
  // EOF or a line "quit". Returns the number of requests answered.
  int ServeLines(std::istream& in, std::ostream& out) const;

 private:
  mutable std::mutex mu_;
  ModelSet models_;
};

// HTTP front end: POST /recommend, /score and /embed with JSON bodies.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws UsageError.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  void Run();
  void Stop();

 private:
  const Service& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace stgr::infer

#endif  // STGR_INFER_SERVICE_H_
