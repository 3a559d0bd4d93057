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

#include "stgr/infer/service.h"

#include <istream>
#include <ostream>

#include "httplib.h"
#include "json.hpp"
#include "stgr/common/error.h"
#include "stgr/data/io.h"
#include "stgr/infer/decode.h"
#include "stgr/infer/export.h"

namespace stgr::infer {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Thrown for requests that cannot be served as written.
struct BadRequest {
  int status;
  std::string kind;
  std::string message;
};

Response Error(int status, const std::string& kind, const std::string& message) {
  ordered_json j;
  j["error"] = {{"status", status}, {"kind", kind}, {"message", message}};
  return {status, j.dump()};
}

RecommendRequest ParseRequest(const json& j) {
  if (!j.is_object()) throw BadRequest{400, "malformed", "request must be a JSON object"};
  for (const char* field : {"t_req", "g_req"}) {
    if (!j.contains(field)) {
      throw BadRequest{400, "malformed", std::string("missing field '") + field + "'"};
    }
  }
  RecommendRequest r;
  if (j.contains("profile")) r.profile = data::ProfileFromJson(j.at("profile"));
  if (j.contains("actions")) r.actions = data::ActionsFromJson(j.at("actions"));
  r.t_req = j.at("t_req").get<std::int64_t>();
  r.g_req = data::PointFromJson(j.at("g_req"));
  r.k = j.value("k", 10);
  if (j.contains("beam")) {
    const auto& b = j.at("beam");
    if (!b.is_array() || b.size() != 2) {
      throw BadRequest{400, "malformed", "beam must be [w_block, w_inner]"};
    }
    r.w_block = b[0].get<int>();
    r.w_inner = b[1].get<int>();
  }
  return r;
}

ModelPtr Require(const ModelPtr& m, const char* what) {
  if (!m) throw BadRequest{503, "model_missing", std::string("no ") + what + " model loaded"};
  return m;
}

ordered_json Recommend(const json& j, const ModelSet& models) {
  const RecommendRequest req = ParseRequest(j);
  const ModelPtr m = Require(models.recommend, "recommend");
  const DecodeResult res = BeamDecode(req, *m);
  ordered_json out;
  ordered_json items = ordered_json::array();
  for (const auto& r : res.items) {
    items.push_back({{"poi_id", r.poi_id},
                     {"joint_prob", r.joint_prob},
                     {"block", r.block},
                     {"inner", r.inner}});
  }
  out["recommendations"] = std::move(items);
  if (!res.warnings.empty()) out["warnings"] = res.warnings;
  return out;
}

ordered_json ScoreRequest(const json& j, const ModelSet& models) {
  const RecommendRequest req = ParseRequest(j);
  if (!j.contains("candidates") || !j.at("candidates").is_array()) {
    throw BadRequest{400, "malformed", "missing field 'candidates'"};
  }
  const auto candidates = j.at("candidates").get<std::vector<catalog::PoiId>>();
  const ModelPtr m = Require(models.score, "score");
  ordered_json out;
  out["scores"] = Score(req, candidates, *m);
  return out;
}

ordered_json Embed(const json& j, const ModelSet& models) {
  if (!j.is_object()) throw BadRequest{400, "malformed", "request must be a JSON object"};
  ordered_json out;
  if (j.contains("poi")) {
    const ModelPtr m = Require(models.embed, "embed");
    out["vector"] = PoiEmbeddings(*m, {j.at("poi").get<catalog::PoiId>()}).front();
    return out;
  }
  const RecommendRequest req = ParseRequest(j);
  const ModelPtr m = Require(models.embed, "embed");
  out["vector"] = UserEmbedding(*m, req.profile, req.actions, {req.t_req, req.g_req});
  return out;
}

}  // namespace

void Service::SetModels(ModelSet models) {
  std::lock_guard<std::mutex> lock(mu_);
  models_ = std::move(models);
}

ModelSet Service::models() const {
  std::lock_guard<std::mutex> lock(mu_);
  return models_;
}

Response Service::Handle(std::string_view endpoint, std::string_view body) const {
  const ModelSet models = this->models();
  try {
    const json j = json::parse(body);
    ordered_json out;
    if (endpoint == "/recommend") {
      out = Recommend(j, models);
    } else if (endpoint == "/score") {
      out = ScoreRequest(j, models);
    } else if (endpoint == "/embed") {
      out = Embed(j, models);
    } else {
      return Error(404, "unknown_endpoint", "no endpoint " + std::string(endpoint));
    }
    return {200, out.dump()};
  } catch (const BadRequest& e) {
    return Error(e.status, e.kind, e.message);
  } catch (const json::exception& e) {
    return Error(400, "malformed", e.what());
  } catch (const LookupError& e) {
    return Error(400, "unknown_poi", e.what());
  } catch (const UsageError& e) {
    return Error(400, "invalid", e.what());
  } catch (const DataError& e) {
    return Error(400, "invalid", e.what());
  } catch (const NumericError& e) {
    return Error(500, "numeric", e.what());
  }
}

int Service::ServeLines(std::istream& in, std::ostream& out) const {
  int answered = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "quit") break;
    const auto space = line.find(' ');
    const std::string endpoint = line.substr(0, space);
    const std::string body = space == std::string::npos ? "" : line.substr(space + 1);
    const Response r = Handle(endpoint, body);
    out << r.body << '\n' << std::flush;
    ++answered;
  }
  return answered;
}

HttpServer::HttpServer(const Service& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  for (const char* endpoint : {"/recommend", "/score", "/embed"}) {
    server_->Post(endpoint, [this, endpoint](const httplib::Request& req,
                                             httplib::Response& res) {
      const Response r = service_.Handle(endpoint, req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    });
  }
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host)
                              : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw UsageError("cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::Run() { server_->listen_after_bind(); }

void HttpServer::Stop() {
  if (server_->is_running()) server_->stop();
}

}  // namespace stgr::infer
