/*
 * Copyright 2026 The icurisk Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "icurisk/serve/server.h"

#include <cmath>
#include <fstream>
#include <set>

#include "httplib.h"
#include "icurisk/common/error.h"
#include "icurisk/posterior/risk.h"

namespace icurisk::serve {
namespace fs = std::filesystem;
namespace {

using Json = models::Json;

Response Error(int status, const std::string& message, const std::vector<std::string>& fields = {}) {
  Json body = {{"error", message}};
  if (!fields.empty()) body["fields"] = fields;
  return {status, body.dump()};
}

Response Ok(const Json& body) { return {200, body.dump()}; }

}  // namespace

void ValidateState(const ServeState& state) {
  std::set<std::string> model(state.model.feature_order.begin(),
                              state.model.feature_order.end());
  std::set<std::string> priors;
  for (const auto& [name, prior] : state.priors.entries()) priors.insert(name);
  if (model != priors) {
    throw DataError("model features and prior keys disagree");
  }
  for (const auto& [name, curve] : state.ale) {
    if (!model.count(name)) throw DataError("ALE curve for non-model feature '" + name + "'");
  }
}

ServeState LoadServeState(const fs::path& model_path, const fs::path& priors_path,
                          const fs::path& ale_dir, const ServeOptions& options) {
  ServeState state;
  state.model = models::LoadArtifact(model_path.string());
  state.priors = posterior::PriorSpec::Load(priors_path.string());
  state.options = options;
  if (!ale_dir.empty()) {
    for (const std::string& name : state.model.feature_order) {
      const fs::path p = ale_dir / ("ale_" + name + ".csv");
      if (!fs::exists(p)) continue;
      std::ifstream in(p);
      state.ale.emplace(name, interpret::ReadAleCsv(in, name));
    }
  }
  ValidateState(state);
  return state;
}

Response HandlePredict(const ServeState& state, std::string_view body) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    return Error(400, "body is not valid JSON");
  }
  if (!doc.is_object()) return Error(422, "body must be an object of feature values");

  const models::ModelArtifact& model = state.model;
  std::vector<std::string> wrong_type;
  std::vector<std::string> missing;
  std::vector<std::string> out_of_range;
  std::vector<std::string> unknown;
  std::vector<double> row(model.num_features());
  for (const auto& [key, value] : doc.items()) {
    if (std::find(model.feature_order.begin(), model.feature_order.end(), key) ==
        model.feature_order.end()) {
      unknown.push_back(key);
    }
  }
  for (std::size_t j = 0; j < model.num_features(); ++j) {
    const std::string& name = model.feature_order[j];
    if (!doc.contains(name)) {
      missing.push_back(name);
      continue;
    }
    const Json& v = doc[name];
    if (!v.is_number()) {
      wrong_type.push_back(name);
      continue;
    }
    row[j] = v.get<double>();
    const models::FeatureInfo* info = nullptr;
    for (const auto& fi : model.meta.feature_info) {
      if (fi.name == name) info = &fi;
    }
    bool ok = std::isfinite(row[j]);
    if (ok && info) {
      ok = row[j] >= info->min && row[j] <= info->max;
      if (info->kind == dataio::ColumnKind::kBinary) ok = row[j] == 0.0 || row[j] == 1.0;
    }
    if (!ok) out_of_range.push_back(name);
  }
  if (!wrong_type.empty()) return Error(422, "feature values must be numbers", wrong_type);
  if (!missing.empty()) return Error(400, "missing features", missing);
  if (!unknown.empty()) return Error(400, "unknown features", unknown);
  if (!out_of_range.empty()) return Error(400, "features out of range", out_of_range);

  const double risk = models::PredictOne(model, row);
  return Ok({{"risk", risk}, {"threshold", model.threshold}, {"flagged", risk >= model.threshold}});
}

Response HandlePosterior(const ServeState& state, std::string_view body) {
  Json doc = Json::object();
  if (!body.empty()) {
    try {
      doc = Json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
      return Error(400, "body is not valid JSON");
    }
  }
  if (!doc.is_object()) return Error(400, "body must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "priors" && key != "n" && key != "seed") {
      return Error(400, "unknown key '" + key + "'");
    }
  }
  std::size_t n = state.options.default_samples;
  uint64_t seed = state.options.default_seed;
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<int64_t>() < 1) {
      return Error(400, "'n' must be a positive integer");
    }
    n = doc["n"].get<std::size_t>();
    if (n > state.options.max_samples) {
      return Error(413, "'n' exceeds the cap of " + std::to_string(state.options.max_samples));
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) return Error(400, "'seed' must be a non-negative integer");
    seed = doc["seed"].get<uint64_t>();
  }
  posterior::PriorSpec priors = state.priors;
  try {
    if (doc.contains("priors")) {
      const posterior::PriorSpec request = posterior::PriorSpec::FromJson(doc["priors"]);
      std::vector<std::string> unknown;
      for (const auto& [name, prior] : request.entries()) {
        if (!priors.Find(name)) {
          unknown.push_back(name);
          continue;
        }
        priors.Set(name, prior);
      }
      if (!unknown.empty()) return Error(400, "priors for unknown features", unknown);
    }
    const posterior::PosteriorSummary summary =
        posterior::PosteriorRisk(state.model, priors, n, seed);
    return Ok(summary.ToJson());
  } catch (const icurisk::Error& e) {
    return Error(400, e.what());
  } catch (const nlohmann::json::exception& e) {
    return Error(400, e.what());
  }
}

Response HandleAle(const ServeState& state, std::string_view feature) {
  const auto it = state.ale.find(std::string(feature));
  if (it == state.ale.end()) {
    return Error(404, "no ALE curve for feature '" + std::string(feature) + "'");
  }
  return Ok(it->second.ToJson());
}

Response HandleMeta(const ServeState& state) {
  const models::ModelArtifact& m = state.model;
  Json features = Json::array();
  for (const std::string& name : m.feature_order) {
    Json f = {{"name", name}};
    for (const auto& fi : m.meta.feature_info) {
      if (fi.name != name) continue;
      f["kind"] = std::string(dataio::ColumnKindName(fi.kind));
      f["unit"] = fi.unit;
      f["min"] = fi.min;
      f["max"] = fi.max;
    }
    features.push_back(f);
  }
  Json ale = Json::array();
  for (const auto& [name, curve] : state.ale) ale.push_back(name);
  return Ok({{"family", std::string(models::FamilyName(m.family))},
             {"feature_order", m.feature_order},
             {"features", features},
             {"threshold", m.threshold},
             {"train_fingerprint", m.meta.train_fingerprint},
             {"train_rows", m.meta.train_rows},
             {"ale_features", ale},
             {"max_samples", state.options.max_samples},
             {"default_samples", state.options.default_samples},
             {"default_seed", state.options.default_seed}});
}

Response HandleHealth() { return Ok({{"status", "ok"}}); }

struct Server::Impl {
  explicit Impl(const ServeState& s) : state(s) {}
  const ServeState& state;
  httplib::Server http;
};

Server::Server(const ServeState& state) : impl_(std::make_unique<Impl>(state)) {
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  const ServeState& s = impl_->state;
  auto& http = impl_->http;
  http.Post("/predict", [&s, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, HandlePredict(s, req.body));
  });
  http.Post("/posterior", [&s, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, HandlePosterior(s, req.body));
  });
  http.Get(R"(/ale/([^/]+))", [&s, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, HandleAle(s, req.matches[1].str()));
  });
  http.Get("/model/meta", [&s, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, HandleMeta(s));
  });
  http.Get("/healthz", [reply](const httplib::Request&, httplib::Response& res) {
    reply(res, HandleHealth());
  });
  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(Json{{"error", "not found"}}.dump(), "application/json");
    }
  });
}

Server::~Server() { Stop(); }

int Server::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) throw IoError("cannot bind " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Server::ListenAfterBind() { impl_->http.listen_after_bind(); }

void Server::Stop() {
  if (impl_) impl_->http.stop();
}

bool Server::IsRunning() const { return impl_->http.is_running(); }

}  // namespace icurisk::serve
