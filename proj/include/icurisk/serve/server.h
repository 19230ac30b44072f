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


#ifndef ICURISK_SERVE_SERVER_H_
#define ICURISK_SERVE_SERVER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "icurisk/interpret/ale.h"
#include "icurisk/models/artifact.h"
#include "icurisk/posterior/priors.h"

namespace icurisk::serve {

struct ServeOptions {
  std::size_t max_samples = 100000;
  std::size_t default_samples = 20000;
  uint64_t default_seed = 2024;
};

// Read-only after construction; shared by every request.
struct ServeState {
  models::ModelArtifact model;
  posterior::PriorSpec priors;
  std::map<std::string, interpret::AleCurve> ale;
  ServeOptions options;
};

// Checks that the model features and prior keys agree. DataError otherwise.
void ValidateState(const ServeState& state);

// Loads the model, the cohort priors and every ale_<feature>.csv in
// `ale_dir` (skipped when empty).
ServeState LoadServeState(const std::filesystem::path& model_path,
                          const std::filesystem::path& priors_path,
                          const std::filesystem::path& ale_dir,
                          const ServeOptions& options = {});

struct Response {
  int status = 200;
  std::string body;  // JSON
};

// Body: {"<feature>": number, ...} covering every model feature.
Response HandlePredict(const ServeState& state, std::string_view body);
// Body: {"priors": {...}, "n": count, "seed": integer}, all optional. Request
// priors replace the cohort priors feature by feature.
Response HandlePosterior(const ServeState& state, std::string_view body);
Response HandleAle(const ServeState& state, std::string_view feature);
Response HandleMeta(const ServeState& state);
Response HandleHealth();

// HTTP front end over the handlers above.
class Server {
 public:
  explicit Server(const ServeState& state);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds to `port` (0 picks a free one) and returns the bound port.
  int Bind(const std::string& host, int port);
  // Blocks until Stop() is called.
  void ListenAfterBind();
  void Stop();
  bool IsRunning() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace icurisk::serve

#endif  // ICURISK_SERVE_SERVER_H_
