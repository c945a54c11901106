// Copyright 2026 The IRSM Authors.
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

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "json.hpp"
#include "irsm/center/center.hpp"

namespace irsm::center {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
  std::string content_type;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

int http_status(ErrorCode code);

// Management API over a center. Every response body is a JSON object with
// the store "revision".
class ApiRouter {
 public:
  explicit ApiRouter(ManagementCenter& center) : center_(center) {}

  ApiResponse handle(const ApiRequest& request);

 private:
  nlohmann::json route(const ApiRequest& request, int& status);

  ManagementCenter& center_;
};

// Serves an ApiRouter over HTTP on a background thread. When `guard` is set
// every request holds it, which serializes API calls with a simulation loop.
class ApiServer {
 public:
  explicit ApiServer(ApiRouter& router, std::mutex* guard = nullptr);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws on failure.
  int start(const std::string& host, int port);
  void stop();
  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  ApiRouter& router_;
  std::mutex* guard_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace irsm::center
