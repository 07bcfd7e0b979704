/*
 * Copyright 2026 The lxq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LXQ_SERVICE_H_
#define LXQ_SERVICE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>

namespace lxq {

struct ServiceConfig {
  std::string listen = "127.0.0.1:8080";
  std::string data_dir;            // corpora loaded at start, uploads saved here
  std::string session_store_path;  // empty: in-memory sessions
  std::size_t max_upload_bytes = 64u << 20;
};

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Transport-independent request handler for the JSON API:
//
//   GET  /corpora                         corpus summaries
//   POST /corpora                         XML body -> summary (201, or 200
//                                         when the content is already known)
//   GET  /corpora/{id}                    summary with catalog
//   POST /corpora/{id}/query              {dsl | docFilters+slots, offset, limit}
//   POST /corpora/{id}/exercises          {dsl | ..., count, seed, answerMode,
//                                          distractorPolicy, k}
//   GET  /corpora/{id}/stats/errors       ?depth=&l1=&level=&min=
//   POST /sessions                        {corpusId, exerciseRequest, config}
//   POST /sessions/{id}/answer            {answer}
//
// Failures carry {"error": {"status", "code", "message", "location"?}}.
class Service {
 public:
  explicit Service(ServiceConfig config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  HttpResponse Handle(const HttpRequest& request);

  // Registers every *.xml file of the data directory; returns how many.
  std::size_t LoadDataDir();

  const ServiceConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Short content hash used as corpus id.
std::string CorpusId(std::string_view xml);

// ApiError body for responses produced outside Service::Handle.
std::string ApiErrorBody(int status, std::string_view code, std::string_view message);

// HTTP/1.1 front end over a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  // Binds host:port (port 0 picks a free port) and serves on a background
  // thread. Returns the bound port; throws std::runtime_error on failure.
  int Start(const std::string& host, int port);
  // Blocks until Stop() from another thread.
  void Run(const std::string& host, int port);
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Splits "host:port"; throws std::invalid_argument.
std::pair<std::string, int> ParseListenAddress(const std::string& listen);

}  // namespace lxq

#endif  // LXQ_SERVICE_H_
