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

#include "lxq/service.h"

#include <httplib.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <shared_mutex>
#include <sstream>
#include <thread>

#include "json_internal.h"
#include "lxq/concordance.h"
#include "lxq/corpus_xml.h"
#include "lxq/errors.h"
#include "lxq/exercise.h"
#include "lxq/index.h"
#include "lxq/session.h"
#include "lxq/session_store.h"
#include "lxq/stats.h"

namespace lxq {

using json_internal::Dump;
using json_internal::json;

namespace {

constexpr std::int64_t kDefaultLimit = 50;
constexpr std::int64_t kMaxLimit = 1000;

class ApiException : public std::runtime_error {
 public:
  ApiException(int status, std::string code, const std::string& message,
               json location = nullptr)
      : std::runtime_error(message),
        status_(status),
        code_(std::move(code)),
        location_(std::move(location)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }
  const json& location() const { return location_; }

 private:
  int status_;
  std::string code_;
  json location_;
};

json ErrorJson(int status, std::string_view code, std::string_view message,
               const json& location = nullptr) {
  json err = {{"status", status}, {"code", code}, {"message", message}};
  if (!location.is_null()) err["location"] = location;
  return {{"error", err}};
}

HttpResponse Respond(int status, const json& body) { return {status, "application/json", Dump(body)}; }
HttpResponse RespondRaw(int status, std::string body) {
  return {status, "application/json", std::move(body)};
}

json ParseBody(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    json v = json::parse(body);
    if (!v.is_object()) throw ApiException(400, "bad_request", "request body must be a JSON object");
    return v;
  } catch (const json::parse_error& e) {
    throw ApiException(400, "bad_request", std::string("malformed JSON body: ") + e.what());
  }
}

std::int64_t IntOr(const json& body, const char* name, std::int64_t fallback) {
  const auto it = body.find(name);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_number_integer())
    throw ApiException(400, "bad_request", std::string("'") + name + "' must be an integer");
  return it->get<std::int64_t>();
}

std::string StringOr(const json& body, const char* name, std::string fallback) {
  const auto it = body.find(name);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_string())
    throw ApiException(400, "bad_request", std::string("'") + name + "' must be a string");
  return it->get<std::string>();
}

// Accepts {"dsl": "..."}, {"query": {structured}} or the structured fields
// inline ({"docFilters": ..., "slots": ...}).
PatternQuery QueryFromRequest(const json& body) {
  if (const auto it = body.find("dsl"); it != body.end() && !it->is_null()) {
    if (!it->is_string()) throw ApiException(400, "bad_request", "'dsl' must be a string");
    return ParseQuery(it->get<std::string>());
  }
  if (const auto it = body.find("query"); it != body.end() && !it->is_null())
    return json_internal::QueryFromJsonValue(*it);
  if (body.contains("slots")) return json_internal::QueryFromJsonValue(body);
  throw ApiException(400, "bad_request", "request needs 'dsl' or a structured query");
}

ExerciseOptions ExerciseOptionsFromRequest(const json& body) {
  ExerciseOptions options;
  const auto count = IntOr(body, "count", 10);
  if (count < 1) throw ApiException(400, "invalid_argument", "'count' must be at least 1");
  options.count = static_cast<std::size_t>(count);
  const auto seed_it = body.find("seed");
  if (seed_it != body.end() && !seed_it->is_null()) {
    if (!seed_it->is_number_integer() || (seed_it->is_number_integer() && !seed_it->is_number_unsigned() &&
                                          seed_it->get<std::int64_t>() < 0))
      throw ApiException(400, "bad_request", "'seed' must be a non-negative integer");
    options.seed = seed_it->get<std::uint64_t>();
  }
  const auto mode = AnswerModeFromName(StringOr(body, "answerMode", "corrected"));
  if (!mode) throw ApiException(400, "invalid_argument", "answerMode must be 'as-written' or 'corrected'");
  options.answer_mode = *mode;
  const auto policy = DistractorPolicyFromName(StringOr(body, "distractorPolicy", "attested-errors"));
  if (!policy) {
    throw ApiException(400, "invalid_argument",
                       "distractorPolicy must be 'none', 'same-lemma' or 'attested-errors'");
  }
  options.distractor_policy = *policy;
  const auto k = IntOr(body, "k", 3);
  if (k < 0) throw ApiException(400, "invalid_argument", "'k' must be non-negative");
  options.distractor_count = static_cast<std::size_t>(k);
  return options;
}

std::vector<std::string> SplitPath(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream in(path);
  std::string part;
  while (std::getline(in, part, '/'))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

std::uint64_t Fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Remedial seeds differ per item but depend only on the exercise seed.
std::uint64_t RemedialSeed(std::uint64_t seed, std::size_t item) {
  return seed ^ (0x9E3779B97F4A7C15ull * (item + 1));
}

}  // namespace

std::string CorpusId(std::string_view xml) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(Fnv1a(xml)));
  return std::string(buf, 12);
}

std::string ApiErrorBody(int status, std::string_view code, std::string_view message) {
  return Dump(ErrorJson(status, code, message));
}

std::pair<std::string, int> ParseListenAddress(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw std::invalid_argument("listen address must be host:port");
  std::string host = listen.substr(0, colon);
  if (host.empty()) host = "0.0.0.0";
  int port = -1;
  const auto* first = listen.data() + colon + 1;
  const auto* last = listen.data() + listen.size();
  const auto [ptr, ec] = std::from_chars(first, last, port);
  if (ec != std::errc() || ptr != last || port < 0 || port > 65535)
    throw std::invalid_argument("invalid port in listen address '" + listen + "'");
  return {host, port};
}

struct Service::Impl {
  struct CorpusEntry {
    std::string id;
    std::shared_ptr<const CorpusIndex> index;
  };

  ServiceConfig config;
  mutable std::shared_mutex registry_mu;
  std::map<std::string, std::shared_ptr<const CorpusEntry>> corpora;
  std::map<std::string, std::string> ids_by_name;

  std::unique_ptr<SessionStore> sessions;
  std::mutex session_mu;  // guards session_locks and next_session
  std::map<std::string, std::shared_ptr<std::mutex>> session_locks;
  std::uint64_t next_session = 1;

  std::shared_ptr<const CorpusEntry> FindCorpus(const std::string& id) const {
    std::shared_lock lock(registry_mu);
    const auto it = corpora.find(id);
    if (it == corpora.end())
      throw ApiException(404, "corpus_not_found", "no corpus with id '" + id + "'");
    return it->second;
  }

  // Returns (status, entry): 201 for a new corpus, 200 for known content.
  std::pair<int, std::shared_ptr<const CorpusEntry>> Register(const std::string& xml,
                                                               bool persist) {
    const std::string id = CorpusId(xml);
    {
      std::shared_lock lock(registry_mu);
      if (const auto it = corpora.find(id); it != corpora.end()) return {200, it->second};
    }
    auto corpus = std::make_shared<const Corpus>(ParseCorpus(xml));
    auto entry = std::make_shared<CorpusEntry>();
    entry->id = id;
    entry->index = std::make_shared<const CorpusIndex>(CorpusIndex::Build(corpus));

    std::unique_lock lock(registry_mu);
    if (const auto it = corpora.find(id); it != corpora.end()) return {200, it->second};
    if (const auto it = ids_by_name.find(corpus->name); it != ids_by_name.end()) {
      throw ApiException(409, "duplicate_corpus_name",
                         "a different corpus named '" + corpus->name + "' exists (id " +
                             it->second + ")");
    }
    if (persist && !config.data_dir.empty()) {
      const auto path = std::filesystem::path(config.data_dir) / (id + ".xml");
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << xml;
      if (!out) throw std::runtime_error("cannot write " + path.string());
    }
    corpora[id] = entry;
    ids_by_name[corpus->name] = id;
    return {201, entry};
  }

  std::shared_ptr<std::mutex> SessionLock(const std::string& id) {
    std::lock_guard lock(session_mu);
    auto& slot = session_locks[id];
    if (!slot) slot = std::make_shared<std::mutex>();
    return slot;
  }

  std::string NewSessionId() {
    std::lock_guard lock(session_mu);
    while (true) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "s%06llu", static_cast<unsigned long long>(next_session++));
      if (!sessions->Get(buf)) return buf;
    }
  }

  HttpResponse Route(const HttpRequest& req);
  HttpResponse ListCorpora();
  HttpResponse Upload(const HttpRequest& req);
  HttpResponse Query(const std::string& id, const json& body);
  HttpResponse Exercises(const std::string& id, const json& body);
  HttpResponse Stats(const std::string& id, const HttpRequest& req);
  HttpResponse CreateSession(const json& body);
  HttpResponse Answer(const std::string& id, const json& body);
  HttpResponse SessionStatus(const std::string& id);
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  impl_->sessions = MakeSessionStore(impl_->config.session_store_path);
}

Service::~Service() = default;

const ServiceConfig& Service::config() const { return impl_->config; }

std::size_t Service::LoadDataDir() {
  namespace fs = std::filesystem;
  if (impl_->config.data_dir.empty()) return 0;
  const fs::path dir(impl_->config.data_dir);
  if (!fs::exists(dir)) fs::create_directories(dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".xml") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::size_t loaded = 0;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      impl_->Register(buf.str(), false);
      ++loaded;
    } catch (const std::exception& e) {
      std::cerr << "skipping " << file.string() << ": " << e.what() << "\n";
    }
  }
  return loaded;
}

HttpResponse Service::Handle(const HttpRequest& request) {
  try {
    return impl_->Route(request);
  } catch (const ApiException& e) {
    return Respond(e.status(), ErrorJson(e.status(), e.code(), e.what(), e.location()));
  } catch (const ParseError& e) {
    return Respond(400, ErrorJson(400, "xml_malformed", e.what(), {{"line", e.line()}}));
  } catch (const ValidationError& e) {
    return Respond(400, ErrorJson(400, "corpus_invalid", e.what(),
                                  {{"textId", e.text_id()}, {"sentence", e.sentence()}}));
  } catch (const QuerySyntaxError& e) {
    return Respond(400, ErrorJson(400, "query_syntax", e.what(), {{"column", e.column()}}));
  } catch (const JsonShapeError& e) {
    return Respond(400, ErrorJson(400, "bad_request", e.what()));
  } catch (const json::exception& e) {
    return Respond(400, ErrorJson(400, "bad_request", e.what()));
  } catch (const InvalidQueryError& e) {
    return Respond(422, ErrorJson(422, "invalid_query", e.what()));
  } catch (const ArgumentError& e) {
    return Respond(400, ErrorJson(400, "invalid_argument", e.what()));
  } catch (const StateError& e) {
    return Respond(409, ErrorJson(409, "session_finished", e.what()));
  } catch (const std::exception& e) {
    return Respond(500, ErrorJson(500, "internal", e.what()));
  }
}

HttpResponse Service::Impl::Route(const HttpRequest& req) {
  const auto parts = SplitPath(req.path);
  auto method_is = [&](const char* m) {
    if (req.method != m)
      throw ApiException(405, "method_not_allowed", req.method + " not allowed on " + req.path);
  };
  if (!parts.empty() && parts[0] == "corpora") {
    if (parts.size() == 1) {
      if (req.method == "GET") return ListCorpora();
      method_is("POST");
      return Upload(req);
    }
    const std::string& id = parts[1];
    if (parts.size() == 2) {
      method_is("GET");
      return Respond(200, json_internal::CorpusSummary(id, FindCorpus(id)->index->corpus()));
    }
    if (parts.size() == 3 && parts[2] == "query") {
      method_is("POST");
      return Query(id, ParseBody(req.body));
    }
    if (parts.size() == 3 && parts[2] == "exercises") {
      method_is("POST");
      return Exercises(id, ParseBody(req.body));
    }
    if (parts.size() == 4 && parts[2] == "stats" && parts[3] == "errors") {
      method_is("GET");
      return Stats(id, req);
    }
  } else if (!parts.empty() && parts[0] == "sessions") {
    if (parts.size() == 1) {
      method_is("POST");
      return CreateSession(ParseBody(req.body));
    }
    if (parts.size() == 2) {
      method_is("GET");
      return SessionStatus(parts[1]);
    }
    if (parts.size() == 3 && parts[2] == "answer") {
      method_is("POST");
      return Answer(parts[1], ParseBody(req.body));
    }
  }
  throw ApiException(404, "not_found", "no route for " + req.method + " " + req.path);
}

HttpResponse Service::Impl::ListCorpora() {
  json list = json::array();
  std::shared_lock lock(registry_mu);
  for (const auto& [id, entry] : corpora)
    list.push_back(json_internal::CorpusSummary(id, entry->index->corpus()));
  return Respond(200, {{"corpora", list}});
}

HttpResponse Service::Impl::Upload(const HttpRequest& req) {
  if (req.body.size() > config.max_upload_bytes) {
    throw ApiException(413, "payload_too_large",
                       "corpus exceeds the upload limit of " +
                           std::to_string(config.max_upload_bytes) + " bytes");
  }
  const auto [status, entry] = Register(req.body, true);
  return Respond(status, json_internal::CorpusSummary(entry->id, entry->index->corpus()));
}

HttpResponse Service::Impl::Query(const std::string& id, const json& body) {
  const auto entry = FindCorpus(id);
  const PatternQuery query = QueryFromRequest(body);
  const std::int64_t offset = IntOr(body, "offset", 0);
  const std::int64_t limit = std::min(IntOr(body, "limit", kDefaultLimit), kMaxLimit);
  const ResultPage page = RunQuery(*entry->index, query, offset, limit);
  return RespondRaw(200, QueryResponseBody(page, query));
}

HttpResponse Service::Impl::Exercises(const std::string& id, const json& body) {
  const auto entry = FindCorpus(id);
  const PatternQuery query = QueryFromRequest(body);
  const ExerciseSet set = GenerateItems(*entry->index, query, ExerciseOptionsFromRequest(body));
  return RespondRaw(200, ExerciseSetBody(set));
}

HttpResponse Service::Impl::Stats(const std::string& id, const HttpRequest& req) {
  const auto entry = FindCorpus(id);
  auto int_param = [&](const char* name, std::int64_t fallback) {
    const auto it = req.params.find(name);
    if (it == req.params.end() || it->second.empty()) return fallback;
    std::int64_t v = 0;
    const auto& s = it->second;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ApiException(400, "invalid_argument", std::string("'") + name + "' must be an integer");
    return v;
  };
  auto str_param = [&](const char* name) -> std::optional<std::string> {
    const auto it = req.params.find(name);
    if (it == req.params.end() || it->second.empty()) return std::nullopt;
    return it->second;
  };
  const auto depth = int_param("depth", 1);
  const auto min_count = int_param("min", 1);
  if (depth < 1 || depth > 64) throw ApiException(400, "invalid_argument", "'depth' must be in [1, 64]");
  const auto l1 = str_param("l1");
  const auto level = str_param("level");
  const auto profile = BuildProfile(entry->index->corpus(), static_cast<int>(depth));
  const auto rows = FrequentErrors(profile, l1, level, min_count);
  return RespondRaw(200, StatsBody(rows, static_cast<int>(depth), l1, level, min_count));
}

HttpResponse Service::Impl::CreateSession(const json& body) {
  if (!body.contains("corpusId")) throw ApiException(400, "bad_request", "missing 'corpusId'");
  const std::string corpus_id = StringOr(body, "corpusId", "");
  const auto entry = FindCorpus(corpus_id);
  const auto req_it = body.find("exerciseRequest");
  if (req_it == body.end() || !req_it->is_object())
    throw ApiException(400, "bad_request", "'exerciseRequest' must be an object");
  const PatternQuery query = QueryFromRequest(*req_it);
  const ExerciseOptions options = ExerciseOptionsFromRequest(*req_it);
  const SessionConfig config =
      json_internal::ConfigFromJson(body.contains("config") ? body["config"] : json(nullptr));

  ExerciseSet set = GenerateItems(*entry->index, query, options);
  if (set.items.empty())
    throw ApiException(422, "no_examples", "the exercise query matched no examples");
  std::vector<std::optional<GapFillItem>> remedials;
  for (std::size_t i = 0; i < set.items.size(); ++i)
    remedials.push_back(MakeRemedialItem(*entry->index, set.items[i], RemedialSeed(options.seed, i)));

  SessionState state = StartSession(std::move(set.items), config, std::move(remedials));
  const std::string session_id = NewSessionId();
  sessions->Put(session_id, json{{"corpusId", corpus_id}, {"state", json_internal::SessionJson(state)}}.dump());
  return Respond(201, {{"sessionId", session_id},
                       {"itemCount", state.items.size()},
                       {"config", json_internal::ConfigJson(state.config)},
                       {"firstItem", json_internal::PresentItem(state.CurrentItem(), state.CurrentRef())}});
}

HttpResponse Service::Impl::Answer(const std::string& id, const json& body) {
  const auto it = body.find("answer");
  if (it == body.end() || !it->is_string())
    throw ApiException(400, "bad_request", "'answer' must be a string");
  const auto lock_ptr = SessionLock(id);
  std::lock_guard lock(*lock_ptr);
  const auto record_text = sessions->Get(id);
  if (!record_text) throw ApiException(404, "session_not_found", "no session with id '" + id + "'");
  json record = json::parse(*record_text);
  SessionState state = json_internal::SessionFromJson(record.at("state"));
  if (state.finished) throw ApiException(409, "session_finished", "session '" + id + "' is finished");

  const Feedback fb = SubmitAnswer(state, it->get<std::string>());
  record["state"] = json_internal::SessionJson(state);
  sessions->Put(id, record.dump());

  json out = {{"correct", fb.correct}, {"expected", fb.expected}, {"finished", fb.finished}};
  if (fb.report) {
    out["report"] = json_internal::ReportJson(*fb.report, state.config.error_rate_threshold);
  } else {
    out["nextItem"] = json_internal::PresentItem(state.CurrentItem(), state.CurrentRef());
  }
  return Respond(200, out);
}

HttpResponse Service::Impl::SessionStatus(const std::string& id) {
  const auto record_text = sessions->Get(id);
  if (!record_text) throw ApiException(404, "session_not_found", "no session with id '" + id + "'");
  const json record = json::parse(*record_text);
  const SessionState state = json_internal::SessionFromJson(record.at("state"));
  json out = {{"sessionId", id},
              {"corpusId", record.at("corpusId")},
              {"finished", state.finished},
              {"report", json_internal::ReportJson(Report(state), state.config.error_rate_threshold)}};
  if (!state.finished)
    out["currentItem"] = json_internal::PresentItem(state.CurrentItem(), state.CurrentRef());
  return Respond(200, out);
}

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(Service& s) : service(s) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      HttpRequest r;
      r.method = req.method;
      r.path = req.path;
      r.body = req.body;
      for (const auto& [k, v] : req.params) r.params.emplace(k, v);
      const HttpResponse out = service.Handle(r);
      res.status = out.status;
      res.set_content(out.body, out.content_type);
    };
    server.Get(".*", handler);
    server.Post(".*", handler);
    server.Put(".*", handler);
    server.Delete(".*", handler);
    server.set_payload_max_length(service.config().max_upload_bytes);
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      const std::string code = res.status == 413 ? "payload_too_large" : "http_error";
      res.set_content(ApiErrorBody(res.status, code, httplib::status_message(res.status)),
                      "application/json");
    });
  }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::Run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port))
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
}

void HttpServer::Stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace lxq
