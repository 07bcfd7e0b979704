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

// lxq: command-line front end.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 runtime error.

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "lxq/concordance.h"
#include "lxq/corpus_xml.h"
#include "lxq/errors.h"
#include "lxq/exercise.h"
#include "lxq/index.h"
#include "lxq/json_io.h"
#include "lxq/pattern.h"
#include "lxq/service.h"
#include "lxq/stats.h"
#include "lxq/text_util.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// Corpus XML or index snapshot, told apart by the magic bytes.
lxq::CorpusIndex LoadIndex(const std::string& path) {
  const std::string bytes = lxq::ReadFile(path);
  if (lxq::LooksLikeSnapshot(bytes)) {
    std::istringstream in(bytes);
    return lxq::CorpusIndex::ReadSnapshot(in);
  }
  return lxq::CorpusIndex::Build(std::make_shared<const lxq::Corpus>(lxq::ParseCorpus(bytes)));
}

int RunValidate(const std::string& path, const std::string& format) {
  const auto corpus = lxq::ParseCorpusUnchecked(lxq::ReadFile(path));
  const auto findings = lxq::ValidateCorpus(corpus);
  if (format == "json") {
    std::cout << lxq::ValidationBody(findings);
  } else {
    for (const auto& f : findings) std::cout << lxq::FormatFinding(f) << "\n";
    std::cerr << path << ": " << corpus.texts.size() << " texts, " << corpus.TokenCount()
              << " tokens, " << findings.size() << " findings\n";
  }
  return lxq::HasErrors(findings) ? kExitInvalid : kExitOk;
}

int RunIndex(const std::string& path, const std::string& output) {
  const auto index = lxq::CorpusIndex::Build(
      std::make_shared<const lxq::Corpus>(lxq::ParseCorpusFile(path)));
  lxq::SaveSnapshotFile(index, output);
  std::cerr << "wrote " << output << " (" << index.corpus().TokenCount() << " tokens)\n";
  return kExitOk;
}

int RunQuery(const std::string& path, const std::string& dsl, std::int64_t offset,
             std::int64_t limit, const std::string& format) {
  const auto query = lxq::ParseQuery(dsl);
  const auto index = LoadIndex(path);
  const auto page = lxq::RunQuery(index, query, offset, limit);
  if (format == "json") {
    std::cout << lxq::QueryResponseBody(page, query);
  } else {
    std::cout << lxq::FormatConcordanceText(page);
    std::cerr << page.total << " matches\n";
  }
  return kExitOk;
}

void PrintItemsText(const lxq::ExerciseSet& set) {
  std::cout << "# seed " << set.seed << ", " << set.items.size() << " of " << set.total_matches
            << " matches\n";
  int n = 0;
  for (const auto& item : set.items) {
    std::cout << ++n << ". " << item.stem << "\n";
    std::cout << "   answer: " << item.answer << "\n";
    if (!item.distractors.empty()) {
      std::cout << "   distractors:";
      for (const auto& d : item.distractors) std::cout << " " << d;
      std::cout << "\n";
    }
    std::cout << "   source: " << item.source.text_id << " " << item.source.sentence << ":"
              << item.source.token << "\n";
  }
}

int RunGen(const std::string& path, const std::string& dsl, const lxq::ExerciseOptions& options,
           const std::string& format) {
  const auto query = lxq::ParseQuery(dsl);
  const auto index = LoadIndex(path);
  const auto set = lxq::GenerateItems(index, query, options);
  if (format == "json") {
    std::cout << lxq::ExerciseSetBody(set);
  } else {
    PrintItemsText(set);
  }
  if (set.no_examples) std::cerr << "query matched no examples\n";
  return kExitOk;
}

int RunStats(const std::string& path, int depth, const std::optional<std::string>& l1,
             const std::optional<std::string>& level, std::int64_t min_count,
             const std::string& format) {
  const auto index = LoadIndex(path);
  const auto profile = lxq::BuildProfile(index.corpus(), depth);
  if (format == "csv") {
    std::cout << lxq::ProfileCsv(profile);
    return kExitOk;
  }
  const auto rows = lxq::FrequentErrors(profile, l1, level, min_count);
  if (format == "json") {
    std::cout << lxq::StatsBody(rows, depth, l1, level, min_count);
    return kExitOk;
  }
  std::size_t width = 8;
  for (const auto& r : rows) width = std::max(width, lxq::Utf8Length(r.category));
  std::cout << std::left << std::setw(static_cast<int>(width)) << "category"
            << "  count  relative\n";
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(static_cast<int>(width)) << r.category << "  "
              << std::right << std::setw(5) << r.count << "  " << std::fixed
              << std::setprecision(4) << r.relative_frequency << "\n";
  }
  return kExitOk;
}

int RunServe(const lxq::ServiceConfig& config) {
  const auto [host, port] = lxq::ParseListenAddress(config.listen);
  // Handle SIGINT/SIGTERM synchronously; the server threads inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  lxq::Service service(config);
  const std::size_t loaded = service.LoadDataDir();
  lxq::HttpServer server(service);
  const int bound = server.Start(host, port);
  std::cerr << "lxq: " << loaded << " corpora loaded, listening on " << host << ":" << bound
            << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  std::cerr << "lxq: shutting down\n";
  server.Stop();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learner corpus query, exercise and statistics tool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lxq 1.0.0");

  std::string corpus_path;
  // One per subcommand: default_val writes through immediately.
  std::string validate_format, query_format, gen_format, stats_format;
  std::string dsl;

  auto* validate = app.add_subcommand("validate", "Check a corpus file and list findings");
  validate->add_option("corpus", corpus_path, "Corpus XML")->required();
  validate->add_option("--format", validate_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))->default_val("text");

  std::string output;
  auto* index = app.add_subcommand("index", "Build an index snapshot");
  index->add_option("corpus", corpus_path, "Corpus XML")->required();
  index->add_option("-o,--output", output, "Snapshot path")->required();

  std::int64_t offset = 0;
  std::int64_t limit = 50;
  auto* query = app.add_subcommand("query", "Print a concordance");
  query->add_option("corpus", corpus_path, "Corpus XML or snapshot")->required();
  query->add_option("-q,--query", dsl, "Query DSL")->required();
  query->add_option("--offset", offset, "First row (0-based)")->default_val(0);
  query->add_option("--limit", limit, "Rows per page")->default_val(50);
  query->add_option("--format", query_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))->default_val("text");

  lxq::ExerciseOptions options;
  std::string answer_mode = "corrected";
  std::string policy = "attested-errors";
  auto* gen = app.add_subcommand("gen", "Generate gap-fill exercises");
  gen->add_option("corpus", corpus_path, "Corpus XML or snapshot")->required();
  gen->add_option("-q,--query", dsl, "Query DSL")->required();
  gen->add_option("--count", options.count, "Number of items")->default_val(10);
  gen->add_option("--seed", options.seed, "Sampling seed")->default_val(0);
  gen->add_option("--answer-mode", answer_mode, "as-written or corrected")
      ->check(CLI::IsMember({"as-written", "corrected"}))->default_val("corrected");
  gen->add_option("--distractors", policy, "none, same-lemma or attested-errors")
      ->check(CLI::IsMember({"none", "same-lemma", "attested-errors"}))
      ->default_val("attested-errors");
  gen->add_option("--k", options.distractor_count, "Distractors per item")->default_val(3);
  gen->add_option("--format", gen_format, "json or text")
      ->check(CLI::IsMember({"text", "json"}))->default_val("json");

  int depth = 1;
  std::string l1;
  std::string level;
  std::int64_t min_count = 1;
  auto* stats = app.add_subcommand("stats", "Error category frequencies");
  stats->add_option("corpus", corpus_path, "Corpus XML or snapshot")->required();
  stats->add_option("--depth", depth, "Category depth")->default_val(1)->check(CLI::Range(1, 64));
  stats->add_option("--l1", l1, "Mother tongue filter");
  stats->add_option("--level", level, "Proficiency level filter");
  stats->add_option("--min", min_count, "Minimum count")->default_val(1);
  stats->add_option("--format", stats_format, "text, json or csv (full profile)")
      ->check(CLI::IsMember({"text", "json", "csv"}))->default_val("text");

  lxq::ServiceConfig config;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--listen", config.listen, "host:port")
      ->envname("LXQ_LISTEN")->default_val("127.0.0.1:8080");
  serve->add_option("--data", config.data_dir, "Corpus directory")->envname("LXQ_DATA");
  serve->add_option("--sessions", config.session_store_path, "Session store file")
      ->envname("LXQ_SESSIONS");
  serve->add_option("--max-upload", config.max_upload_bytes, "Upload limit in bytes")
      ->envname("LXQ_MAX_UPLOAD")->default_val(64u << 20);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) return RunValidate(corpus_path, validate_format);
    if (*index) return RunIndex(corpus_path, output);
    if (*query) return RunQuery(corpus_path, dsl, offset, limit, query_format);
    if (*gen) {
      options.answer_mode = *lxq::AnswerModeFromName(answer_mode);
      options.distractor_policy = *lxq::DistractorPolicyFromName(policy);
      return RunGen(corpus_path, dsl, options, gen_format);
    }
    if (*stats) {
      auto opt = [](const std::string& s) {
        return s.empty() ? std::nullopt : std::optional<std::string>(s);
      };
      return RunStats(corpus_path, depth, opt(l1), opt(level), min_count, stats_format);
    }
    if (*serve) return RunServe(config);
  } catch (const lxq::ParseError& e) {
    std::cerr << "lxq: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const lxq::ValidationError& e) {
    std::cerr << "lxq: invalid corpus: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const lxq::QuerySyntaxError& e) {
    std::cerr << "lxq: query syntax error at column " << e.column() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const lxq::InvalidQueryError& e) {
    std::cerr << "lxq: invalid query: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "lxq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "lxq: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
