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

// Drives the lxq executable end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixture.h"
#include "lxq/concordance.h"
#include "lxq/exercise.h"
#include "lxq/json_io.h"
#include "lxq/pattern.h"
#include "lxq/stats.h"
#include "lxq/text_util.h"

namespace lxq {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

fs::path ScratchDir() {
  static const fs::path dir = [] {
    auto p = fs::temp_directory_path() / ("lxq-cli-" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

Run Lxq(const std::vector<std::string>& args) {
  const fs::path err_path = ScratchDir() / "stderr.txt";
  std::string cmd = Quote(LXQ_CLI_PATH);
  for (const auto& a : args) cmd += " " + Quote(a);
  cmd += " 2>" + Quote(err_path.string());
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::ostringstream e;
  e << in.rdbuf();
  r.err = e.str();
  return r;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const std::string kFixture = testing::DataPath("kwic_fixture.xml");

TEST(Cli, QueryTextTable) {
  const auto r = Lxq({"query", kFixture, "-q", testing::kFixtureQuery});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto page = RunQuery(testing::FixtureIndex(), ParseQuery(testing::kFixtureQuery), 0, 50);
  EXPECT_EQ(r.out, FormatConcordanceText(page));
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 13u);
  EXPECT_EQ(lines[0].rfind("No", 0), 0u);
  for (std::size_t i = 1; i < lines.size(); ++i)
    EXPECT_EQ(std::stoi(lines[i]), static_cast<int>(i)) << lines[i];
  EXPECT_NE(r.out.find("connais"), std::string::npos);
}

TEST(Cli, QueryJsonMatchesServiceBody) {
  const auto r = Lxq({"query", kFixture, "-q", testing::kFixtureQuery, "--format", "json",
                      "--offset", "3", "--limit", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const PatternQuery q = ParseQuery(testing::kFixtureQuery);
  EXPECT_EQ(r.out, QueryResponseBody(RunQuery(testing::FixtureIndex(), q, 3, 4), q));
}

TEST(Cli, SnapshotQueryEqualsXmlQuery) {
  const std::string snap = (ScratchDir() / "fixture.lxix").string();
  const auto built = Lxq({"index", kFixture, "-o", snap});
  ASSERT_EQ(built.code, 0) << built.err;
  std::ifstream in(snap, std::ios::binary);
  char magic[4] = {};
  in.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "LXIX");
  const auto a = Lxq({"query", kFixture, "-q", testing::kFixtureQuery, "--format", "json"});
  const auto b = Lxq({"query", snap, "-q", testing::kFixtureQuery, "--format", "json"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, GenIsDeterministic) {
  const std::vector<std::string> args = {"gen", kFixture, "-q", testing::kFixtureQuery, "--count", "5",
                                         "--seed", "7", "--format", "json"};
  const auto a = Lxq(args);
  const auto b = Lxq(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  ExerciseOptions opts;
  opts.count = 5;
  opts.seed = 7;
  EXPECT_EQ(a.out, ExerciseSetBody(GenerateItems(testing::FixtureIndex(),
                                                 ParseQuery(testing::kFixtureQuery), opts)));
  auto text_args = args;
  text_args.back() = "text";
  const auto t = Lxq(text_args);
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("seed 7"), std::string::npos);
  EXPECT_NE(t.out.find(std::string(kBlank)), std::string::npos);
}

// Each subcommand keeps its own --format default.
TEST(Cli, DefaultFormats) {
  const auto gen = Lxq({"gen", kFixture, "-q", testing::kFixtureQuery, "--count", "2"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  EXPECT_EQ(gen.out.rfind("{", 0), 0u);
  const auto query = Lxq({"query", kFixture, "-q", testing::kFixtureQuery});
  EXPECT_EQ(query.out.rfind("No", 0), 0u);
  const auto stats = Lxq({"stats", kFixture});
  EXPECT_NE(stats.out.rfind("{", 0), 0u);
  EXPECT_EQ(stats.out.find("category,l1"), std::string::npos);
  const auto validate = Lxq({"validate", kFixture});
  EXPECT_NE(validate.out.rfind("{", 0), 0u);
}

TEST(Cli, Stats) {
  const auto j = Lxq({"stats", kFixture, "--depth", "3", "--l1", "dutch", "--level", "B2",
                      "--format", "json"});
  ASSERT_EQ(j.code, 0) << j.err;
  const auto profile = BuildProfile(*testing::FixtureCorpus(), 3);
  EXPECT_EQ(j.out, StatsBody(FrequentErrors(profile, std::string("dutch"), std::string("B2"), 1), 3,
                             std::string("dutch"), std::string("B2"), 1));
  const auto csv = Lxq({"stats", kFixture, "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out, ProfileCsv(BuildProfile(*testing::FixtureCorpus(), 1)));
  const auto text = Lxq({"stats", kFixture, "--depth", "3"});
  ASSERT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("GRA-PP-AGR"), std::string::npos);
}

TEST(Cli, Validate) {
  const auto ok = Lxq({"validate", testing::DataPath("empty.xml")});
  EXPECT_EQ(ok.code, 0) << ok.err;
  const auto fixture = Lxq({"validate", kFixture, "--format", "json"});
  EXPECT_EQ(fixture.code, 0);
  EXPECT_NE(fixture.out.find("\"valid\": true"), std::string::npos);

  const fs::path bad = ScratchDir() / "bad.xml";
  std::ofstream(bad) << R"(<corpus name="b"><text id="1" l1="a" level="b"><s></s></text>
<text id="1" l1="a" level="b"><s><tok surface="x" lemma="x" pos="n"/></s></text></corpus>)";
  const auto r = Lxq({"validate", bad.string(), "--format", "json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("\"valid\": false"), std::string::npos);
  // every finding is listed, not only the first
  EXPECT_GE(std::count(r.out.begin(), r.out.end(), '{') - 1, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(Lxq({}).code, 2);
  EXPECT_EQ(Lxq({"frobnicate"}).code, 2);
  EXPECT_EQ(Lxq({"query", kFixture}).code, 2);
  const auto syntax = Lxq({"query", kFixture, "-q", "![lemma=\"a\""});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find("column"), std::string::npos);
  EXPECT_EQ(Lxq({"query", kFixture, "-q", "![lemma=\"a\"]", "--limit", "0"}).code, 2);
  EXPECT_EQ(Lxq({"gen", kFixture, "-q", testing::kFixtureQuery, "--count", "0"}).code, 2);
  EXPECT_EQ(Lxq({"gen", kFixture, "-q", testing::kFixtureQuery, "--answer-mode", "x"}).code, 2);
  EXPECT_EQ(Lxq({"stats", kFixture, "--depth", "0"}).code, 2);

  const fs::path malformed = ScratchDir() / "malformed.xml";
  std::ofstream(malformed) << "<corpus name=\"m\">\n<text";
  EXPECT_EQ(Lxq({"query", malformed.string(), "-q", testing::kFixtureQuery}).code, 1);
  EXPECT_EQ(Lxq({"validate", malformed.string()}).code, 1);

  EXPECT_EQ(Lxq({"query", (ScratchDir() / "missing.xml").string(), "-q", testing::kFixtureQuery}).code, 3);
  EXPECT_EQ(Lxq({"index", kFixture, "-o", "/nonexistent-dir/x.lxix"}).code, 3);
  const fs::path truncated = ScratchDir() / "trunc.lxix";
  std::ofstream(truncated, std::ios::binary) << "LXIX\x01";
  EXPECT_EQ(Lxq({"query", truncated.string(), "-q", testing::kFixtureQuery}).code, 3);
}

}  // namespace
}  // namespace lxq
