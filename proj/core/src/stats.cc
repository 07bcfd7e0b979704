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

#include "lxq/stats.h"

#include <algorithm>

#include "lxq/errors.h"
#include "lxq/text_util.h"

namespace lxq {

ErrorProfile BuildProfile(const Corpus& corpus, int depth) {
  if (depth < 1) throw ArgumentError("depth must be at least 1");
  ErrorProfile profile;
  profile.depth = depth;
  for (const auto& text : corpus.texts) {
    for (const auto& sentence : text.sentences) {
      profile.total_tokens += static_cast<std::int64_t>(sentence.tokens.size());
      for (const auto& span : sentence.errors) {
        ++profile.counts[{TruncateCategory(span.category, depth), text.mothertongue,
                          text.level}];
        ++profile.total_spans;
      }
    }
  }
  return profile;
}

std::vector<FrequentError> FrequentErrors(const ErrorProfile& profile,
                                          const std::optional<std::string>& mothertongue,
                                          const std::optional<std::string>& level,
                                          std::int64_t min_count) {
  if (min_count < 1) throw ArgumentError("min count must be at least 1");
  std::map<std::string, std::int64_t> by_category;
  std::int64_t filtered_total = 0;
  const auto want_l1 = mothertongue ? std::optional(FoldCase(*mothertongue)) : std::nullopt;
  const auto want_level = level ? std::optional(FoldCase(*level)) : std::nullopt;
  for (const auto& [key, n] : profile.counts) {
    if (want_l1 && FoldCase(key.mothertongue) != *want_l1) continue;
    if (want_level && FoldCase(key.level) != *want_level) continue;
    by_category[key.category] += n;
    filtered_total += n;
  }
  std::vector<FrequentError> out;
  for (const auto& [category, n] : by_category) {
    if (n < min_count) continue;
    out.push_back({category, n, static_cast<double>(n) / static_cast<double>(filtered_total)});
  }
  std::stable_sort(out.begin(), out.end(), [](const FrequentError& a, const FrequentError& b) {
    return a.count > b.count;
  });
  return out;
}

namespace {

void CsvField(std::string& out, const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) {
    out += value;
    return;
  }
  out += '"';
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace

std::string ProfileCsv(const ErrorProfile& profile) {
  std::string out = "category,l1,level,count\n";
  for (const auto& [key, n] : profile.counts) {
    CsvField(out, key.category);
    out += ',';
    CsvField(out, key.mothertongue);
    out += ',';
    CsvField(out, key.level);
    out += ',';
    out += std::to_string(n);
    out += '\n';
  }
  return out;
}

DetectionScore BenchmarkDetection(const Corpus& corpus, const std::set<Posting>& predicted) {
  for (const Posting& p : predicted) {
    const bool valid = p.text < corpus.texts.size() &&
                       p.sentence < corpus.texts[p.text].sentences.size() &&
                       p.token < corpus.texts[p.text].sentences[p.sentence].tokens.size();
    if (!valid) {
      throw ArgumentError("predicted position (" + std::to_string(p.text) + ", " +
                          std::to_string(p.sentence) + ", " + std::to_string(p.token) +
                          ") does not address a token");
    }
  }
  std::int64_t gold = 0;
  std::int64_t hits = 0;
  for (std::uint32_t t = 0; t < corpus.texts.size(); ++t) {
    const auto& sentences = corpus.texts[t].sentences;
    for (std::uint32_t s = 0; s < sentences.size(); ++s) {
      const auto& sentence = sentences[s];
      for (std::uint32_t k = 0; k < sentence.tokens.size(); ++k) {
        const bool covered = std::any_of(sentence.errors.begin(), sentence.errors.end(),
                                         [&](const ErrorSpan& e) { return e.Covers(static_cast<int>(k)); });
        if (!covered) continue;
        ++gold;
        if (predicted.count({t, s, k})) ++hits;
      }
    }
  }
  DetectionScore score;
  const auto npred = static_cast<std::int64_t>(predicted.size());
  score.precision = npred == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(npred);
  score.recall = gold == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(gold);
  const double sum = score.precision + score.recall;
  score.f1 = sum == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / sum;
  return score;
}

}  // namespace lxq
