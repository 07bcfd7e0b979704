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

#ifndef LXQ_CONCORDANCE_H_
#define LXQ_CONCORDANCE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lxq/automaton.h"
#include "lxq/index.h"
#include "lxq/pattern.h"

namespace lxq {

// One KWIC row. Joining left, keyword and right with single spaces (empty
// parts skipped) gives back the space-joined sentence when uncapped.
struct ConcordanceLine {
  std::int64_t row = 0;  // 1-based, global across pages
  std::string text_id;
  std::string left;
  std::string keyword;
  std::string right;
  int sentence = 0;
  int token = 0;
  Match match;

  bool operator==(const ConcordanceLine&) const = default;
};

struct ResultPage {
  std::vector<ConcordanceLine> lines;
  std::int64_t total = 0;
  std::int64_t offset = 0;
  std::int64_t limit = 0;
};

// A keyword occurrence with the first match (leftmost start, then shortest)
// that reaches it.
struct KeywordHit {
  std::uint32_t text = 0;
  int sentence = 0;
  Match match;

  bool operator==(const KeywordHit&) const = default;
};

struct QueryOptions {
  // Evaluate the automaton on every sentence instead of index candidates.
  // Results are identical; exists so tests can check the pre-filter.
  bool scan_only = false;
  // Maximum tokens shown on each side of the keyword; nullopt = whole sentence.
  std::optional<std::size_t> context_window;
};

inline constexpr std::int64_t kMaxOffset = std::int64_t{1} << 31;

// Every keyword occurrence matched by `query` in texts passing its document
// filters, one per (text, sentence, token), in display order: text id
// (TextIdLess), sentence, token. Throws InvalidQueryError.
std::vector<KeywordHit> FindHits(const CorpusIndex& index, const PatternQuery& query,
                                 bool scan_only = false);

// Throws ArgumentError when limit < 1 or offset is outside [0, kMaxOffset].
ResultPage RunQuery(const CorpusIndex& index, const PatternQuery& query,
                    std::int64_t offset, std::int64_t limit,
                    const QueryOptions& options = {});

ConcordanceLine RenderLine(const Corpus& corpus, std::uint32_t text, int sentence,
                           const Match& match,
                           std::optional<std::size_t> context_window = std::nullopt);

// Aligned plain-text table: No | Texte | left | keyword | right.
std::string FormatConcordanceText(const ResultPage& page);

}  // namespace lxq

#endif  // LXQ_CONCORDANCE_H_
