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

#include "lxq/concordance.h"

#include <algorithm>
#include <iterator>
#include <utility>

#include "lxq/errors.h"
#include "lxq/text_util.h"

namespace lxq {
namespace {

using SentenceKey = std::pair<std::uint32_t, std::uint32_t>;

std::vector<Posting> Intersect(std::span<const Posting> a, std::span<const Posting> b) {
  std::vector<Posting> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Sentences holding at least one token that satisfies every equality
// constraint of `slot`; nullopt when the slot has no equality constraint.
std::optional<std::vector<SentenceKey>> SlotSentences(const CorpusIndex& index,
                                                      const Slot& slot) {
  std::optional<std::vector<Posting>> positions;
  for (const Constraint& c : slot.constraints) {
    if (c.op != CompareOp::kEq) continue;
    const auto list = index.Lookup(c.key, c.value);
    if (!positions) {
      positions.emplace(list.begin(), list.end());
    } else {
      *positions = Intersect(*positions, list);
    }
    if (positions->empty()) break;
  }
  if (!positions) return std::nullopt;
  std::vector<SentenceKey> sentences;
  for (const Posting& p : *positions) {
    const SentenceKey key{p.text, p.sentence};
    if (sentences.empty() || sentences.back() != key) sentences.push_back(key);
  }
  return sentences;
}

std::vector<SentenceKey> CandidateSentences(const CorpusIndex& index,
                                            const PatternQuery& query,
                                            const std::vector<bool>& text_ok,
                                            bool scan_only) {
  std::optional<std::vector<SentenceKey>> candidates;
  if (!scan_only) {
    for (const Slot& slot : query.slots) {
      if (slot.quantifier.MinCount() < 1) continue;
      auto sentences = SlotSentences(index, slot);
      if (!sentences) continue;
      if (!candidates) {
        candidates = std::move(sentences);
      } else {
        std::vector<SentenceKey> both;
        std::set_intersection(candidates->begin(), candidates->end(), sentences->begin(),
                              sentences->end(), std::back_inserter(both));
        *candidates = std::move(both);
      }
      if (candidates->empty()) break;
    }
  }
  std::vector<SentenceKey> out;
  if (candidates) {
    for (const auto& key : *candidates)
      if (text_ok[key.first]) out.push_back(key);
    return out;
  }
  const auto& texts = index.corpus().texts;
  for (std::uint32_t t = 0; t < texts.size(); ++t) {
    if (!text_ok[t]) continue;
    for (std::uint32_t s = 0; s < texts[t].sentences.size(); ++s) out.push_back({t, s});
  }
  return out;
}

std::string JoinRange(const Sentence& sentence, int first, int last) {
  return first > last ? std::string() : JoinSurfaces(sentence, first, last);
}

}  // namespace

std::vector<KeywordHit> FindHits(const CorpusIndex& index, const PatternQuery& query,
                                 bool scan_only) {
  CheckQuery(query);
  const TokenAutomaton automaton = TokenAutomaton::Compile(query);
  const auto text_ok =
      index.TextsMatching(query.filters.mothertongues, query.filters.levels);
  const auto& texts = index.corpus().texts;

  std::vector<KeywordHit> hits;
  for (const auto& [t, s] : CandidateSentences(index, query, text_ok, scan_only)) {
    const Sentence& sentence = texts[t].sentences[s];
    const auto matches = automaton.MatchSentence(sentence);
    const std::size_t first_hit = hits.size();
    for (const Match& m : matches) {
      // Matches arrive ordered by (start, end); keep the first per keyword.
      const bool seen = std::any_of(
          hits.begin() + static_cast<std::ptrdiff_t>(first_hit), hits.end(),
          [&](const KeywordHit& h) { return h.match.keyword == m.keyword; });
      if (!seen) hits.push_back({t, static_cast<int>(s), m});
    }
  }

  std::vector<std::uint32_t> rank(texts.size());
  const auto& order = index.text_order();
  for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::stable_sort(hits.begin(), hits.end(), [&](const KeywordHit& a, const KeywordHit& b) {
    if (a.text != b.text) return rank[a.text] < rank[b.text];
    if (a.sentence != b.sentence) return a.sentence < b.sentence;
    return a.match.keyword < b.match.keyword;
  });
  return hits;
}

ResultPage RunQuery(const CorpusIndex& index, const PatternQuery& query,
                    std::int64_t offset, std::int64_t limit, const QueryOptions& options) {
  if (limit < 1) throw ArgumentError("limit must be at least 1");
  if (offset < 0 || offset > kMaxOffset)
    throw ArgumentError("offset must be in [0, " + std::to_string(kMaxOffset) + "]");

  const auto hits = FindHits(index, query, options.scan_only);
  ResultPage page;
  page.total = static_cast<std::int64_t>(hits.size());
  page.offset = offset;
  page.limit = limit;
  const std::int64_t end = std::min(page.total, offset + limit);
  for (std::int64_t i = offset; i < end; ++i) {
    const KeywordHit& hit = hits[static_cast<std::size_t>(i)];
    ConcordanceLine line =
        RenderLine(index.corpus(), hit.text, hit.sentence, hit.match, options.context_window);
    line.row = i + 1;
    page.lines.push_back(std::move(line));
  }
  return page;
}

ConcordanceLine RenderLine(const Corpus& corpus, std::uint32_t text, int sentence,
                           const Match& match, std::optional<std::size_t> context_window) {
  const Sentence& s = corpus.texts.at(text).sentences.at(static_cast<std::size_t>(sentence));
  const int n = static_cast<int>(s.tokens.size());
  const int kw = match.keyword;
  int left_first = 0;
  int right_last = n - 1;
  if (context_window) {
    const int w = static_cast<int>(std::min<std::size_t>(*context_window, static_cast<std::size_t>(n)));
    left_first = std::max(0, kw - w);
    right_last = std::min(n - 1, kw + w);
  }
  ConcordanceLine line;
  line.text_id = corpus.texts[text].id;
  line.left = JoinRange(s, left_first, kw - 1);
  line.keyword = s.tokens.at(static_cast<std::size_t>(kw)).surface;
  line.right = JoinRange(s, kw + 1, right_last);
  line.sentence = sentence;
  line.token = kw;
  line.match = match;
  return line;
}

std::string FormatConcordanceText(const ResultPage& page) {
  const std::vector<std::string> header = {"No", "Texte", "Left context", "Keyword",
                                           "Right context"};
  std::vector<std::vector<std::string>> rows;
  rows.push_back(header);
  for (const auto& line : page.lines) {
    rows.push_back({std::to_string(line.row), line.text_id, line.left, line.keyword, line.right});
  }
  std::size_t width[4] = {0, 0, 0, 0};
  for (const auto& r : rows)
    for (int c = 0; c < 4; ++c) width[c] = std::max(width[c], Utf8Length(r[c]));

  std::string out;
  for (const auto& r : rows) {
    auto pad = [&](const std::string& cell, std::size_t w, bool right_align) {
      const std::string fill(w - Utf8Length(cell), ' ');
      out += right_align ? fill + cell : cell + fill;
    };
    pad(r[0], width[0], true);
    out += " | ";
    pad(r[1], width[1], false);
    out += " | ";
    pad(r[2], width[2], true);
    out += " | ";
    pad(r[3], width[3], false);
    out += " | ";
    out += r[4];
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

}  // namespace lxq
