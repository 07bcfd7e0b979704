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

#include "lxq/exercise.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "lxq/errors.h"

namespace lxq {

std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw ArgumentError("UniformBelow: empty range");
  // Reject the low (2^64 mod bound) values so the remaining range is a
  // multiple of bound.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

std::string_view AnswerModeName(AnswerMode mode) {
  return mode == AnswerMode::kAsWritten ? "as-written" : "corrected";
}

std::optional<AnswerMode> AnswerModeFromName(std::string_view name) {
  if (name == "as-written") return AnswerMode::kAsWritten;
  if (name == "corrected") return AnswerMode::kCorrected;
  return std::nullopt;
}

std::string_view DistractorPolicyName(DistractorPolicy policy) {
  switch (policy) {
    case DistractorPolicy::kNone: return "none";
    case DistractorPolicy::kSameLemma: return "same-lemma";
    case DistractorPolicy::kAttestedErrors: return "attested-errors";
  }
  return "none";
}

std::optional<DistractorPolicy> DistractorPolicyFromName(std::string_view name) {
  if (name == "none") return DistractorPolicy::kNone;
  if (name == "same-lemma") return DistractorPolicy::kSameLemma;
  if (name == "attested-errors") return DistractorPolicy::kAttestedErrors;
  return std::nullopt;
}

namespace {

std::vector<std::string> TopForms(const std::map<std::string, int>& counts,
                                  const std::string& answer, std::size_t k) {
  std::vector<std::pair<std::string, int>> ranked;
  for (const auto& [form, n] : counts)
    if (form != answer) ranked.emplace_back(form, n);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(ranked[i].first);
  return out;
}

}  // namespace

GapFillItem MakeItem(const Corpus& corpus, std::uint32_t text, int sentence, int token,
                     AnswerMode mode) {
  const LearnerText& t = corpus.texts.at(text);
  const Sentence& s = t.sentences.at(static_cast<std::size_t>(sentence));
  const MorphoToken& tok = s.tokens.at(static_cast<std::size_t>(token));

  GapFillItem item;
  item.source = {t.id, sentence, token};
  item.answer_mode = mode;
  item.lemma = tok.lemma;
  item.answer = tok.surface;
  if (mode == AnswerMode::kCorrected) {
    // Innermost single-token span with a target form; wider spans would
    // need a multi-token blank.
    const auto covering = CoveringSpans(s, token);
    for (auto it = covering.rbegin(); it != covering.rend(); ++it) {
      const ErrorSpan& span = **it;
      if (span.first_token == token && span.last_token == token &&
          !span.corrected_form.empty()) {
        item.answer = span.corrected_form;
        break;
      }
    }
  }
  for (int i = 0; i < static_cast<int>(s.tokens.size()); ++i) {
    if (!item.stem.empty()) item.stem += ' ';
    item.stem += i == token ? std::string(kBlank) : s.tokens[i].surface;
  }
  return item;
}

std::vector<std::string> BuildDistractors(const CorpusIndex& index, const GapFillItem& item,
                                          DistractorPolicy policy, std::size_t k) {
  if (k == 0 || policy == DistractorPolicy::kNone) return {};
  const Corpus& corpus = index.corpus();
  std::map<std::string, int> counts;
  if (policy == DistractorPolicy::kSameLemma) {
    for (const Posting& p : index.Lookup(FieldKey::kLemma, item.lemma))
      ++counts[corpus.texts[p.text].sentences[p.sentence].tokens[p.token].surface];
  } else {
    const auto positions = index.Lookup(FieldKey::kCorrected, item.answer);
    std::pair<std::uint32_t, std::uint32_t> last{UINT32_MAX, UINT32_MAX};
    for (const Posting& p : positions) {
      if (std::pair{p.text, p.sentence} == last) continue;
      last = {p.text, p.sentence};
      const Sentence& s = corpus.texts[p.text].sentences[p.sentence];
      for (const ErrorSpan& span : s.errors) {
        if (span.corrected_form == item.answer)
          ++counts[JoinSurfaces(s, span.first_token, span.last_token)];
      }
    }
  }
  return TopForms(counts, item.answer, k);
}

ExerciseSet GenerateItems(const CorpusIndex& index, const PatternQuery& query,
                          const ExerciseOptions& options) {
  if (options.count < 1) throw ArgumentError("count must be at least 1");
  const auto hits = FindHits(index, query);

  ExerciseSet set;
  set.seed = options.seed;
  set.query = query;
  set.options = options;
  set.total_matches = static_cast<std::int64_t>(hits.size());
  set.no_examples = hits.empty();

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(hits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t take = std::min(options.count, hits.size());
  // Distractors depend only on (lemma, answer); sampled items often share them.
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> distractor_cache;
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + UniformBelow(rng, order.size() - i);
    std::swap(order[i], order[j]);
    const KeywordHit& hit = hits[order[i]];
    GapFillItem item = MakeItem(index.corpus(), hit.text, hit.sentence, hit.match.keyword,
                                options.answer_mode);
    const auto key = std::make_pair(item.lemma, item.answer);
    auto cached = distractor_cache.find(key);
    if (cached == distractor_cache.end()) {
      cached = distractor_cache
                   .emplace(key, BuildDistractors(index, item, options.distractor_policy,
                                                  options.distractor_count))
                   .first;
    }
    item.distractors = cached->second;
    set.items.push_back(std::move(item));
  }
  return set;
}

std::optional<GapFillItem> MakeRemedialItem(const CorpusIndex& index, const GapFillItem& item,
                                            std::uint64_t seed) {
  const Corpus& corpus = index.corpus();
  std::vector<Posting> candidates;
  const auto clean = index.Lookup(FieldKey::kError, "no");
  for (const Posting& p : index.Lookup(FieldKey::kLemma, item.lemma)) {
    if (corpus.texts[p.text].id == item.source.text_id &&
        static_cast<int>(p.sentence) == item.source.sentence &&
        static_cast<int>(p.token) == item.source.token)
      continue;
    if (!std::binary_search(clean.begin(), clean.end(), p)) continue;
    candidates.push_back(p);
  }
  if (candidates.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  const Posting& pick = candidates[UniformBelow(rng, candidates.size())];
  GapFillItem remedial = MakeItem(corpus, pick.text, static_cast<int>(pick.sentence),
                                  static_cast<int>(pick.token), AnswerMode::kAsWritten);
  remedial.distractors =
      BuildDistractors(index, remedial, DistractorPolicy::kSameLemma, item.distractors.size());
  return remedial;
}

}  // namespace lxq
