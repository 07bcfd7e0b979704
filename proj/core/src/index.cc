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

#include "lxq/index.h"

#include <algorithm>

#include "lxq/text_util.h"

namespace lxq {
namespace {

constexpr std::size_t Slot(FieldKey key) { return static_cast<std::size_t>(key); }

void Add(CorpusIndex::PostingMap& map, std::string key, const Posting& p) {
  auto& list = map[std::move(key)];
  if (list.empty() || list.back() != p) list.push_back(p);
}

}  // namespace

CorpusIndex CorpusIndex::Build(std::shared_ptr<const Corpus> corpus) {
  CorpusIndex index;
  index.corpus_ = std::move(corpus);
  auto& surface = index.postings_[Slot(FieldKey::kSurface)];
  auto& lemma = index.postings_[Slot(FieldKey::kLemma)];
  auto& pos = index.postings_[Slot(FieldKey::kPos)];
  auto& trait = index.postings_[Slot(FieldKey::kTrait)];
  auto& error = index.postings_[Slot(FieldKey::kError)];
  auto& cat = index.postings_[Slot(FieldKey::kCategory)];
  auto& corr = index.postings_[Slot(FieldKey::kCorrected)];

  // Per-token covering spans, reused across sentences.
  std::vector<std::vector<const ErrorSpan*>> covering;
  const auto& texts = index.corpus_->texts;
  for (std::uint32_t ti = 0; ti < texts.size(); ++ti) {
    const auto& text = texts[ti];
    for (std::uint32_t si = 0; si < text.sentences.size(); ++si) {
      const Sentence& sentence = text.sentences[si];
      const auto n = sentence.tokens.size();
      covering.assign(n, {});
      for (const auto& span : sentence.errors) {
        for (int t = std::max(span.first_token, 0);
             t <= span.last_token && t < static_cast<int>(n); ++t)
          covering[t].push_back(&span);
      }
      for (std::uint32_t tk = 0; tk < n; ++tk) {
        const Posting p{ti, si, tk};
        const MorphoToken& tok = sentence.tokens[tk];
        Add(surface, tok.surface, p);
        Add(lemma, FoldCase(tok.lemma), p);
        Add(pos, FoldCase(tok.pos), p);
        for (const auto& tr : tok.traits) Add(trait, FoldCase(tr), p);
        Add(error, covering[tk].empty() ? "no" : "yes", p);
        for (const ErrorSpan* span : covering[tk]) {
          const std::string folded = FoldCase(span->category);
          for (std::size_t cut = folded.find('-'); cut != std::string::npos;
               cut = folded.find('-', cut + 1)) {
            Add(cat, folded.substr(0, cut), p);
          }
          Add(cat, folded, p);
          if (!span->corrected_form.empty()) Add(corr, span->corrected_form, p);
        }
      }
    }
  }
  index.Finish();
  return index;
}

void CorpusIndex::Finish() {
  const auto& texts = corpus_->texts;
  by_mothertongue_.clear();
  by_level_.clear();
  for (std::size_t i = 0; i < texts.size(); ++i) {
    auto& l1 = by_mothertongue_[FoldCase(texts[i].mothertongue)];
    l1.resize(texts.size());
    l1[i] = true;
    auto& level = by_level_[FoldCase(texts[i].level)];
    level.resize(texts.size());
    level[i] = true;
  }
  text_order_.resize(texts.size());
  for (std::uint32_t i = 0; i < texts.size(); ++i) text_order_[i] = i;
  std::stable_sort(text_order_.begin(), text_order_.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return TextIdLess(texts[a].id, texts[b].id);
                   });
}

std::span<const Posting> CorpusIndex::Lookup(FieldKey key,
                                             std::string_view value) const {
  const auto& map = postings_[Slot(key)];
  const auto it = map.find(NormalizeValue(key, value));
  if (it == map.end()) return {};
  return it->second;
}

std::vector<std::string> CorpusIndex::Keys(FieldKey key) const {
  std::vector<std::string> keys;
  for (const auto& [k, _] : postings_[Slot(key)]) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<bool> CorpusIndex::TextsMatching(
    const std::set<std::string>& mothertongues,
    const std::set<std::string>& levels) const {
  const std::size_t n = corpus_->texts.size();
  auto pass = [n](const std::map<std::string, std::vector<bool>>& by,
                  const std::set<std::string>& wanted) {
    std::vector<bool> out(n, wanted.empty());
    for (const auto& w : wanted) {
      const auto it = by.find(FoldCase(w));
      if (it == by.end()) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (it->second[i]) out[i] = true;
    }
    return out;
  };
  auto result = pass(by_mothertongue_, mothertongues);
  const auto lv = pass(by_level_, levels);
  for (std::size_t i = 0; i < n; ++i) result[i] = result[i] && lv[i];
  return result;
}

bool CorpusIndex::SameIndexAs(const CorpusIndex& other) const {
  return postings_ == other.postings_ &&
         by_mothertongue_ == other.by_mothertongue_ &&
         by_level_ == other.by_level_ && text_order_ == other.text_order_;
}

}  // namespace lxq
