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

#ifndef LXQ_INDEX_H_
#define LXQ_INDEX_H_

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lxq/corpus.h"
#include "lxq/field.h"

namespace lxq {

struct Posting {
  std::uint32_t text = 0;  // ordinal in Corpus::texts
  std::uint32_t sentence = 0;
  std::uint32_t token = 0;

  auto operator<=>(const Posting&) const = default;
};

// Positional inverted index over an immutable corpus. Every posting list is
// strictly increasing; a position is in postings(key, value) iff the token
// there carries that value:
//
//   surface, lemma, pos, trait  token attributes
//   error                       "yes" when any span covers the token, else "no"
//   cat                         every segment prefix of every covering span
//   corr                        corrected form of every covering span
//
// Lemma, pos, trait, error and cat keys are case-folded.
class CorpusIndex {
 public:
  using PostingMap = std::unordered_map<std::string, std::vector<Posting>>;

  static CorpusIndex Build(std::shared_ptr<const Corpus> corpus);

  // Unknown values yield an empty list.
  std::span<const Posting> Lookup(FieldKey key, std::string_view value) const;

  // Sorted distinct keys of one field.
  std::vector<std::string> Keys(FieldKey key) const;

  const Corpus& corpus() const { return *corpus_; }
  const std::shared_ptr<const Corpus>& shared_corpus() const { return corpus_; }

  // Texts whose L1 and level pass the filters; an empty set does not filter.
  // Tags compare without case.
  std::vector<bool> TextsMatching(const std::set<std::string>& mothertongues,
                                  const std::set<std::string>& levels) const;

  // Text ordinals in display order (see TextIdLess).
  const std::vector<std::uint32_t>& text_order() const { return text_order_; }

  // Writes/reads the versioned binary snapshot (magic "LXIX"). The snapshot
  // embeds the corpus, so a loaded index is self-contained.
  void WriteSnapshot(std::ostream& out) const;
  static CorpusIndex ReadSnapshot(std::istream& in);

  // Structural equality of all posting lists and filters.
  bool SameIndexAs(const CorpusIndex& other) const;

 private:
  CorpusIndex() = default;
  void Finish();

  std::shared_ptr<const Corpus> corpus_;
  std::array<PostingMap, kAllFieldKeys.size()> postings_;
  std::map<std::string, std::vector<bool>> by_mothertongue_;
  std::map<std::string, std::vector<bool>> by_level_;
  std::vector<std::uint32_t> text_order_;
};

inline constexpr char kSnapshotMagic[4] = {'L', 'X', 'I', 'X'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

// True when `bytes` starts with the snapshot magic.
bool LooksLikeSnapshot(std::string_view bytes);

CorpusIndex LoadSnapshotFile(const std::string& path);
void SaveSnapshotFile(const CorpusIndex& index, const std::string& path);

}  // namespace lxq

#endif  // LXQ_INDEX_H_
